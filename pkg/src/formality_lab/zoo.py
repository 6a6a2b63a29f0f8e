"""Built-in models: the nilmanifolds M(p,q), the FGG 4-nilmanifolds, S^2 and tori."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import Element, Generator, GradedAlgebra
from .dga import DGA

# Betti numbers b_0..b_8 of the 8-dimensional simply connected example of
# Fernandez-Munoz.  Documentation only: its model is not computable here.
M80_BETTI = (1, 0, 256, 0, 269, 0, 256, 0, 1)


@dataclass(frozen=True, eq=False)
class Model:
    """A DGA together with the geometric data the obstruction code needs.

    ``witness`` names three closed degree-1 generators whose triple Massey
    product is known to be non-vanishing; certificate search tries it first.
    """

    dga: DGA
    dimension: int
    symplectic_form: Element | None = None
    roles: Mapping[str, str] = field(default_factory=dict)
    witness: tuple[str, ...] | None = None
    recipe: object = None

    @property
    def name(self) -> str:
        return str(self.recipe) if self.recipe is not None else "model"

    def symplectic_defects(self) -> list[str]:
        """Reasons why ``symplectic_form`` fails to be closed and nondegenerate."""
        w = self.symplectic_form
        if w is None:
            return ["no symplectic form"]
        out = []
        if w and w.degree != 2:
            out.append("form is not of degree 2")
        if self.dga.d(w):
            out.append(f"d(omega) = {self.dga.d(w)}")
        if self.dimension % 2:
            out.append("odd dimension")
        elif not w ** (self.dimension // 2):
            out.append(f"omega^{self.dimension // 2} = 0")
        return out


def _nil(gens, diff, dimension, omega, roles, witness, recipe):
    alg = GradedAlgebra(gens)
    d = {name: expr(alg) for name, expr in diff.items()}
    dga = DGA(alg, d, top_degree=dimension)
    return Model(dga, dimension, omega(alg), roles, witness, recipe)


def m_pq(p: int, q: int) -> Model:
    """CE complex of H(1,p) x H(1,q) with its left-invariant symplectic form."""
    if p < 1 or q < 1:
        raise ValueError(f"M(p,q) needs p, q >= 1, got ({p}, {q})")
    from .recipe import Recipe

    names = (
        [f"a{i}" for i in range(1, p + 1)] + ["b"] + [f"c{i}" for i in range(1, p + 1)]
        + [f"ta{i}" for i in range(1, q + 1)] + ["tb"] + [f"tc{i}" for i in range(1, q + 1)]
    )
    roles = {f"a{i}": f"alpha_{i}" for i in range(1, p + 1)}
    roles.update({f"c{i}": f"gamma_{i}" for i in range(1, p + 1)})
    roles.update({f"ta{i}": f"alpha~_{i}" for i in range(1, q + 1)})
    roles.update({f"tc{i}": f"gamma~_{i}" for i in range(1, q + 1)})
    roles.update({"b": "beta", "tb": "beta~"})
    gens = [Generator(n, 1) for n in names]

    diff = {}
    for i in range(1, p + 1):
        diff[f"c{i}"] = lambda A, i=i: -(A.gen(f"a{i}") * A.gen("b"))
    for i in range(1, q + 1):
        diff[f"tc{i}"] = lambda A, i=i: -(A.gen(f"ta{i}") * A.gen("tb"))

    def omega(A):
        w = A.gen("b") * A.gen("tb")
        for i in range(1, p + 1):
            w = w + A.gen(f"a{i}") * A.gen(f"c{i}")
        for i in range(1, q + 1):
            w = w + A.gen(f"ta{i}") * A.gen(f"tc{i}")
        return w

    return _nil(gens, diff, 2 * p + 2 * q + 2, omega, roles, ("b", "a1", "a1"), Recipe("MPQ", (p, q)))


def fgg(b: int) -> Model:
    """The 4-dimensional FGG nilmanifold M_b with first Betti number b in {2, 3}."""
    if b not in (2, 3):
        raise ValueError(f"fgg needs b in {{2, 3}}, got {b}")
    from .recipe import Recipe

    gens = [Generator(n, 1) for n in ("a", "b", "c", "e")]
    diff = {"c": lambda A: A.gen("a") * A.gen("b")}
    if b == 2:
        diff["e"] = lambda A: A.gen("a") * A.gen("c")
    roles = {"a": "alpha", "b": "beta", "c": "gamma", "e": "eta"}

    def omega(A):
        return A.gen("a") * A.gen("e") + A.gen("b") * A.gen("c")

    return _nil(gens, diff, 4, omega, roles, ("b", "b", "a"), Recipe("FGG", (b,)))


def sphere2_model() -> Model:
    from .recipe import Recipe

    alg = GradedAlgebra([Generator("x", 2, truncation=2)])
    dga = DGA(alg, {}, top_degree=2)
    return Model(dga, 2, alg.gen("x"), {"x": "area form"}, None, Recipe("S2"))


def sphere2() -> DGA:
    """Cohomology of S^2 with zero differential (S^2 is formal)."""
    return sphere2_model().dga


def torus_model(k: int) -> Model:
    """Exterior algebra on 2k closed generators x1, y1, ..., xk, yk."""
    if k < 1:
        raise ValueError(f"torus needs k >= 1, got {k}")
    from .recipe import Recipe

    names = [n for i in range(1, k + 1) for n in (f"x{i}", f"y{i}")]
    alg = GradedAlgebra([Generator(n, 1) for n in names])
    dga = DGA(alg, {}, top_degree=2 * k)
    omega = alg.zero()
    for i in range(1, k + 1):
        omega = omega + alg.gen(f"x{i}") * alg.gen(f"y{i}")
    recipe = Recipe("T2") if k == 1 else Recipe("TORUS", (k,))
    return Model(dga, 2 * k, omega, {}, None, recipe)


def torus(k: int) -> DGA:
    return torus_model(k).dga


def unit_dga() -> DGA:
    return DGA(GradedAlgebra([]), {}, top_degree=0)


def from_spec(spec: str) -> Model:
    """Resolve a model name: ``mpq:P,Q``, ``fgg:B``, ``torus:K``, ``s2`` or ``file:PATH``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "mpq":
            p, q = (int(x) for x in arg.split(","))
            return m_pq(p, q)
        if kind == "fgg":
            return fgg(int(arg))
        if kind == "torus":
            return torus_model(int(arg))
        if kind == "s2" and not arg:
            return sphere2_model()
    except ValueError as exc:
        raise ValueError(f"bad model spec {spec!r}: {exc}") from None
    if kind == "file":
        from .dsl import parse_model
        from .recipe import Recipe

        with open(arg, encoding="utf-8") as fh:
            dga = parse_model(fh.read())
        dim = dga.top_degree if dga.top_degree is not None else (dga.algebra.max_degree() or 0)
        return Model(dga, dim, None, {}, None, Recipe("FILE", (arg,)))
    raise ValueError(f"unknown model {spec!r}")
