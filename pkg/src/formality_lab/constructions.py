"""Model-level constructions: tensor products, circle bundles and the Gysin check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import Element, Generator, GradedAlgebra
from .dga import DGA, Morphism, kernel_coordinates, map_rank
from .linalg import Echelon
from .zoo import Model


def transport(u: Element, target: GradedAlgebra, names: Mapping[str, str] | None = None) -> Element:
    """Rewrite ``u`` in ``target`` by mapping generator names (identity by default)."""
    src = u.algebra
    gens = [
        target.gen(names.get(g.name, g.name) if names else g.name) for g in src.generators
    ]
    out = target.zero()
    for m, c in u.items():
        prod = target.unit()
        for i, e in m:
            for _ in range(e):
                prod = prod * gens[i]
        out = out + prod.scale(c)
    return out


def _fresh(name: str, taken: set[str]) -> str:
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def tensor_with_renames(A: DGA, B: DGA) -> tuple[DGA, dict[str, str]]:
    """Tensor product; returns the DGA and the renaming applied to ``B``'s generators."""
    taken = set(A.names) | set(B.names)
    rename = {}
    for name in B.names:
        if name in A.names:
            new = _fresh(name, taken)
            taken.add(new)
            rename[name] = new
        else:
            rename[name] = name
    gens = list(A.generators) + [
        Generator(rename[g.name], g.degree, g.truncation) for g in B.generators
    ]
    alg = GradedAlgebra(gens)
    diff = {name: transport(dg, alg) for name, dg in A.differential_map().items() if dg}
    for name, dg in B.differential_map().items():
        if dg:
            diff[rename[name]] = transport(dg, alg, rename)
    top = None
    if A.top_degree is not None and B.top_degree is not None:
        top = A.top_degree + B.top_degree
    return DGA(alg, diff, top_degree=top), rename


def tensor(A: DGA, B: DGA) -> DGA:
    """Tensor product of DGAs (model of the product space)."""
    return tensor_with_renames(A, B)[0]


def tensor_models(A: Model, B: Model, recipe=None) -> Model:
    dga, rename = tensor_with_renames(A.dga, B.dga)
    alg = dga.algebra
    omega = None
    if A.symplectic_form is not None and B.symplectic_form is not None:
        omega = transport(A.symplectic_form, alg) + transport(B.symplectic_form, alg, rename)
    witness = A.witness
    if witness is None and B.witness is not None:
        witness = tuple(rename[n] for n in B.witness)
    roles = dict(A.roles)
    roles.update({rename[k]: v for k, v in B.roles.items()})
    return Model(dga, A.dimension + B.dimension, omega, roles, witness, recipe)


@dataclass(frozen=True, eq=False)
class CircleBundleModel:
    """Base DGA with a degree-1 generator ``t`` adjoined, ``dt = euler_class``."""

    base: DGA
    euler_class: Element
    total: DGA
    inclusion: Morphism
    fiber: str


def circle_bundle(base: DGA, w: Element, name: str = "t") -> CircleBundleModel:
    if w.algebra != base.algebra:
        raise ValueError("Euler class is not in the base algebra")
    if w and (not w.is_homogeneous or w.degree != 2):
        raise ValueError(f"Euler class must have degree 2, got {w}")
    if base.d(w):
        raise ValueError(f"Euler class {w} is not closed")
    fiber = _fresh(name, set(base.names))
    alg = GradedAlgebra(list(base.generators) + [Generator(fiber, 1)])
    diff = {n: transport(dg, alg) for n, dg in base.differential_map().items() if dg}
    diff[fiber] = transport(w, alg)
    top = base.top_degree + 1 if base.top_degree is not None else None
    total = DGA(alg, diff, top_degree=top)
    inc = Morphism(base, total, {n: alg.gen(n) for n in base.names})
    return CircleBundleModel(base, w, total, inc, fiber)


def circle_bundle_model(M: Model, recipe=None) -> tuple[Model, CircleBundleModel]:
    """Boothby-Wang total space over a symplectic model, Euler class = omega."""
    if M.symplectic_form is None:
        raise ValueError("base model carries no symplectic form")
    cb = circle_bundle(M.dga, M.symplectic_form)
    roles = dict(M.roles)
    roles[cb.fiber] = "connection/contact form"
    return Model(cb.total, M.dimension + 1, None, roles, M.witness, recipe), cb


@dataclass(frozen=True)
class GysinReport:
    h1_base: int
    h1_total: int
    h1_pullback_rank: int
    h1_iso: bool
    euler_class_nonzero: bool
    h2_kernel: tuple[tuple[Fraction, ...], ...]
    euler_coordinates: tuple[Fraction, ...]
    h2_kernel_is_euler_span: bool

    @property
    def h1_claim_holds(self) -> bool:
        # pi^* is an iso on H^1 exactly when cup with [w]: H^0 -> H^2 is injective
        return self.h1_iso == self.euler_class_nonzero

    @property
    def consistent(self) -> bool:
        return self.h1_claim_holds and self.h2_kernel_is_euler_span

    def lines(self) -> list[str]:
        return [
            f"H^1: base {self.h1_base}, total {self.h1_total}, rank pi^* {self.h1_pullback_rank}"
            f" -> {'iso' if self.h1_iso else 'not iso'}",
            f"[w] {'nonzero' if self.euler_class_nonzero else 'zero'} in H^2(base)",
            f"ker(pi^* on H^2) dim {len(self.h2_kernel)};"
            f" equals span[w]: {self.h2_kernel_is_euler_span}",
            f"consistent with Gysin sequence: {self.consistent}",
        ]


def gysin_report(cb: CircleBundleModel) -> GysinReport:
    inc = cb.inclusion
    img1 = inc.on_cohomology(1)
    r1 = map_rank(img1)
    h1b = cb.base.cohomology(1).dimension
    h1t = cb.total.cohomology(1).dimension
    h2 = cb.base.cohomology(2)
    wc = h2.coordinates(cb.euler_class)
    kernel = []
    for rel in kernel_coordinates(inc.on_cohomology(2)):
        kernel.append(tuple(Fraction(rel.get(i, 0)) for i in range(h2.dimension)))
    ker_space = Echelon()
    for v in kernel:
        ker_space.insert({i: c for i, c in enumerate(v) if c})
    w_vec = {i: c for i, c in enumerate(wc) if c}
    if any(wc):
        same = len(kernel) == 1 and ker_space.contains(w_vec)
    else:
        same = not kernel
    return GysinReport(
        h1_base=h1b,
        h1_total=h1t,
        h1_pullback_rank=r1,
        h1_iso=(r1 == h1b == h1t),
        euler_class_nonzero=any(wc),
        h2_kernel=tuple(kernel),
        euler_coordinates=wc,
        h2_kernel_is_euler_span=same,
    )


@dataclass(frozen=True)
class PullbackMassey:
    base: object  # MasseyResult in the base
    total: object  # MasseyResult in the total space
    predicted: str
    agrees: bool


def pullback_massey(cb: CircleBundleModel, a1, a2, a3) -> PullbackMassey:
    """Triple Massey product of pulled-back degree-1 classes, against the Gysin prediction."""
    from .massey import NON_VANISHING, UNDEFINED, triple_massey

    for a in (a1, a2, a3):
        if a.degree != 1:
            raise ValueError("pullback_massey expects degree-1 classes")
    base = triple_massey(cb.base, a1, a2, a3)
    if base.verdict == UNDEFINED:
        raise ValueError("Massey product is undefined in the base")
    inc = cb.inclusion
    h1 = cb.total.cohomology(1)
    pulled = [h1.class_of(inc(a.representative)) for a in (a1, a2, a3)]
    total = triple_massey(cb.total, *pulled)
    h2 = cb.base.cohomology(2)
    if any(h2.coordinates(cb.euler_class)):
        # value survives iff it stays outside indeterminacy + R[w]
        span = list(base.indeterminacy) + [cb.euler_class]
        killed = h2.contains_in_span(base.value_representative, span)
        predicted = "vanishes" if killed else NON_VANISHING
    else:
        predicted = base.verdict
    return PullbackMassey(base, total, predicted, total.verdict == predicted)
