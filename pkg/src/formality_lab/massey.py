"""Massey products, a-Massey products and negative formality certificates.

Every verdict is exact.  A triple product is computed from one defining
system and compared against its indeterminacy subspace; higher products
are decided over the full parameterization of defining systems when that
is small enough, and otherwise searched within a budget.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Element
from .dga import DGA, CohomologyClass, map_rank
from .linalg import Echelon, independent_subset
from .poly import Poly

UNDEFINED = "undefined"
VANISHES = "vanishes"
NON_VANISHING = "non_vanishing"
INCONCLUSIVE = "inconclusive"

DEFAULT_BUDGET = 4096
DEFAULT_ENUMERATION_BOUND = 12


def default_budget() -> int:
    raw = os.environ.get("FORMALITY_LAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True, eq=False)
class MasseyResult:
    kind: str  # "triple", "higher" or "a_massey"
    degree: int
    verdict: str
    value_representative: Element | None = None
    indeterminacy: tuple[Element, ...] = ()
    witness: dict = field(default_factory=dict)
    note: str = ""

    @property
    def non_vanishing(self) -> bool:
        return self.verdict == NON_VANISHING

    def summary(self) -> str:
        label = self.verdict.replace("_", "-")
        if self.value_representative is not None and self.verdict != UNDEFINED:
            return f"{label}: {_bracket(self.value_representative)}"
        return label if not self.note else f"{label} ({self.note})"


def _bracket(u: Element) -> str:
    """``-[b*c]`` style display of a class representative."""
    terms = u.sorted_terms()
    if len(terms) == 1 and terms[0][1] < 0:
        return f"-[{-u}]"
    return f"[{u}]"


def _same_dga(D: DGA, classes: Sequence[CohomologyClass]):
    for a in classes:
        if not (a.dga is D or a.dga == D):
            raise ValueError("classes belong to a different DGA")


def _check_rep(D: DGA, a: CohomologyClass, rep: Element) -> Element:
    if D.d(rep):
        raise ValueError(f"representative {rep} is not closed")
    if not rep and a.is_zero:
        return rep
    if rep.degree != a.degree or D.cohomology(a.degree).coordinates(rep) != a.coordinates:
        raise ValueError(f"{rep} does not represent the given class")
    return rep


def _check_primitive(D: DGA, xi: Element, target: Element, label: str) -> Element:
    if D.d(xi) != target:
        raise ValueError(f"d({label}) = {D.d(xi)} but must equal {target}")
    return xi


def _span_basis(D: DGA, degree: int, elements: Sequence[Element]) -> tuple[Element, ...]:
    """Cocycles among ``elements`` whose classes form a basis of their span."""
    space = D.cohomology(degree)
    vecs = [{i: c for i, c in enumerate(space.coordinates(z)) if c} for z in elements]
    return tuple(elements[i] for i in independent_subset(vecs))


# -- triple products ------------------------------------------------------


def triple_massey(
    D: DGA,
    a1: CohomologyClass,
    a2: CohomologyClass,
    a3: CohomologyClass,
    representatives: Sequence[Element] | None = None,
    xi12: Element | None = None,
    xi23: Element | None = None,
) -> MasseyResult:
    """<a1, a2, a3> as a coset of a1*H + H*a3, with the sign convention

    value = alpha_1 xi_23 + (-1)^(p1+1) xi_12 alpha_3,
    d xi_12 = alpha_1 alpha_2,  d xi_23 = alpha_2 alpha_3.

    Representatives and primitives may be supplied; they are checked.
    """
    classes = (a1, a2, a3)
    _same_dga(D, classes)
    for a in classes:
        if a.degree <= 0:
            raise ValueError("Massey products need classes of positive degree")
    p1, p2, p3 = (a.degree for a in classes)
    if representatives is None:
        reps = [a.representative for a in classes]
    else:
        reps = [_check_rep(D, a, r) for a, r in zip(classes, representatives)]
    al1, al2, al3 = reps
    deg = p1 + p2 + p3 - 1
    witness = {"representatives": tuple(reps)}

    prod12, prod23 = al1 * al2, al2 * al3
    if xi12 is None:
        xi12 = D.is_exact(prod12)
    else:
        xi12 = _check_primitive(D, xi12, prod12, "xi_12")
    if xi23 is None:
        xi23 = D.is_exact(prod23)
    else:
        xi23 = _check_primitive(D, xi23, prod23, "xi_23")
    if xi12 is None or xi23 is None:
        bad = "a1*a2" if xi12 is None else "a2*a3"
        return MasseyResult("triple", deg, UNDEFINED, witness=witness, note=f"{bad} != 0")

    sign = 1 if (p1 + 1) % 2 == 0 else -1
    value = al1 * xi23 + (xi12 * al3).scale(sign)
    if D.d(value):
        raise AssertionError("Massey value is not closed")
    witness["xi"] = {(1, 2): xi12, (2, 3): xi23}

    spanning = [al1 * h.representative for h in D.cohomology(p2 + p3 - 1)]
    spanning += [h.representative * al3 for h in D.cohomology(p1 + p2 - 1)]
    indet = _span_basis(D, deg, spanning)
    space = D.cohomology(deg)
    vanishes = space.contains_in_span(value, indet)
    verdict = VANISHES if vanishes else NON_VANISHING
    return MasseyResult("triple", deg, verdict, value, indet, witness)


# -- a-Massey products ----------------------------------------------------


def a_massey(
    D: DGA,
    a: CohomologyClass,
    b1: CohomologyClass,
    b2: CohomologyClass,
    b3: CohomologyClass,
    representatives: Sequence[Element] | None = None,
    xis: Sequence[Element] | None = None,
) -> MasseyResult:
    """<a; b1, b2, b3> = [xi1 xi2 beta3 + xi2 xi3 beta1 + xi3 xi1 beta2] in H^8."""
    classes = (a, b1, b2, b3)
    _same_dga(D, classes)
    for c in classes:
        if c.degree != 2:
            raise ValueError("a-Massey products take degree-2 classes")
    if representatives is None:
        reps = [c.representative for c in classes]
    else:
        reps = [_check_rep(D, c, r) for c, r in zip(classes, representatives)]
    alpha, betas = reps[0], reps[1:]
    witness = {"representatives": tuple(reps)}
    prods = [alpha * b for b in betas]
    if xis is None:
        xs = [D.is_exact(p) for p in prods]
    else:
        xs = [_check_primitive(D, x, p, f"xi_{i + 1}") for i, (x, p) in enumerate(zip(xis, prods))]
    if any(x is None for x in xs):
        i = next(i for i, x in enumerate(xs) if x is None)
        return MasseyResult("a_massey", 8, UNDEFINED, witness=witness, note=f"a*b{i + 1} != 0")
    x1, x2, x3 = xs
    be1, be2, be3 = betas
    value = x1 * x2 * be3 + x2 * x3 * be1 + x3 * x1 * be2
    if D.d(value):
        raise AssertionError("a-Massey value is not closed")
    witness["xi"] = tuple(xs)

    # span of every representative of <b_i, a, b_j>, times H^3
    h3 = [h.representative for h in D.cohomology(3)]
    spanning = []
    triples = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        t = triple_massey(D, classes[1 + i], a, classes[1 + j])
        triples[(i + 1, j + 1)] = t
        coset = [t.value_representative, *t.indeterminacy]
        spanning += [u * h for u in coset for h in h3]
    witness["triples"] = triples
    indet = _span_basis(D, 8, [s for s in spanning if s]) if spanning else ()
    vanishes = D.cohomology(8).contains_in_span(value, indet)
    return MasseyResult("a_massey", 8, VANISHES if vanishes else NON_VANISHING, value, indet, witness)


# -- higher products ------------------------------------------------------


class _PElement:
    """Element whose coefficients are polynomials in the defining-system parameters."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    @classmethod
    def lift(cls, u: Element) -> _PElement:
        return cls(u.algebra, {m: Poly.const(c) for m, c in u.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return _PElement(self.alg, out)

    def scale(self, c) -> _PElement:
        return _PElement(self.alg, {m: a * c for m, a in self.terms.items() if a * c})

    def __mul__(self, other):
        out: dict = {}
        mm = self.alg.multiply_monomials
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                r = mm(m1, m2)
                if r is None:
                    continue
                s, m = r
                nc = out.get(m, 0) + (c1 * c2 if s > 0 else -(c1 * c2))
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return _PElement(self.alg, out)

    def evaluate(self, point) -> Element:
        return Element(self.alg, {m: c.evaluate(point) for m, c in self.terms.items()})


def _vec(D: DGA, u: _PElement, k: int) -> dict:
    idx = D._idx(k)
    return {idx[m]: c for m, c in u.terms.items()}


def _from_vec(D: DGA, vec: dict, k: int) -> _PElement:
    basis = D.basis(k)
    return _PElement(D.algebra, {basis[j]: Poly._lift(c) for j, c in vec.items() if c})


@dataclass
class _System:
    """Symbolic defining system: xi_{ij} as parametric elements plus constraints."""

    xi: dict
    constraints: list
    value: _PElement | None
    value_coords: list
    nparams: int
    param_owner: list  # (i, j) per parameter


def _symbolic_system(D: DGA, classes: Sequence[CohomologyClass]) -> _System:
    k = len(classes)
    p = [a.degree for a in classes]
    xi: dict[tuple[int, int], _PElement] = {}
    degs: dict[tuple[int, int], int] = {}
    constraints: list[Poly] = []
    owner: list[tuple[int, int]] = []
    for i in range(1, k + 1):
        xi[(i, i)] = _PElement.lift(classes[i - 1].representative)
        degs[(i, i)] = p[i - 1]

    def bar(key):
        return xi[key].scale(-1) if degs[key] % 2 else xi[key]

    def rhs(i, j):
        out = _PElement(D.algebra, {})
        for l in range(i, j):
            out = out + bar((i, l)) * xi[(l + 1, j)]
        return out

    for span in range(1, k - 1 + 1):
        for i in range(1, k - span + 1):
            j = i + span
            if (i, j) == (1, k):
                continue
            deg = sum(p[i - 1:j]) - (j - i)
            r = rhs(i, j)
            image = D._diffdata(deg).image
            rem, expr = image.reduce(_vec(D, r, deg + 1))
            constraints.extend(c for c in rem.values())
            x = _from_vec(D, expr, deg)
            for h in D.cohomology(deg):
                t = Poly.var(len(owner))
                owner.append((i, j))
                x = x + _PElement.lift(h.representative).scale(t)
            xi[(i, j)] = x
            degs[(i, j)] = deg
    vdeg = sum(p) - (k - 2)
    value = rhs(1, k)
    space = D.cohomology(vdeg)
    rem, coords = space.coordinates_poly(_vec(D, value, vdeg))
    constraints.extend(rem.values())
    coords = [Poly._lift(c) for c in coords]
    constraints = [Poly._lift(c) for c in constraints if c]
    return _System(xi, constraints, value, coords, len(owner), owner)


def _linear_consistent(polys: Sequence[Poly], n: int) -> bool:
    e = Echelon()
    for f in polys:
        row = dict(f.linear_part())
        c = f.constant()
        if c:
            row[n] = c
        if row:
            e.insert(row)
    return not e.contains({n: Fraction(1)})


def _linear_solution(polys: Sequence[Poly], n: int) -> list[Fraction] | None:
    """A rational solution of an affine system (free variables set to zero)."""
    e = Echelon(track=True)
    rows = []
    for idx, f in enumerate(polys):
        rows.append(f)
        row = dict(f.linear_part())
        if f.constant():
            row[n] = f.constant()
        if row:
            e.insert(row, idx)
    if e.contains({n: Fraction(1)}):
        return None
    # back-substitute through the echelon rows, highest pivot first
    point = [Fraction(0)] * n
    for row in reversed(e.rows()):
        piv = min(row)
        if piv == n:
            return None
        acc = row.get(n, Fraction(0))
        for v, c in row.items():
            if v != piv and v != n:
                acc += c * point[v]
        point[piv] = -acc
    return point


def _groebner_unit(polys: Sequence[Poly], n: int) -> bool:
    import sympy

    if not polys:
        return False
    syms = sympy.symbols(f"t0:{max(n, 1)}")
    exprs = [f.to_sympy(syms) for f in polys]
    G = sympy.groebner(exprs, *syms, order="grevlex", domain="QQ")
    return list(G.exprs) == [1]


def _grid(n: int, budget: int):
    values = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
              Fraction(1, 2), Fraction(-1, 2)]
    count = 0
    for width in range(1, len(values) + 1):
        for point in itertools.product(values[:width], repeat=n):
            if width > 1 and all(v in values[:width - 1] for v in point):
                continue
            yield list(point)
            count += 1
            if count >= budget:
                return


def higher_massey(
    D: DGA,
    classes: Sequence[CohomologyClass],
    budget: int | None = None,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
) -> MasseyResult:
    """<a_1, ..., a_k> for k >= 4 with a three-valued verdict.

    Defining systems are parameterized symbolically: each xi_{ij} is a fixed
    primitive plus a free combination of cohomology representatives.  The
    result vanishes iff some parameter value satisfies every exactness
    constraint and kills the value class.
    """
    k = len(classes)
    if k < 4:
        raise ValueError("higher_massey needs at least four classes")
    _same_dga(D, classes)
    for a in classes:
        if a.degree <= 0:
            raise ValueError("Massey products need classes of positive degree")
    if budget is None:
        budget = default_budget()
    vdeg = sum(a.degree for a in classes) - (k - 2)
    system = _symbolic_system(D, classes)
    n = system.nparams
    cons, coords = system.constraints, system.value_coords
    complete = n <= enumeration_bound
    witness = {"parameters": n, "owners": tuple(system.param_owner)}

    def done(verdict, point=None, note=""):
        w = dict(witness)
        value = None
        if point is not None:
            w["xi"] = {key: x.evaluate(point) for key, x in system.xi.items() if key[0] != key[1]}
            w["point"] = tuple(point)
            value = system.value.evaluate(point)
        return MasseyResult("higher", vdeg, verdict, value, (), w, note)

    linear_cons = all(f.degree <= 1 for f in cons)
    # definedness: some defining system must exist
    if linear_cons:
        if not _linear_consistent(cons, n):
            return done(UNDEFINED, note="no defining system")
    elif complete and _groebner_unit(cons, n):
        return done(UNDEFINED, note="no defining system")

    full = cons + [c for c in coords if c]
    if all(f.degree <= 1 for f in full):
        point = _linear_solution(full, n)
        if point is not None:
            return done(VANISHES, point)
        if linear_cons:
            witness_point = _linear_solution(cons, n)
            return done(NON_VANISHING, witness_point, note="affine parameterization, no zero")
    if complete and _groebner_unit(full, n):
        point = _linear_solution(cons, n) if linear_cons else None
        return done(NON_VANISHING, point, note="polynomial system has no solution")

    for point in _grid(n, budget):
        if all(not f.evaluate(point) for f in full):
            return done(VANISHES, point)
    if not complete:
        return done(INCONCLUSIVE, note=f"{n} parameters exceed enumeration bound")
    return done(INCONCLUSIVE, note="no zero found within budget")


def massey(D: DGA, classes: Sequence[CohomologyClass], budget: int | None = None) -> MasseyResult:
    if len(classes) == 3:
        return triple_massey(D, *classes)
    return higher_massey(D, classes, budget)


# -- certificates ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Certificate:
    """A non-vanishing triple Massey product that rules out s-formality."""

    dga: DGA
    s: int
    classes: tuple[CohomologyClass, ...]
    result: MasseyResult
    recipe: object = None

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.degree for a in self.classes)


def _degree_triples(s: int):
    bound = s + 1
    out = []
    for p1 in range(1, bound + 1):
        for p2 in range(1, bound + 1):
            for p3 in range(1, bound + 1):
                if p1 + p2 <= bound and p2 + p3 <= bound:
                    out.append((p1, p2, p3))
    return out


def not_s_formal_certificate(model, s: int, hints: Sequence[Sequence[str]] = ()) -> Certificate | None:
    """Search for a non-vanishing triple product obeying the s-formality degree bounds.

    ``model`` is a DGA or a :class:`~formality_lab.zoo.Model`; a model's
    known witness is tried before the lexicographic search.  ``None`` is
    not a proof of formality.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    D = getattr(model, "dga", model)
    recipe = getattr(model, "recipe", None)
    hints = list(hints)
    witness = getattr(model, "witness", None)
    if witness:
        hints.insert(0, witness)
    bound = s + 1
    for names in hints:
        classes = [D.cohomology_class(_named(D, n)) for n in names]
        p = [a.degree for a in classes]
        if p[0] + p[1] > bound or p[1] + p[2] > bound:
            continue
        res = triple_massey(D, *classes)
        if res.non_vanishing:
            return Certificate(D, s, tuple(classes), res, recipe)
    for p1, p2, p3 in _degree_triples(s):
        bases = [D.cohomology(p).class_basis for p in (p1, p2, p3)]
        for triple in itertools.product(*bases):
            res = triple_massey(D, *triple)
            if res.non_vanishing:
                return Certificate(D, s, tuple(triple), res, recipe)
    return None


def _named(D: DGA, expr) -> Element:
    if isinstance(expr, Element):
        return expr
    from .dsl import parse_polynomial

    return parse_polynomial(expr, D.algebra)


# -- Donaldson lower bound ------------------------------------------------


def donaldson_betti_floor(model, p: int) -> int:
    """rank of cup with [omega]: H^p -> H^{p+2}, a lower bound for b_p of a divisor."""
    omega = model.symplectic_form
    if omega is None:
        raise ValueError("model carries no symplectic form")
    if model.dimension % 2:
        raise ValueError("symplectic model must have even dimension")
    n = model.dimension // 2
    i = 2 * (n - 1) - p
    if not 0 <= i <= n - 2:
        raise ValueError(f"p = {p} outside 2(n-1)-i with 0 <= i <= n-2 (n = {n})")
    D = model.dga
    target = D.cohomology(p + 2)
    images = [target.coordinates(h.representative * omega) for h in D.cohomology(p)]
    return map_rank(images)
