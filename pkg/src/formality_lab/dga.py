"""Differential graded algebras: differential, cohomology, exactness, cup products."""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Element, GradedAlgebra, Monomial
from .linalg import Echelon


@dataclass(frozen=True)
class Violation:
    generator: str
    value: Element  # the nonzero d^2 of the generator, or the offending term

    def __str__(self):
        return f"d^2({self.generator}) = {self.value}"


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    order: tuple[str, ...] | None = None
    witness: str = ""

    def __bool__(self):
        return self.minimal


class _DiffData:
    """The differential A^k -> A^{k+1}: image echelon (with preimages) and kernel."""

    def __init__(self, image: Echelon, kernel: list[dict]):
        self.image = image
        self.kernel = kernel


class DGA:
    """A graded-commutative algebra with a differential given on generators.

    The differential is extended to all elements by the Leibniz rule.  All
    derived data (per-degree matrices, cohomology) is cached lazily; the
    object is otherwise immutable.
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        differential: Mapping[str, Element] | None = None,
        top_degree: int | None = None,
    ):
        self.algebra = algebra
        images = []
        differential = dict(differential or {})
        unknown = set(differential) - set(algebra.names)
        if unknown:
            raise KeyError(f"differential given for unknown generators {sorted(unknown)}")
        for g in algebra.generators:
            dg = differential.get(g.name)
            if dg is None:
                dg = algebra.zero()
            elif not isinstance(dg, Element):
                raise TypeError(f"d({g.name}) must be an Element")
            elif dg.algebra != algebra:
                raise ValueError(f"d({g.name}) lives in a different algebra")
            if dg and (not dg.is_homogeneous or dg.degree != g.degree + 1):
                raise ValueError(
                    f"d({g.name}) must be homogeneous of degree {g.degree + 1}, got {dg}"
                )
            images.append(dg)
        self._dgen = tuple(images)
        self.top_degree = top_degree
        self._lock = threading.RLock()
        self._dmono: dict[Monomial, Element] = {}
        self._index: dict[int, dict[Monomial, int]] = {}
        self._diff: dict[int, _DiffData] = {}
        self._rank: dict[int, int] = {}
        self._coh: dict[int, CohomologySpace] = {}

    # -- structure --------------------------------------------------------

    @property
    def generators(self):
        return self.algebra.generators

    @property
    def names(self) -> tuple[str, ...]:
        return self.algebra.names

    def differential_of(self, name: str) -> Element:
        return self._dgen[self.algebra.index(name)]

    def differential_map(self) -> dict[str, Element]:
        return {g.name: d for g, d in zip(self.generators, self._dgen)}

    def __eq__(self, other):
        return (
            isinstance(other, DGA)
            and self.algebra == other.algebra
            and self._dgen == other._dgen
        )

    def __hash__(self):
        return hash((self.algebra, self._dgen))

    def __repr__(self):
        return f"DGA({len(self.generators)} generators)"

    def gen(self, name: str) -> Element:
        return self.algebra.gen(name)

    # -- differential -----------------------------------------------------

    def _d_monomial(self, m: Monomial) -> Element:
        cached = self._dmono.get(m)
        if cached is not None:
            return cached
        alg = self.algebra
        out = alg.zero()
        prefix = alg.unit()
        prefix_deg = 0
        for pos, (i, e) in enumerate(m):
            dg = self._dgen[i]
            if dg:
                suffix = alg.monomial(m[pos + 1:])
                if e == 1:
                    term = dg
                else:
                    # even generator: d(x^e) = e x^(e-1) dx
                    term = alg.monomial(((i, e - 1),)) * dg * e
                piece = prefix * term * suffix
                out = out - piece if prefix_deg % 2 else out + piece
            prefix = prefix * alg.monomial(((i, e),))
            prefix_deg += alg.generators[i].degree * e
        with self._lock:
            self._dmono.setdefault(m, out)
        return out

    def d(self, u: Element) -> Element:
        """Leibniz extension of the generator differential."""
        if u.algebra != self.algebra:
            raise ValueError("element is not in this DGA's algebra")
        out = self.algebra.zero()
        for m, c in u.items():
            out = out + self._d_monomial(m).scale(c)
        return out

    def is_closed(self, u: Element) -> bool:
        return not self.d(u)

    def validate(self) -> list[Violation]:
        """Empty list iff d^2 = 0 (checked on generators) and truncations are respected."""
        out = []
        alg = self.algebra
        for i, g in enumerate(self.generators):
            dd = self.d(self._dgen[i])
            if dd:
                out.append(Violation(g.name, dd))
            if g.truncation is not None and self._dgen[i]:
                # x^k = 0 forces d(x^k) = k x^(k-1) dx = 0
                lead = alg.monomial(((i, g.truncation - 1),)) * self._dgen[i]
                if lead:
                    out.append(Violation(g.name, lead))
        return out

    # -- vectors ----------------------------------------------------------

    def basis(self, k: int) -> tuple[Monomial, ...]:
        return self.algebra.basis_of_degree(k)

    def _idx(self, k: int) -> dict[Monomial, int]:
        idx = self._index.get(k)
        if idx is None:
            idx = {m: j for j, m in enumerate(self.basis(k))}
            with self._lock:
                self._index.setdefault(k, idx)
        return idx

    def to_vector(self, u: Element, k: int) -> dict[int, Fraction]:
        idx = self._idx(k)
        try:
            return {idx[m]: c for m, c in u.items()}
        except KeyError:
            raise ValueError(f"{u} is not of degree {k}") from None

    def from_vector(self, vec: Mapping[int, Fraction], k: int) -> Element:
        basis = self.basis(k)
        return Element(self.algebra, {basis[j]: c for j, c in vec.items()})

    def _columns(self, k: int):
        idx = self._idx(k + 1)
        for m in self.basis(k):
            yield {idx[mm]: c for mm, c in self._d_monomial(m).items()}

    def _diffdata(self, k: int) -> _DiffData:
        data = self._diff.get(k)
        if data is not None:
            return data
        with self._lock:
            data = self._diff.get(k)
            if data is None:
                image = Echelon(track=True)
                kernel = []
                for j, col in enumerate(self._columns(k)):
                    rel = image.insert(col, j)
                    if rel is not None:
                        kernel.append(rel)
                data = _DiffData(image, kernel)
                self._diff[k] = data
                self._rank[k] = image.rank
        return data

    def rank_d(self, k: int) -> int:
        """Rank of d: A^k -> A^{k+1}."""
        if k < 0:
            return 0
        r = self._rank.get(k)
        if r is None:
            e = Echelon()
            for col in self._columns(k):
                e.insert(col)
            r = e.rank
            with self._lock:
                self._rank.setdefault(k, r)
        return r

    # -- cohomology -------------------------------------------------------

    def betti_number(self, k: int) -> int:
        if k < 0:
            return 0
        return len(self.basis(k)) - self.rank_d(k) - self.rank_d(k - 1)

    def betti(self, max_degree: int | None = None) -> tuple[int, ...]:
        if max_degree is None:
            max_degree = self.algebra.max_degree()
            if max_degree is None:
                max_degree = self.top_degree
            if max_degree is None:
                raise ValueError("infinite algebra: give max_degree")
        return tuple(self.betti_number(k) for k in range(max_degree + 1))

    def cohomology(self, k: int) -> CohomologySpace:
        space = self._coh.get(k)
        if space is not None:
            return space
        with self._lock:
            space = self._coh.get(k)
            if space is None:
                space = self._build_cohomology(k)
                self._coh[k] = space
        return space

    def _build_cohomology(self, k: int) -> CohomologySpace:
        if k < 0:
            return CohomologySpace(self, k, (), (), (), Echelon(track=True))
        cocycle_vecs = [
            {j: c for j, c in rel.items()} for rel in self._diffdata(k).kernel
        ]
        boundary_vecs = self._diffdata(k - 1).image.rows() if k > 0 else []
        solver = Echelon(track=True)
        for i, b in enumerate(boundary_vecs):
            solver.insert(b, ("b", i))
        reps = []
        for z in cocycle_vecs:
            if solver.insert(z, ("c", len(reps))) is None:
                reps.append(z)
        cocycles = tuple(self.from_vector(z, k) for z in cocycle_vecs)
        boundaries = tuple(self.from_vector(b, k) for b in boundary_vecs)
        space = CohomologySpace(self, k, cocycles, boundaries, (), solver)
        n = len(reps)
        classes = tuple(
            CohomologyClass(
                self, k, self.from_vector(z, k), tuple(Fraction(int(i == j)) for j in range(n))
            )
            for i, z in enumerate(reps)
        )
        object.__setattr__(space, "class_basis", classes)
        return space

    def cohomology_class(self, z: Element) -> CohomologyClass:
        k = _homogeneous_degree(z)
        return self.cohomology(k).class_of(z)

    def is_exact(self, z: Element) -> Element | None:
        """A primitive of the closed homogeneous element ``z``, or ``None``."""
        if z.algebra != self.algebra:
            raise ValueError("element is not in this DGA's algebra")
        if not z:
            return self.algebra.zero()
        if not z.is_homogeneous:
            raise ValueError(f"{z} is not homogeneous")
        if self.d(z):
            raise ValueError(f"{z} is not closed")
        k = z.degree
        if k == 0:
            return None
        expr = self._diffdata(k - 1).image.solve(self.to_vector(z, k))
        if expr is None:
            return None
        return self.from_vector(expr, k - 1)

    # -- minimality -------------------------------------------------------

    def is_minimal(self) -> MinimalityReport:
        """Whether some degree-compatible order puts every dg in earlier generators."""
        if not self.algebra.is_free:
            raise ValueError("minimality is only defined for free algebras")
        gens = self.generators
        deps: list[set[int]] = []
        for i, g in enumerate(gens):
            used = self._dgen[i].generators_used()
            if i in used:
                return MinimalityReport(False, None, f"d({g.name}) involves {g.name} itself")
            for j in used:
                if gens[j].degree > g.degree:
                    return MinimalityReport(
                        False, None,
                        f"d({g.name}) involves {gens[j].name} of higher degree {gens[j].degree}",
                    )
            deps.append(used)
        # Kahn's algorithm; ties broken by (degree, declaration index)
        waiting = {i: set(d) for i, d in enumerate(deps)}
        users: dict[int, list[int]] = {i: [] for i in range(len(gens))}
        for i, d in enumerate(deps):
            for j in d:
                users[j].append(i)
        heap = [(gens[i].degree, i) for i, d in waiting.items() if not d]
        heapq.heapify(heap)
        order = []
        while heap:
            _, i = heapq.heappop(heap)
            order.append(i)
            for u in users[i]:
                waiting[u].discard(i)
                if not waiting[u]:
                    heapq.heappush(heap, (gens[u].degree, u))
        if len(order) < len(gens):
            stuck = sorted(set(range(len(gens))) - set(order))
            names = ", ".join(gens[i].name for i in stuck)
            return MinimalityReport(False, None, f"cyclic dependency among {names}")
        degs = [gens[i].degree for i in order]
        if degs != sorted(degs):
            return MinimalityReport(False, None, "no degree-monotone order exists")
        return MinimalityReport(True, tuple(gens[i].name for i in order))


def _homogeneous_degree(z: Element) -> int:
    if not z:
        raise ValueError("cannot infer the degree of zero")
    if not z.is_homogeneous:
        raise ValueError(f"{z} is not homogeneous")
    return z.degree


@dataclass(frozen=True, eq=False)
class CohomologySpace:
    dga: DGA
    degree: int
    cocycle_basis: tuple[Element, ...]
    coboundary_basis: tuple[Element, ...]
    class_basis: tuple[CohomologyClass, ...]
    _solver: Echelon = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.class_basis)

    def __len__(self):
        return len(self.class_basis)

    def __iter__(self):
        return iter(self.class_basis)

    def __getitem__(self, i):
        return self.class_basis[i]

    def coordinates(self, z: Element) -> tuple[Fraction, ...]:
        """Coordinates of the class of the cocycle ``z`` in :attr:`class_basis`."""
        n = len(self.class_basis)
        if not z:
            return (Fraction(0),) * n
        vec = self.dga.to_vector(z, self.degree)
        rem, expr = self._solver.reduce(vec)
        if rem:
            raise ValueError(f"{z} is not closed")
        return tuple(Fraction(expr.get(("c", i), 0)) for i in range(n))

    def coordinates_poly(self, vec: dict) -> tuple[dict, list]:
        """Reduce a vector with polynomial coefficients; returns ``(remainder, coords)``."""
        rem, expr = self._solver.reduce(vec)
        return rem, [expr.get(("c", i), 0) for i in range(len(self.class_basis))]

    def class_of(self, z: Element) -> CohomologyClass:
        return CohomologyClass(self.dga, self.degree, z, self.coordinates(z))

    def element(self, coords: Sequence) -> Element:
        """Representative ``sum c_i rep_i`` of the class with given coordinates."""
        out = self.dga.algebra.zero()
        for c, cls in zip(coords, self.class_basis):
            if c:
                out = out + cls.representative.scale(c)
        return out

    def zero(self) -> CohomologyClass:
        return CohomologyClass(
            self.dga, self.degree, self.dga.algebra.zero(), (Fraction(0),) * self.dimension
        )

    def contains_in_span(self, z: Element, spanning: Sequence[Element]) -> bool:
        """Whether [z] lies in the span of the classes of the cocycles ``spanning``."""
        e = Echelon()
        for s in spanning:
            e.insert(_coord_vec(self.coordinates(s)))
        return e.contains(_coord_vec(self.coordinates(z)))


def _coord_vec(coords: Sequence[Fraction]) -> dict[int, Fraction]:
    return {i: c for i, c in enumerate(coords) if c}


@dataclass(frozen=True)
class CohomologyClass:
    dga: DGA = field(repr=False, compare=False)
    degree: int
    representative: Element = field(compare=False)
    coordinates: tuple[Fraction, ...]

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return (
            (self.dga is other.dga or self.dga == other.dga)
            and self.degree == other.degree
            and self.coordinates == other.coordinates
        )

    def __hash__(self):
        return hash((self.degree, self.coordinates))

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def __bool__(self):
        return not self.is_zero

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            return cup(self, other)
        c = Fraction(other)
        return CohomologyClass(
            self.dga, self.degree, self.representative.scale(c),
            tuple(x * c for x in self.coordinates),
        )

    __rmul__ = __mul__

    def __add__(self, other: CohomologyClass):
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degree")
        return CohomologyClass(
            self.dga, self.degree, self.representative + other.representative,
            tuple(a + b for a, b in zip(self.coordinates, other.coordinates)),
        )

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        return f"[{self.representative}]"


def cup(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    if not (a.dga is b.dga or a.dga == b.dga):
        raise ValueError("classes belong to different DGAs")
    prod = a.representative * b.representative
    return a.dga.cohomology(a.degree + b.degree).class_of(prod)


def kernel_coordinates(images: Sequence[Sequence[Fraction]]) -> list[dict[int, Fraction]]:
    """Linear relations among coordinate vectors (kernel of the map they define)."""
    e = Echelon(track=True)
    out = []
    for i, v in enumerate(images):
        rel = e.insert(_coord_vec(v), i)
        if rel is not None:
            out.append(rel)
    return out


def map_rank(images: Sequence[Sequence[Fraction]]) -> int:
    e = Echelon()
    for v in images:
        e.insert(_coord_vec(v))
    return e.rank


class Morphism:
    """A multiplicative, degree-preserving map given on generators."""

    def __init__(self, source: DGA, target: DGA, images: Mapping[str, Element]):
        self.source = source
        self.target = target
        imgs = []
        for g in source.generators:
            img = images.get(g.name)
            if img is None:
                img = target.algebra.zero()
            if img.algebra != target.algebra:
                raise ValueError(f"image of {g.name} is not in the target algebra")
            if img and img.degree != g.degree:
                raise ValueError(f"image of {g.name} has wrong degree")
            imgs.append(img)
        self._images = tuple(imgs)
        self._cache: dict[Monomial, Element] = {}
        self._lock = threading.Lock()

    def images(self) -> dict[str, Element]:
        return {g.name: img for g, img in zip(self.source.generators, self._images)}

    def _on_monomial(self, m: Monomial) -> Element:
        out = self._cache.get(m)
        if out is None:
            out = self.target.algebra.unit()
            for i, e in m:
                for _ in range(e):
                    out = out * self._images[i]
            with self._lock:
                self._cache.setdefault(m, out)
        return out

    def __call__(self, u: Element) -> Element:
        out = self.target.algebra.zero()
        for m, c in u.items():
            out = out + self._on_monomial(m).scale(c)
        return out

    def chain_map_defects(self) -> list[str]:
        bad = []
        for g in self.source.generators:
            lhs = self(self.source.differential_of(g.name))
            rhs = self.target.d(self(self.source.gen(g.name)))
            if lhs != rhs:
                bad.append(g.name)
        return bad

    def on_cohomology(self, k: int) -> list[tuple[Fraction, ...]]:
        """Images of the source class basis in target coordinates."""
        tgt = self.target.cohomology(k)
        return [tgt.coordinates(self(c.representative)) for c in self.source.cohomology(k)]


def induced_rank(phi: Morphism, k: int) -> int:
    return map_rank(phi.on_cohomology(k))


def span_rank(space: CohomologySpace, elements: Sequence[Element]) -> int:
    e = Echelon()
    for z in elements:
        e.insert(_coord_vec(space.coordinates(z)))
    return e.rank
