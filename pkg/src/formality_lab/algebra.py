"""Free graded-commutative algebras over Q with optional truncation.

A monomial is a tuple of ``(generator_index, exponent)`` pairs sorted by
generator index.  Odd generators always carry exponent 1; an even
generator with truncation ``k`` vanishes at the ``k``-th power.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Monomial = tuple  # tuple[tuple[int, int], ...]

UNIT: Monomial = ()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    truncation: int | None = None

    def __post_init__(self):
        if not self.name or not (self.name[0].isalpha() or self.name[0] == "_"):
            raise ValueError(f"bad generator name {self.name!r}")
        if not all(ch.isalnum() or ch == "_" for ch in self.name):
            raise ValueError(f"bad generator name {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"generator {self.name}: degree must be >= 1, got {self.degree}")
        if self.truncation is not None:
            if self.degree % 2:
                raise ValueError(f"generator {self.name}: truncation on odd generator")
            if self.truncation < 2:
                raise ValueError(f"generator {self.name}: truncation must be >= 2")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class GradedAlgebra:
    """The free graded-commutative algebra on an ordered list of generators.

    Two algebras compare equal when their generator lists are equal, so
    elements built from structurally identical algebras interoperate.
    """

    def __init__(self, generators: Iterable[Generator] = ()):
        gens = tuple(generators)
        index = {}
        for i, g in enumerate(gens):
            if g.name in index:
                raise ValueError(f"duplicate generator name {g.name!r}")
            index[g.name] = i
        self.generators = gens
        self._index = index
        self._degrees = tuple(g.degree for g in gens)
        self._odd = tuple(g.odd for g in gens)
        self._lock = threading.Lock()
        self._bases: dict[int, tuple[Monomial, ...]] = {}

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"GradedAlgebra({', '.join(f'{g.name}:{g.degree}' for g in self.generators)})"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def is_free(self) -> bool:
        return all(g.truncation is None for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def degree_map(self) -> dict[str, int]:
        return {g.name: g.degree for g in self.generators}

    def max_degree(self) -> int | None:
        """Top nonzero degree, or ``None`` if the algebra is infinite."""
        total = 0
        for g in self.generators:
            if g.odd:
                total += g.degree
            elif g.truncation is None:
                return None
            else:
                total += g.degree * (g.truncation - 1)
        return total

    # -- elements ---------------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def unit(self) -> Element:
        return Element(self, {UNIT: Fraction(1)})

    def scalar(self, c) -> Element:
        return Element(self, {UNIT: Fraction(c)})

    def gen(self, name: str) -> Element:
        return Element(self, {((self.index(name), 1),): Fraction(1)})

    def gens(self) -> list[Element]:
        return [Element(self, {((i, 1),): Fraction(1)}) for i in range(len(self.generators))]

    def monomial(self, m: Monomial) -> Element:
        return Element(self, {m: Fraction(1)})

    # -- monomials --------------------------------------------------------

    def monomial_degree(self, m: Monomial) -> int:
        deg = self._degrees
        return sum(deg[i] * e for i, e in m)

    def multiply_monomials(self, m1: Monomial, m2: Monomial) -> tuple[int, Monomial] | None:
        """Canonical form of ``m1 * m2`` as ``(sign, monomial)``, or ``None`` if zero."""
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        odd = self._odd
        exps = dict(m1)
        for i, e in m2:
            if i in exps:
                if odd[i]:
                    return None
                e = exps[i] + e
                t = self.generators[i].truncation
                if t is not None and e >= t:
                    return None
            exps[i] = e
        sign = 1
        odd1 = [i for i, _ in m1 if odd[i]]
        if odd1:
            for j, _ in m2:
                if odd[j]:
                    # each odd factor of m1 with larger index is swapped past j
                    if sum(1 for i in odd1 if i > j) % 2:
                        sign = -sign
        return sign, tuple(sorted(exps.items()))

    def basis_of_degree(self, d: int) -> tuple[Monomial, ...]:
        """All canonical monomials of total degree ``d`` in lexicographic order."""
        if d < 0:
            return ()
        cached = self._bases.get(d)
        if cached is not None:
            return cached
        gens = self.generators
        n = len(gens)

        def rec(i: int, r: int) -> Iterator[Monomial]:
            if r == 0:
                yield ()
                return
            if i == n:
                return
            g = gens[i]
            if g.odd:
                emax = 1
            elif g.truncation is None:
                emax = r // g.degree
            else:
                emax = min(g.truncation - 1, r // g.degree)
            for e in range(emax + 1):
                rest = r - e * g.degree
                if rest < 0:
                    break
                for tail in rec(i + 1, rest):
                    yield ((i, e),) + tail if e else tail

        basis = tuple(sorted(rec(0, d)))
        with self._lock:
            self._bases.setdefault(d, basis)
        return self._bases[d]

    def format_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def make_algebra(generators: Iterable[Generator]) -> GradedAlgebra:
    return GradedAlgebra(generators)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Element:
    """Immutable linear combination of canonical monomials with rational coefficients."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Monomial, object] | None = None):
        self.algebra = algebra
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms):
        # terms already canonical and zero-free
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {self.algebra.monomial_degree(m) for m in self._terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous nonzero element; ``None`` for zero or mixed."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def generators_used(self) -> set[int]:
        return {i for m in self._terms for i, _ in m}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Element):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements belong to different algebras")

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Element._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Element:
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return Element._raw(self.algebra, {m: a * c for m, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = self.algebra.unit()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def canonicalize(self) -> Element:
        """Rebuild from scratch; canonical elements are returned unchanged."""
        out = self.algebra.zero()
        for m, c in self._terms.items():
            prod = self.algebra.unit()
            for i, e in m:
                for _ in range(e):
                    prod = prod * self.algebra.gens()[i]
            out = out + prod.scale(c)
        return out

    # -- formatting -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        alg = self.algebra
        return sorted(self._terms.items(), key=lambda mc: (alg.monomial_degree(mc[0]), mc[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            body = self.algebra.format_monomial(m)
            if not m:
                text = _fmt_coeff(a)
            elif a == 1:
                text = body
            else:
                text = f"{_fmt_coeff(a)}*{body}"
            if k == 0:
                out.append(f"-{text}" if neg else text)
            else:
                out.append(f" - {text}" if neg else f" + {text}")
        return "".join(out)

    def __repr__(self):
        return f"Element({self})"


def multiply(u: Element, v: Element) -> Element:
    u._check(v)
    alg = u.algebra
    out: dict = {}
    mm = alg.multiply_monomials
    for m1, c1 in u._terms.items():
        for m2, c2 in v._terms.items():
            r = mm(m1, m2)
            if r is None:
                continue
            sign, m = r
            nc = out.get(m, 0) + (c1 * c2 if sign > 0 else -c1 * c2)
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
    return Element._raw(alg, out)
