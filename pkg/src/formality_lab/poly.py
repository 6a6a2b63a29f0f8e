"""Sparse multivariate polynomials over Q, used as parametric coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

PMono = tuple  # tuple[tuple[int, int], ...] sorted (variable, exponent)


def _mono_mul(a: PMono, b: PMono) -> PMono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PMono, Fraction] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> Poly:
        return cls({(): c})

    @classmethod
    def var(cls, i: int) -> Poly:
        return cls({((i, 1),): 1})

    @staticmethod
    def _lift(x) -> Poly:
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = Poly._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-Poly._lift(other))

    def __rsub__(self, other):
        return Poly._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            p = Poly.__new__(Poly)
            p.terms = {m: a * c for m, a in self.terms.items()} if c else {}
            return p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.terms == Poly._lift(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    @property
    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= point[v] ** e
                if not val:
                    break
            total += val
        return total

    def linear_part(self) -> dict[int, Fraction]:
        return {m[0][0]: c for m, c in self.terms.items() if m}

    def to_sympy(self, symbols):
        import sympy

        expr = sympy.Integer(0)
        for m, c in self.terms.items():
            t = sympy.Rational(c.numerator, c.denominator)
            for v, e in m:
                t *= symbols[v] ** e
            expr += t
        return expr

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"t{v}" if e == 1 else f"t{v}^{e}" for v, e in m)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)
