"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{index: coefficient}`` with no zero entries.
Elimination is deterministic: the pivot of a row is its smallest index,
and rows are used in increasing pivot order.  Coefficients are normally
:class:`fractions.Fraction`, but :meth:`Echelon.reduce` only needs ring
arithmetic, so it also accepts vectors with polynomial entries.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable


def add_scaled(acc: dict, vec: dict, c) -> None:
    """acc += c * vec, in place, dropping zeros."""
    for k, a in vec.items():
        nv = acc.get(k, 0) + c * a
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    With ``track=True`` every stored row remembers how it was obtained from
    the labelled vectors passed to :meth:`insert`, so :meth:`reduce` can
    express a vector of the span in terms of the inserted vectors.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._rows: dict[int, tuple[dict, dict | None]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def rows(self) -> list[dict]:
        return [self._rows[p][0] for p in sorted(self._rows)]

    def row_combos(self) -> list[dict]:
        return [self._rows[p][1] for p in sorted(self._rows)]

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return ``(remainder, expr)`` with ``vec = remainder + sum expr[l]*v_l``.

        ``remainder`` has no entry at any pivot.  ``expr`` is empty when
        tracking is off.
        """
        v = dict(vec)
        expr: dict = {}
        rows = self._rows
        heap = [k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            p = heapq.heappop(heap)
            c = v.get(p)
            if not c:
                continue
            row, combo = rows[p]
            for k, a in row.items():
                old = v.get(k)
                nv = (old if old is not None else 0) - c * a
                if nv:
                    if old is None and k in rows:
                        heapq.heappush(heap, k)
                    v[k] = nv
                elif old is not None:
                    del v[k]
            if combo is not None:
                add_scaled(expr, combo, c)
        return v, expr

    def insert(self, vec: dict, label: Hashable = None) -> dict | None:
        """Add ``vec`` to the span.

        Returns ``None`` if the rank grew.  Otherwise returns the linear
        relation ``{label: 1, l: -c, ...}`` among inserted vectors that
        witnesses the dependency (empty when untracked).
        """
        rem, expr = self.reduce(vec)
        relation: dict = {}
        if self.track:
            relation = {label: Fraction(1)}
            add_scaled(relation, expr, -1)
        if not rem:
            return relation
        p = min(rem)
        inv = 1 / Fraction(rem[p])
        row = {k: a * inv for k, a in rem.items()}
        combo = {k: a * inv for k, a in relation.items()} if self.track else None
        self._rows[p] = (row, combo)
        return None

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def solve(self, vec: dict) -> dict | None:
        """Coefficients over inserted labels reproducing ``vec``, or ``None``."""
        rem, expr = self.reduce(vec)
        if rem:
            return None
        return expr


def rank(vectors: Iterable[dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e.rank


def independent_subset(vectors: Iterable[dict]) -> list[int]:
    """Indices of the first maximal independent subfamily, in order."""
    e = Echelon()
    keep = []
    for i, v in enumerate(vectors):
        if e.insert(v) is None:
            keep.append(i)
    return keep


def kernel(vectors: list[dict]) -> list[dict]:
    """Basis of linear relations ``{i: c_i}`` with ``sum c_i vectors[i] = 0``."""
    e = Echelon(track=True)
    out = []
    for i, v in enumerate(vectors):
        rel = e.insert(v, i)
        if rel is not None:
            out.append(rel)
    return out
