"""Independent reference implementations used as test oracles.

Nothing here imports the package under test.  The exterior algebra on
odd degree-1 generators is encoded with bitmask monomials, which is a
different representation from the package's sorted exponent tuples.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def popcount(m: int) -> int:
    return bin(m).count("1")


def _sign(m1: int, m2: int) -> int:
    # (-1)^(number of pairs i in m1, j in m2 with i > j)
    swaps = 0
    for j in range(m2.bit_length()):
        if m2 >> j & 1:
            swaps += popcount(m1 >> (j + 1))
    return -1 if swaps % 2 else 1


class Ext:
    """Exterior algebra on n odd degree-1 generators with a differential.

    ``diff`` maps a generator index to a dict {mask: coefficient}.
    ``mod`` switches coefficients to the prime field F_mod.
    """

    def __init__(self, n: int, diff: dict[int, dict[int, int]] | None = None, mod: int | None = None):
        self.n = n
        self.mod = mod
        self.diff = {i: self._norm(v) for i, v in (diff or {}).items()}

    def _norm(self, u: dict) -> dict:
        out = {}
        for m, c in u.items():
            c = c % self.mod if self.mod else Fraction(c)
            if c:
                out[m] = c
        return out

    def gen(self, i: int) -> dict:
        return {1 << i: 1 if self.mod else Fraction(1)}

    def add(self, *us: dict) -> dict:
        out: dict = {}
        for u in us:
            for m, c in u.items():
                out[m] = out.get(m, 0) + c
        return self._norm(out)

    def scale(self, u: dict, c) -> dict:
        return self._norm({m: c * v for m, v in u.items()})

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                out[m] = out.get(m, 0) + _sign(m1, m2) * c1 * c2
        return self._norm(out)

    def d_mono(self, m: int) -> dict:
        out: dict = {}
        bits = [i for i in range(self.n) if m >> i & 1]
        for r, i in enumerate(bits):
            di = self.diff.get(i)
            if not di:
                continue
            before = sum(1 << b for b in bits[:r])
            after = sum(1 << b for b in bits[r + 1:])
            term = self.mul(self.mul({before: 1}, di), {after: 1})
            out = self.add(out, self.scale(term, (-1) ** r))
        return out

    def d(self, u: dict) -> dict:
        out: dict = {}
        for m, c in u.items():
            out = self.add(out, self.scale(self.d_mono(m), c))
        return out

    def basis(self, k: int) -> list[int]:
        return sorted(m for m in range(1 << self.n) if popcount(m) == k)

    def degree_of(self, u: dict) -> int:
        degs = {popcount(m) for m in u}
        assert len(degs) == 1, "inhomogeneous element"
        return degs.pop()

    # -- linear algebra over Q with sympy ---------------------------------

    def vector(self, u: dict, k: int) -> list:
        return [u.get(m, 0) for m in self.basis(k)]

    def d_matrix(self, k: int) -> sympy.Matrix:
        src, tgt = self.basis(k), self.basis(k + 1)
        cols = [self.vector(self.d_mono(m), k + 1) for m in src]
        if not src or not tgt:
            return sympy.zeros(len(tgt), len(src))
        return sympy.Matrix(cols).T

    def betti(self) -> list[int]:
        ranks = [self.d_matrix(k).rank() for k in range(self.n + 1)]
        out = []
        for k in range(self.n + 1):
            dim = len(self.basis(k))
            out.append(dim - ranks[k] - (ranks[k - 1] if k else 0))
        return out

    def boundaries(self, k: int) -> sympy.Matrix:
        """Columns spanning B^k."""
        if k == 0:
            return sympy.zeros(1, 0)
        return self.d_matrix(k - 1)

    def cocycles(self, k: int) -> list[dict]:
        basis = self.basis(k)
        ns = self.d_matrix(k).nullspace() if basis else []
        return [{m: Fraction(int(v.p), int(v.q)) for m, v in zip(basis, vec) if v} for vec in ns]

    def rank_mod_boundaries(self, elements: list[dict], k: int) -> int:
        B = self.boundaries(k)
        cols = [sympy.Matrix(self.vector(u, k)) for u in elements]
        if not cols:
            return 0
        M = sympy.Matrix.hstack(B, *cols) if B.cols else sympy.Matrix.hstack(*cols)
        return M.rank() - (B.rank() if B.cols else 0)

    def primitive(self, z: dict, k: int) -> dict | None:
        """Some x with dx = z, via sympy's least-squares-free exact solve."""
        A = self.d_matrix(k - 1)
        b = sympy.Matrix(self.vector(z, k))
        try:
            sol, params = A.gauss_jordan_solve(b)
        except ValueError:
            return None
        sol = sol.subs({t: 0 for t in params})
        return {m: Fraction(int(v.p), int(v.q)) for m, v in zip(self.basis(k - 1), sol) if v}


def parse_structure(names: list[str], equations: dict[str, list[tuple[int, str, str]]]) -> dict:
    """``{"e3": [(1, "e1", "e2")]}`` means d e3 = e1*e2."""
    idx = {n: i for i, n in enumerate(names)}
    diff = {}
    for name, terms in equations.items():
        u: dict = {}
        for c, x, y in terms:
            i, j = idx[x], idx[y]
            m = (1 << i) | (1 << j)
            s = 1 if i < j else -1
            u[m] = u.get(m, 0) + s * c
        diff[idx[name]] = u
    return diff


# -- higher Massey products by exhaustive enumeration over F_p ------------


def higher_massey_bruteforce(ext: Ext, reps: list[dict]) -> str:
    """Enumerate every defining system of <a_1..a_k> over F_p for degree-1 classes.

    Uses dxi_{i,j} = sum_{l=i}^{j-1} bar(xi_{i,l}) xi_{l+1,j} with
    bar(x) = (-1)^{|x|} x.  Degree-1 exact elements are zero, so the
    diagonal entries are the given representatives.

    The entries xi_{1,k-1} and xi_{2,k} feed only the value, and changing
    them by cocycles z moves the value by a_1*z or z*a_k.  Those two are
    therefore fixed to one solution each and the value is tested against
    the finite set B^2 + a_1*Z^1 + Z^1*a_k, which is equivalent to
    enumerating them as well.
    """
    assert ext.mod, "enumeration needs a finite field"
    p, k = ext.mod, len(reps)
    for r in reps:
        assert ext.degree_of(r) == 1
    deg1 = ext.basis(1)
    table: dict[tuple, list[dict]] = {}
    for coeffs in itertools.product(range(p), repeat=len(deg1)):
        x = {m: c for m, c in zip(deg1, coeffs) if c}
        table.setdefault(_key(ext.d(x)), []).append(x)
    cocycles = table.get((), [])
    a1, ak = ext._norm(reps[0]), ext._norm(reps[-1])
    shifts = {_key(ext.add(ext.mul(a1, z1), ext.mul(z2, ak))) for z1 in cocycles for z2 in cocycles}
    boundaries = [dict(key) for key in table]
    reachable = {_key(ext.add(dict(s), b)) for s in shifts for b in boundaries}

    order = [(i, i + s) for s in range(1, k - 1) for i in range(k - s)]

    def rhs(xi, i, j):
        # every xi has degree 1 here, so bar(x) = -x
        return ext.add(*[ext.scale(ext.mul(xi[(i, l)], xi[(l + 1, j)]), -1) for l in range(i, j)])

    found_system = False

    def dfs(pos: int, xi: dict) -> bool:
        nonlocal found_system
        if pos == len(order):
            found_system = True
            return _key(rhs(xi, 0, k - 1)) in reachable
        i, j = order[pos]
        sols = table.get(_key(rhs(xi, i, j)), [])
        if j - i == k - 2:
            sols = sols[:1]
        for x in sols:
            xi[(i, j)] = x
            if dfs(pos + 1, xi):
                return True
        xi.pop((i, j), None)
        return False

    start = {(i, i): ext._norm(r) for i, r in enumerate(reps)}
    if dfs(0, start):
        return "vanishes"
    return "non_vanishing" if found_system else "undefined"


def _key(u: dict) -> tuple:
    return tuple(sorted(u.items()))


# -- other small oracles --------------------------------------------------


def cup_rank_mod_boundaries(ext: Ext, omega: dict, p: int) -> int:
    """rank of cup with omega from H^p to H^{p+2}, by explicit matrices."""
    Z = ext.cocycles(p)
    images = [ext.mul(z, omega) for z in Z]
    return ext.rank_mod_boundaries([u for u in images if u], p + 2) if any(images) else 0


def kunneth(b1: list[int], b2: list[int]) -> list[int]:
    out = [0] * (len(b1) + len(b2) - 1)
    for i, x in enumerate(b1):
        for j, y in enumerate(b2):
            out[i + j] += x * y
    return out


# -- string input and Massey products over Q ------------------------------


def element(ext: Ext, names: list[str], text: str) -> dict:
    """Parse ``"a*e + b*c - 1/2*x"`` into the bitmask representation."""
    idx = {n: i for i, n in enumerate(names)}
    out: dict = {}
    text = text.replace("-", "+-")
    for term in filter(None, (t.strip() for t in text.split("+"))):
        coeff = Fraction(1)
        if term.startswith("-"):
            coeff, term = -coeff, term[1:].strip()
        u = {0: Fraction(1)}
        for factor in term.split("*"):
            factor = factor.strip()
            if factor in idx:
                u = ext.mul(u, ext.gen(idx[factor]))
            else:
                coeff *= Fraction(factor)
        out = ext.add(out, ext.scale(u, coeff))
    return out


def triple_massey_oracle(ext: Ext, a1: dict, a2: dict, a3: dict) -> str:
    """Triple product of degree-1 classes over Q."""
    p1 = ext.degree_of(a1)
    x12 = ext.primitive(ext.mul(a1, a2), 2)
    x23 = ext.primitive(ext.mul(a2, a3), 2)
    if x12 is None or x23 is None:
        return "undefined"
    sign = -1 if p1 % 2 == 0 else 1
    value = ext.add(ext.mul(a1, x23), ext.scale(ext.mul(x12, a3), sign))
    h1 = ext.cocycles(1)
    span = [ext.mul(a1, z) for z in h1] + [ext.mul(z, a3) for z in h1]
    span = [u for u in span if u]
    r0 = ext.rank_mod_boundaries(span, 2) if span else 0
    r1 = ext.rank_mod_boundaries(span + [value], 2) if value else r0
    return "vanishes" if r1 == r0 else "non_vanishing"


def a_massey_oracle(ext: Ext, a: dict, bs: list[dict], shifts: list[dict] | None = None) -> str:
    """<a; b1, b2, b3> on degree-2 classes in an exterior algebra.

    ``shifts`` adds a cocycle to each primitive xi_i, which must not
    change the answer.
    """
    xs = [ext.primitive(ext.mul(a, b), 3) for b in bs]
    if any(x is None for x in xs):
        return "undefined"
    if shifts:
        xs = [ext.add(x, z) for x, z in zip(xs, shifts)]
    b1, b2, b3 = bs
    x1, x2, x3 = xs
    value = ext.add(
        ext.mul(ext.mul(x1, x2), b3), ext.mul(ext.mul(x2, x3), b1), ext.mul(ext.mul(x3, x1), b2)
    )
    z3 = ext.cocycles(3)
    span = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        # <b_i, a, b_j> = b_i xi_j - xi_i b_j, up to b_i*H^3 + H^3*b_j
        coset = [ext.add(ext.mul(bs[i], xs[j]), ext.scale(ext.mul(xs[i], bs[j]), -1))]
        coset += [ext.mul(bs[i], z) for z in z3] + [ext.mul(z, bs[j]) for z in z3]
        span += [ext.mul(u, z) for u in coset for z in z3]
    span = [u for u in span if u]
    r0 = ext.rank_mod_boundaries(span, 8) if span else 0
    r1 = ext.rank_mod_boundaries(span + [value], 8) if value else r0
    return "vanishes" if r1 == r0 else "non_vanishing"
