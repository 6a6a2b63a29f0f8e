"""Geography of non-formal symplectic and contact manifolds.

Given a dimension ``m``, a first Betti number ``b`` and a flavor, decide
whether a computable model realizes the pair, and if so produce the
recipe together with a triple Massey certificate on the full model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .massey import Certificate, not_s_formal_certificate
from .recipe import Recipe, with_power

SYMPLECTIC = "symplectic"
CONTACT = "contact"
FLAVORS = (SYMPLECTIC, CONTACT)

REALIZED = "realized"
OUT_OF_SCOPE = "exists_but_out_of_engine_scope"
IMPOSSIBLE = "impossible"

CITATIONS = {
    "nonformal-existence": (
        "non-formal compact oriented m-manifolds with b1 = b exist iff "
        "m >= 3 and b >= 2, or m >= 5 and b = 1, or m >= 7 and b = 0 (Fernandez-Munoz)"
    ),
    "symplectic-parity": "symplectic manifolds have even dimension",
    "contact-parity": "contact manifolds have odd dimension",
    "nilmanifold-mpq": (
        "M(p,q) = H(1,p) x H(1,q) nilmanifold with p+q = b-2, times copies of S^2"
    ),
    "fgg": "Fernandez-Gotay-Gray T^2-bundle over T^2 with b1 in {2,3}, times copies of S^2",
    "boothby-wang": (
        "Boothby-Wang circle bundle over FGG(b0) x (S^2)^k with Euler class [omega], "
        "times copies of T^2"
    ),
    "donaldson-b-ge-4": (
        "symplectic, m, b >= 4: Donaldson submanifolds of M(p,q) keep b1 and "
        "non-formality (analytic, no finite model here)"
    ),
    "b1-equals-1": (
        "symplectic with b1 = 1, m >= 6: six-dimensional example and Donaldson "
        "submanifolds of M_{8,0} x M_{4,1} (analytic, no finite model here)"
    ),
    "simply-connected-8": (
        "symplectic with b1 = 0, m >= 8: simply connected 8-manifold M_{8,0} "
        "and products with S^2 (model not computable here)"
    ),
    "contact-low-dimension": (
        "contact, b >= 2 with m - 2k < 5 after T^2 padding (e.g. m = 3): existence "
        "by other constructions, not modelled here"
    ),
    "contact-small-b": (
        "contact with b1 <= 1: not covered by the circle bundle construction"
    ),
}


@dataclass(frozen=True)
class GeographyQuery:
    m: int
    b: int
    flavor: str = SYMPLECTIC

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("dimension m must be >= 1")
        if self.b < 0:
            raise ValueError("b must be >= 0")
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")


@dataclass(frozen=True, eq=False)
class GeographyVerdict:
    query: GeographyQuery
    status: str
    recipe: Recipe | None = None
    certificate: Certificate | None = None
    citation: str = ""

    @property
    def citation_text(self) -> str:
        return CITATIONS.get(self.citation, self.citation)


def nonformal_manifold_exists(m: int, b: int) -> bool:
    """The three conditions for a non-formal compact oriented m-manifold with b1 = b."""
    return (m >= 3 and b >= 2) or (m >= 5 and b == 1) or (m >= 7 and b == 0)


def natural_flavor(m: int) -> str:
    return SYMPLECTIC if m % 2 == 0 else CONTACT


def symplectic_recipe(m: int, b: int) -> Recipe | None:
    if m % 2:
        return None
    s2 = Recipe("S2")
    if b >= 4 and m >= max(6, 2 * b - 2):
        p = -(-(b - 2) // 2)
        q = b - 2 - p
        return with_power(Recipe("MPQ", (p, q)), s2, (m - 2 * (p + q + 1)) // 2)
    if b in (2, 3) and m >= 4:
        return with_power(Recipe("FGG", (b,)), s2, (m - 4) // 2)
    return None


def contact_recipe(m: int, b: int) -> Recipe | None:
    if m % 2 == 0 or m < 5 or b < 2:
        return None
    b0 = 2 if b % 2 == 0 else 3
    k = (b - b0) // 2
    rest = m - 2 * k
    if rest < 5:
        return None
    n = (rest - 1) // 2
    base = with_power(Recipe("FGG", (b0,)), Recipe("S2"), n - 2)
    return with_power(Recipe("S1_BUNDLE", (base, "omega")), Recipe("T2"), k)


def _certify(recipe: Recipe) -> Certificate:
    model = recipe.build()
    cert = not_s_formal_certificate(model, 1)
    if cert is None:
        raise AssertionError(f"no Massey certificate found for {recipe}")
    return cert


def realize(q: GeographyQuery | tuple, certify: bool = True) -> GeographyVerdict:
    if not isinstance(q, GeographyQuery):
        q = GeographyQuery(*q)
    m, b = q.m, q.b
    if not nonformal_manifold_exists(m, b):
        return GeographyVerdict(q, IMPOSSIBLE, citation="nonformal-existence")
    if q.flavor == SYMPLECTIC and m % 2:
        return GeographyVerdict(q, IMPOSSIBLE, citation="symplectic-parity")
    if q.flavor == CONTACT and m % 2 == 0:
        return GeographyVerdict(q, IMPOSSIBLE, citation="contact-parity")

    if q.flavor == SYMPLECTIC:
        recipe = symplectic_recipe(m, b)
        if recipe is not None:
            cite = "nilmanifold-mpq" if b >= 4 else "fgg"
        elif b >= 4:
            return GeographyVerdict(q, OUT_OF_SCOPE, citation="donaldson-b-ge-4")
        elif b == 1:
            return GeographyVerdict(q, OUT_OF_SCOPE, citation="b1-equals-1")
        else:
            return GeographyVerdict(q, OUT_OF_SCOPE, citation="simply-connected-8")
    else:
        recipe = contact_recipe(m, b)
        if recipe is not None:
            cite = "boothby-wang"
        elif b >= 2:
            return GeographyVerdict(q, OUT_OF_SCOPE, citation="contact-low-dimension")
        else:
            return GeographyVerdict(q, OUT_OF_SCOPE, citation="contact-small-b")
    cert = _certify(recipe) if certify else None
    return GeographyVerdict(q, REALIZED, recipe, cert, cite)


@dataclass(frozen=True)
class Replay:
    b1: int
    dimension: int
    verdict: str

    def matches(self, q: GeographyQuery) -> bool:
        return self.b1 == q.b and self.dimension == q.m and self.verdict == "non_vanishing"


def replay(verdict: GeographyVerdict) -> Replay:
    """Rebuild the model from the recipe and recompute b1, dimension and the certificate."""
    if verdict.status != REALIZED:
        raise ValueError("only realized verdicts can be replayed")
    from .massey import triple_massey

    model = verdict.recipe.build()
    D = model.dga
    cert = verdict.certificate
    classes = [D.cohomology_class(c.representative) for c in cert.classes]
    res = triple_massey(D, *classes)
    return Replay(D.betti_number(1), D.algebra.max_degree(), res.verdict)


def sweep(m_range=range(1, 14), b_range=range(0, 9), flavor=None):
    """Verdicts over a grid; ``flavor=None`` uses the parity-natural flavor."""
    out = []
    for m in m_range:
        for b in b_range:
            out.append(realize(GeographyQuery(m, b, flavor or natural_flavor(m))))
    return out


__all__ = [
    "CITATIONS",
    "CONTACT",
    "GeographyQuery",
    "GeographyVerdict",
    "IMPOSSIBLE",
    "OUT_OF_SCOPE",
    "REALIZED",
    "SYMPLECTIC",
    "contact_recipe",
    "natural_flavor",
    "nonformal_manifold_exists",
    "realize",
    "replay",
    "sweep",
    "symplectic_recipe",
]
