"""JSON certificates for non-vanishing Massey products, and their replay.

A certificate carries the full model text, so replay does not depend on
the recipe machinery: it re-parses the model, checks every primitive,
rebuilds the value and the indeterminacy, and redoes the membership test.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .dga import DGA
from .dsl import parse_model, parse_polynomial, serialize
from .linalg import Echelon
from .massey import NON_VANISHING, VANISHES, Certificate, MasseyResult

SCHEMA = "cert/1"


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _elem(u) -> str:
    return str(u) if u is not None else "0"


def result_to_dict(result: MasseyResult) -> dict:
    out = {
        "kind": result.kind,
        "degree": result.degree,
        "verdict": result.verdict,
        "value": _elem(result.value_representative) if result.value_representative is not None else None,
        "indeterminacy": [_elem(u) for u in result.indeterminacy],
    }
    if result.note:
        out["note"] = result.note
    xi = result.witness.get("xi")
    if isinstance(xi, dict):
        out["xi"] = {f"{i},{j}": _elem(x) for (i, j), x in sorted(xi.items())}
    elif xi is not None:
        out["xi"] = [_elem(x) for x in xi]
    return out


def certificate_to_dict(cert: Certificate, claim: str | None = None, citations=()) -> dict:
    res = cert.result
    xi = res.witness["xi"]
    return {
        "schema": SCHEMA,
        "claim": claim or f"not {cert.s}-formal",
        "s": cert.s,
        "recipe": cert.recipe.to_dict() if cert.recipe is not None else None,
        "recipe_text": str(cert.recipe) if cert.recipe is not None else None,
        "model_dsl": serialize(cert.dga),
        "degrees": list(cert.degrees),
        "classes": [
            {"rep": _elem(c.representative), "coordinates": [_frac(x) for x in c.coordinates]}
            for c in cert.classes
        ],
        "xi": {"1,2": _elem(xi[(1, 2)]), "2,3": _elem(xi[(2, 3)])},
        "value": _elem(res.value_representative),
        "indeterminacy": [_elem(u) for u in res.indeterminacy],
        "verdict": res.verdict,
        "citations": list(citations),
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


class ReplayError(ValueError):
    pass


def _check(cond: bool, msg: str):
    if not cond:
        raise ReplayError(msg)


def replay_certificate(data: dict | str) -> str:
    """Recompute a certificate from its own data and return the verdict.

    Raises :class:`ReplayError` if any stored piece is inconsistent.
    """
    if isinstance(data, str):
        data = json.loads(data)
    _check(data.get("schema") == SCHEMA, f"unsupported schema {data.get('schema')!r}")
    D = parse_model(data["model_dsl"])
    alg = D.algebra
    reps = [parse_polynomial(c["rep"], alg) for c in data["classes"]]
    _check(len(reps) == 3, "expected a triple product")
    degrees = []
    for rep, c in zip(reps, data["classes"]):
        _check(rep.is_homogeneous and bool(rep), f"class {c['rep']} is not homogeneous")
        _check(not D.d(rep), f"representative {c['rep']} is not closed")
        coords = D.cohomology(rep.degree).coordinates(rep)
        _check([_frac(x) for x in coords] == c["coordinates"], f"coordinates of {c['rep']} differ")
        degrees.append(rep.degree)
    _check(degrees == data["degrees"], "degrees differ")
    p1, p2, p3 = degrees
    bound = data["s"] + 1
    _check(p1 + p2 <= bound and p2 + p3 <= bound, "degrees violate the s-formality bounds")
    a1, a2, a3 = reps
    xi12 = parse_polynomial(data["xi"]["1,2"], alg)
    xi23 = parse_polynomial(data["xi"]["2,3"], alg)
    _check(D.d(xi12) == a1 * a2, "d(xi_12) != a1*a2")
    _check(D.d(xi23) == a2 * a3, "d(xi_23) != a2*a3")
    sign = 1 if (p1 + 1) % 2 == 0 else -1
    value = a1 * xi23 + (xi12 * a3).scale(sign)
    _check(value == parse_polynomial(data["value"], alg), "stored value differs from recomputation")
    deg = p1 + p2 + p3 - 1
    _check(not D.d(value), "value is not closed")
    space = D.cohomology(deg)
    # the stored indeterminacy must span exactly a1*H + H*a3
    spanning = [a1 * h.representative for h in D.cohomology(p2 + p3 - 1)]
    spanning += [h.representative * a3 for h in D.cohomology(p1 + p2 - 1)]
    stored = [parse_polynomial(u, alg) for u in data["indeterminacy"]]
    _check(_same_class_span(D, deg, stored, spanning), "indeterminacy differs")
    vanishes = space.contains_in_span(value, stored)
    verdict = VANISHES if vanishes else NON_VANISHING
    _check(verdict == data["verdict"], f"verdict {verdict} differs from stored {data['verdict']}")
    return verdict


def _same_class_span(D: DGA, k: int, first, second) -> bool:
    space = D.cohomology(k)

    def rank(elements):
        e = Echelon()
        for u in elements:
            e.insert({i: c for i, c in enumerate(space.coordinates(u)) if c})
        return e.rank

    r1, r2 = rank(first), rank(second)
    return r1 == r2 == rank(list(first) + list(second))
