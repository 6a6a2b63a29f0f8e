"""``formality-lab`` command-line interface."""

from __future__ import annotations

import argparse
import json
import sys

from . import geography
from .certificate import certificate_to_dict, dumps, replay_certificate, result_to_dict, ReplayError
from .dsl import ParseError, ValidationError, parse_model, parse_polynomial
from .massey import a_massey, massey, not_s_formal_certificate
from .zoo import from_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _model(args):
    if not args.model:
        raise UsageError("--model is required")
    try:
        return from_spec(args.model)
    except OSError as exc:
        raise UsageError(f"cannot read model file: {exc}") from None
    except (ParseError, ValidationError):
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _classes(D, text: str | None, count: int | None = None):
    if not text:
        raise UsageError("--classes is required")
    parts = [p.strip() for p in text.split(",")]
    if count is not None and len(parts) != count:
        raise UsageError(f"expected {count} classes, got {len(parts)}")
    out = []
    for p in parts:
        try:
            u = parse_polynomial(p, D.algebra)
        except ParseError as exc:
            raise UsageError(f"bad class {p!r}: {exc}") from None
        if not u or not u.is_homogeneous:
            raise UsageError(f"class {p!r} must be a nonzero homogeneous element")
        if D.d(u):
            raise UsageError(f"{p!r} is not closed")
        out.append(D.cohomology_class(u))
    return out


def _emit(args, data, text: str):
    if args.out == "json":
        print(dumps(data))
    else:
        print(text)


def cmd_describe(args) -> int:
    M = _model(args)
    D = M.dga
    betti = D.betti(M.dimension)
    gens = [
        {"name": g.name, "degree": g.degree, "d": str(D.differential_of(g.name)),
         **({"truncation": g.truncation} if g.truncation else {})}
        for g in D.generators
    ]
    data = {
        "model": M.name,
        "dimension": M.dimension,
        "generators": gens,
        "betti": list(betti),
        "symplectic_form": str(M.symplectic_form) if M.symplectic_form is not None else None,
        "witness": list(M.witness) if M.witness else None,
    }
    lines = [f"model: {M.name}", f"dimension: {M.dimension}"]
    for g in gens:
        trunc = f" (x^{g['truncation']} = 0)" if "truncation" in g else ""
        lines.append(f"  {g['name']} (deg {g['degree']}){trunc}: d = {g['d']}")
    lines.append("betti: " + " ".join(map(str, betti)))
    if data["symplectic_form"]:
        lines.append(f"omega: {data['symplectic_form']}")
    if M.witness:
        lines.append("witness: <" + ", ".join(f"[{n}]" for n in M.witness) + ">")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_betti(args) -> int:
    M = _model(args)
    top = args.degree if args.degree is not None else M.dimension
    betti = M.dga.betti(top)
    _emit(args, {"model": M.name, "betti": list(betti)}, " ".join(map(str, betti)))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    M = _model(args)
    if args.degree is None:
        raise UsageError("--degree is required")
    space = M.dga.cohomology(args.degree)
    reps = [str(c.representative) for c in space]
    data = {"model": M.name, "degree": args.degree, "dimension": len(reps), "basis": reps}
    text = f"H^{args.degree}: dim {len(reps)}"
    if reps:
        text += "\n" + "\n".join(f"  [{r}]" for r in reps)
    _emit(args, data, text)
    return EXIT_OK


def cmd_massey(args) -> int:
    M = _model(args)
    classes = _classes(M.dga, args.classes)
    if len(classes) < 3:
        raise UsageError("a Massey product needs at least three classes")
    res = massey(M.dga, classes, args.budget)
    _emit(args, result_to_dict(res), res.summary())
    return EXIT_OK


def cmd_amassey(args) -> int:
    M = _model(args)
    classes = _classes(M.dga, args.classes, 4)
    try:
        res = a_massey(M.dga, *classes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, result_to_dict(res), res.summary())
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            data = json.load(fh)
        try:
            verdict = replay_certificate(data)
        except ReplayError as exc:
            print(f"replay failed: {exc}")
            return EXIT_FAIL
        _emit(args, {"replay": "ok", "verdict": verdict}, f"replay ok: {verdict.replace('_', '-')}")
        return EXIT_OK
    M = _model(args)
    cert = not_s_formal_certificate(M, args.s)
    if cert is None:
        _emit(args, {"result": "none_found", "s": args.s},
              f"none found for s = {args.s} (this does not prove formality)")
        return EXIT_OK
    data = certificate_to_dict(cert)
    trip = ", ".join(str(c) for c in cert.classes)
    _emit(args, data, f"not {args.s}-formal: <{trip}> {cert.result.summary()}")
    return EXIT_OK


def cmd_realize(args) -> int:
    flavor = args.flavor or geography.natural_flavor(args.m)
    try:
        q = geography.GeographyQuery(args.m, args.b, flavor)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    v = geography.realize(q)
    data = {
        "m": q.m,
        "b": q.b,
        "flavor": q.flavor,
        "status": v.status,
        "recipe": str(v.recipe) if v.recipe else None,
        "citation": v.citation,
        "citation_text": v.citation_text,
    }
    lines = [f"({q.m}, {q.b}, {q.flavor}): {v.status}"]
    if v.recipe is not None:
        lines.append(f"recipe: {v.recipe}")
        trip = ", ".join(str(c) for c in v.certificate.classes)
        lines.append(f"certificate: <{trip}> {v.certificate.result.summary()}")
        data["certificate"] = certificate_to_dict(v.certificate, citations=[v.citation])
    lines.append(f"citation: {v.citation_text}")
    _emit(args, data, "\n".join(lines))
    return EXIT_FAIL if v.status == geography.IMPOSSIBLE else EXIT_OK


def cmd_parse_check(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc}") from None
    D = parse_model(text)
    data = {"ok": True, "generators": len(D.generators)}
    _emit(args, data, f"ok: {len(D.generators)} generators, d^2 = 0")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("text", "json"), default="text")
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", help="mpq:P,Q | fgg:B | torus:K | s2 | file:PATH")

    p = argparse.ArgumentParser(prog="formality-lab", description="Formality obstructions for model DGAs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("describe", parents=[common, model], help="generators, differential, Betti numbers")
    s.set_defaults(func=cmd_describe)
    s = sub.add_parser("betti", parents=[common, model], help="Betti numbers")
    s.add_argument("--degree", type=int, help="highest degree (default: model dimension)")
    s.set_defaults(func=cmd_betti)
    s = sub.add_parser("cohomology", parents=[common, model], help="basis of H^k")
    s.add_argument("--degree", type=int)
    s.set_defaults(func=cmd_cohomology)
    s = sub.add_parser("massey", parents=[common, model], help="triple or higher Massey product")
    s.add_argument("--classes", help="comma-separated closed elements")
    s.add_argument("--budget", type=int, help="search budget for higher products")
    s.set_defaults(func=cmd_massey)
    s = sub.add_parser("amassey", parents=[common, model], help="a-Massey product <a; b1, b2, b3>")
    s.add_argument("--classes", help="a,b1,b2,b3")
    s.set_defaults(func=cmd_amassey)
    s = sub.add_parser("certify", parents=[common, model], help="search for a non-s-formality certificate")
    s.add_argument("--s", type=int, default=1)
    s.add_argument("--replay", metavar="PATH", help="replay a JSON certificate instead")
    s.set_defaults(func=cmd_certify)
    s = sub.add_parser("realize", parents=[common], help="geography realizer for (m, b, flavor)")
    s.add_argument("m", type=int)
    s.add_argument("b", type=int)
    s.add_argument("flavor", nargs="?", choices=geography.FLAVORS)
    s.set_defaults(func=cmd_realize)
    s = sub.add_parser("parse-check", parents=[common], help="parse and validate a model file")
    s.add_argument("path")
    s.set_defaults(func=cmd_parse_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"formality-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ValidationError) as exc:
        print(f"formality-lab: invalid model: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
