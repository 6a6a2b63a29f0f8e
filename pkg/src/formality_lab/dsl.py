"""Text format for user-supplied models.

::

    # Heisenberg nilmanifold
    gen x 1
    gen y 1
    gen z 1
    d z = -x*y

Polynomials are ``term (+|- term)*`` with ``term = [rational *] name[^int] (* name[^int])*``.
A term may also be a bare rational.  Products are evaluated left to right,
so ``y*x`` means ``-x*y`` for odd ``x, y``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, Generator, GradedAlgebra
from .dga import DGA


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class ValidationError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        names = ", ".join(v.generator for v in violations)
        super().__init__(f"d^2 != 0 at {names}: " + "; ".join(str(v) for v in violations))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def _tokens(text: str, line: int, offset: int):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), offset + start + 1))
        pos = m.end()
    return out


def parse_polynomial(text: str, algebra: GradedAlgebra, line: int = 0, offset: int = 0) -> Element:
    toks = _tokens(text, line, offset)
    if not toks:
        raise ParseError("empty polynomial", line, offset + 1)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None, offset + len(text) + 1)

    def expect(kind):
        nonlocal pos
        tok = peek()
        if tok[0] != kind:
            found = tok[1] if tok[1] is not None else "end of input"
            raise ParseError(f"expected {kind}, found {found!r}", line, tok[2])
        pos += 1
        return tok

    def factor() -> Element:
        nonlocal pos
        kind, val, col = peek()
        if kind == "num":
            pos += 1
            return algebra.scalar(Fraction(val))
        if kind == "name":
            pos += 1
            if val not in algebra:
                raise ParseError(f"unknown generator {val!r}", line, col)
            base = algebra.gen(val)
            if peek()[1] == "^":
                pos += 1
                _, exp, _ = expect("num")
                if "/" in exp:
                    raise ParseError("exponent must be an integer", line, col)
                return base ** int(exp)
            return base
        found = val if val is not None else "end of input"
        raise ParseError(f"expected a number or generator, found {found!r}", line, col)

    def term() -> Element:
        nonlocal pos
        out = factor()
        while peek()[1] == "*":
            pos += 1
            out = out * factor()
        return out

    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if peek()[1] == "-" else 1
        pos += 1
    total = term().scale(sign)
    while pos < len(toks):
        kind, val, col = peek()
        if kind != "op" or val not in "+-":
            raise ParseError(f"expected '+' or '-', found {val!r}", line, col)
        pos += 1
        t = term()
        total = total + t if val == "+" else total - t
    return total


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0]


def parse_model(text: str, validate: bool = True) -> DGA:
    """Parse DSL text into a DGA; raises :class:`ParseError` or :class:`ValidationError`."""
    gens: list[Generator] = []
    pending: list[tuple[int, int, str, str]] = []
    seen_d: set[str] = set()
    top = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        stripped = body.lstrip()
        indent = len(body) - len(stripped)
        head = stripped.split(None, 1)[0]
        if head == "gen":
            parts = stripped.split()
            if len(parts) not in (3, 5) or (len(parts) == 5 and parts[3] != "trunc"):
                raise ParseError("expected 'gen <name> <degree> [trunc <k>]'", lineno, indent + 1)
            if pending:
                raise ParseError("generators must be declared before differentials", lineno, indent + 1)
            try:
                degree = int(parts[2])
                trunc = int(parts[4]) if len(parts) == 5 else None
                gens.append(Generator(parts[1], degree, trunc))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, indent + 1) from None
            if parts[1] in {g.name for g in gens[:-1]}:
                raise ParseError(f"duplicate generator {parts[1]!r}", lineno, indent + 1)
        elif head == "d":
            rest = stripped[1:]
            name, eq, poly = rest.partition("=")
            if not eq:
                raise ParseError("expected 'd <name> = <polynomial>'", lineno, indent + 1)
            name = name.strip()
            if name in seen_d:
                raise ParseError(f"differential of {name!r} given twice", lineno, indent + 1)
            seen_d.add(name)
            pending.append((lineno, indent + stripped.index("=") + 1, name, poly))
        elif head == "dim":
            parts = stripped.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected 'dim <integer>'", lineno, indent + 1)
            top = int(parts[1])
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, indent + 1)

    alg = GradedAlgebra(gens)
    diff = {}
    for lineno, offset, name, poly in pending:
        if name not in alg:
            raise ParseError(f"unknown generator {name!r}", lineno, 3)
        value = parse_polynomial(poly, alg, lineno, offset)
        g = alg.generators[alg.index(name)]
        if value and (not value.is_homogeneous or value.degree != g.degree + 1):
            lead = len(poly) - len(poly.lstrip())
            raise ParseError(
                f"d({name}) must have degree {g.degree + 1}, got {value}", lineno, offset + lead + 1
            )
        diff[name] = value
    dga = DGA(alg, diff, top_degree=top)
    if validate:
        bad = dga.validate()
        if bad:
            raise ValidationError(bad)
    return dga


def serialize(dga: DGA) -> str:
    lines = []
    for g in dga.generators:
        trunc = f" trunc {g.truncation}" if g.truncation is not None else ""
        lines.append(f"gen {g.name} {g.degree}{trunc}")
    if dga.top_degree is not None:
        lines.append(f"dim {dga.top_degree}")
    for g in dga.generators:
        dg = dga.differential_of(g.name)
        if dg:
            lines.append(f"d {g.name} = {dg}")
    return "\n".join(lines) + "\n"
