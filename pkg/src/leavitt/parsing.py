"""Text forms: algebra expressions, module elements and CLI descriptors.

Expression grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' int] ["'"]
    atom   := name | int ['/' int] | '(' expr ')'

A postfix ``'`` is the ghost/adjoint, so ``e1'*e1`` is ``e1* e1``.  In module
element mode the name ``z`` denotes the generator and must close its term,
as in ``2*z + e1*z``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, LeavittPathAlgebra, format_element
from .errors import GraphError, LeavittError, ParseError
from .graph import Path
from .morphisms import GenMap
from .scalars import IrrPoly, parse_poly

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[-+*/^'()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


_GEN = object()  # marker for the module generator z


class _Parser:
    def __init__(self, text: str, algebra: LeavittPathAlgebra, module=None):
        self.tokens = tokenize(text)
        self.i = 0
        self.alg = algebra
        self.module = module
        if not text.strip():
            raise ParseError("empty expression", 0)

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self, value=None, kind=None):
        t = self.tok
        if (value is not None and t[1] != value) or (kind is not None and t[0] != kind):
            want = value or kind
            got = t[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", t[2])
        self.i += 1
        return t

    def at(self, value) -> bool:
        return self.tok[0] == "op" and self.tok[1] == value

    def parse(self):
        value = self.expr()
        if self.tok[0] != "end":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return value

    def expr(self):
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term() * sign
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self):
        start = self.tok[2]
        value = self.factor()
        if value is _GEN:
            return self._gen_term(self.alg.one(), start)
        while self.at("*"):
            self.take("*")
            f = self.factor()
            if f is _GEN:
                return self._gen_term(value, start)
            value = value * f
        if self.module is not None:
            raise ParseError("module terms must end with z", start)
        return value

    def _gen_term(self, coeff, start):
        if self.module is None:
            raise ParseError("z is only allowed in module elements", start)
        if self.at("*") or self.at("^") or self.at("'"):
            raise ParseError("z must be the last factor of its term", self.tok[2])
        return self.module(coeff)

    def factor(self):
        t = self.tok
        if t[0] == "name":
            self.take()
            name = t[1]
            if self.module is not None and name == "z" and not (
                    self.alg.graph.is_vertex(name) or self.alg.graph.is_edge(name)):
                return _GEN
            if self.alg.graph.is_vertex(name):
                base, is_vertex = self.alg.vertex(name), True
            elif self.alg.graph.is_edge(name):
                base, is_vertex = self.alg.edge(name), False
            else:
                raise ParseError(f"unknown name {name!r}", t[2])
            powered = self._power(base)
            if self.at("'"):
                if is_vertex and powered is not base:
                    raise ParseError("ghost of a vertex power is ambiguous", self.tok[2])
                self.take("'")
                powered = powered.star()
            return powered
        if t[0] == "num":
            self.take()
            num = int(t[1])
            den = 1
            if self.at("/"):
                self.take("/")
                d = self.take(kind="num")
                den = int(d[1])
                if den == 0:
                    raise ParseError("zero denominator", d[2])
            try:
                value = self.alg.scalar(Fraction(num, den))
            except LeavittError as exc:
                raise ParseError(str(exc), t[2]) from None
            value = self._power(value)
            if self.at("'"):
                self.take("'")
            return value
        if self.at("("):
            self.take("(")
            saved, self.module = self.module, None
            try:
                value = self.expr()
            finally:
                self.module = saved
            self.take(")")
            value = self._power(value)
            if self.at("'"):
                self.take("'")
                value = value.star()
            return value
        got = t[1] or "end of input"
        raise ParseError(f"expected a name, number or '(', found {got!r}", t[2])

    def _power(self, base):
        if not self.at("^"):
            return base
        self.take("^")
        k = int(self.take(kind="num")[1])
        return base ** k


def parse_element(text: str, algebra: LeavittPathAlgebra) -> Element:
    """Parse and normalize an algebra expression."""
    return _Parser(text, algebra).parse()


def parse_module_element(text: str, spec):
    """Parse ``2*z + e1*z``-style text into an element of S^f_c."""
    from .modules import sfc_act

    z = spec.generator()
    return _Parser(text, spec.algebra, module=lambda r: sfc_act(r, z, spec)).parse()


def parse_path(text: str, algebra: LeavittPathAlgebra) -> Path:
    """A path written as a product of edges, e.g. ``e1*e2``, or a vertex name."""
    x = parse_element(text, algebra)
    if len(x.terms) != 1:
        raise ParseError(f"{text!r} is not a single path")
    (mono, coeff), = x.terms.items()
    if coeff != 1 or mono.ghost:
        raise ParseError(f"{text!r} is not a path")
    if not mono.real:
        return algebra.graph.path((), mono.vertex)
    return algebra.graph.path(mono.real)


def parse_descriptor(text: str, prefix: str) -> dict[str, str]:
    """Split ``prefix:k=v,k=v`` into a dict."""
    head, sep, body = text.partition(":")
    if head != prefix or not sep:
        raise ParseError(f"expected a {prefix}:... descriptor, got {text!r}")
    out = {}
    for part in body.split(","):
        key, eq, value = part.partition("=")
        if not eq or not key.strip():
            raise ParseError(f"malformed descriptor field {part!r}")
        out[key.strip()] = value.strip()
    return out


def parse_sfc_descriptor(text: str, algebra: LeavittPathAlgebra, assume_irreducible=False):
    """``sfc:c=<path>,f=<poly>[,twist=<expr>]`` -> (SfcSpec, twist element or None)."""
    from .modules import SfcSpec

    fields = parse_descriptor(text, "sfc")
    if "c" not in fields or "f" not in fields:
        raise ParseError("module descriptor needs c= and f=")
    unknown = set(fields) - {"c", "f", "twist"}
    if unknown:
        raise ParseError(f"unknown descriptor fields {sorted(unknown)}")
    c = parse_path(fields["c"], algebra)
    f = IrrPoly.make(parse_poly(fields["f"], algebra.field), assume_irreducible)
    spec = SfcSpec(algebra, c, f)
    twist = parse_element(fields["twist"], algebra) if "twist" in fields else None
    return spec, twist


def parse_genmap(text: str, algebra: LeavittPathAlgebra) -> GenMap:
    """Read ``vertex|edge|ghost <name> = <expr>`` lines; omitted generators are fixed."""
    images = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(vertex|edge|ghost)\s+([A-Za-z][A-Za-z0-9_]*)\s*=\s*(.+)", line)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
        kind, name, expr = m.groups()
        ok = algebra.graph.is_vertex(name) if kind == "vertex" else algebra.graph.is_edge(name)
        if not ok:
            raise GraphError(f"line {lineno}: unknown {kind} {name!r}")
        if (kind, name) in images:
            raise ParseError(f"line {lineno}: duplicate image for {kind} {name}")
        images[(kind, name)] = parse_element(expr, algebra)
    return GenMap.from_images(algebra, images, name="file")


def format_genmap(m: GenMap) -> str:
    lines = []
    for (kind, name), x in m.images().items():
        lines.append(f"{kind} {name} = {format_element(x)}")
    return "\n".join(lines)
