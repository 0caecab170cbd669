"""Tangle expressions, the fraction calculus and double branched covers.

Trees are immutable dataclasses.  ``fraction_of`` evaluates those built only
from rational pieces; ``dbc_of_tangle`` turns Montesinos shapes into Seifert
data.  The text grammar round-trips through ``parse_tangle``/``print_tangle``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .exact import INF, ExtRational, as_ext, parse_fraction
from .seifert import NONORIENTABLE, ORIENTABLE, GraphManifold, SeifertData
from .twobridge import ConnectedSum, TwoBridgeLink, canonical

__all__ = [
    "Rational",
    "Sum",
    "Mult",
    "Circle",
    "Ring",
    "Hole",
    "MontesinosPair",
    "GluedCable",
    "NotRational",
    "Unsupported",
    "TangleSyntaxError",
    "NUMERATOR",
    "DENOMINATOR",
    "fraction_of",
    "circle_product_fraction",
    "closure",
    "closure_of_sum",
    "denominator_of_sum",
    "dbc_of_tangle",
    "parse_tangle",
    "print_tangle",
]

NUMERATOR = "N"
DENOMINATOR = "D"


@dataclass(frozen=True)
class Rational:
    f: ExtRational

    def __init__(self, f):
        object.__setattr__(self, "f", as_ext(f))


@dataclass(frozen=True)
class Sum:
    left: "TangleExpr"
    right: "TangleExpr"


@dataclass(frozen=True)
class Mult:
    left: "TangleExpr"
    right: "TangleExpr"


@dataclass(frozen=True)
class Circle:
    inner: "TangleExpr"
    C: tuple[int, ...]

    def __init__(self, inner, C):
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "C", tuple(int(c) for c in C))


@dataclass(frozen=True)
class Ring:
    pass


@dataclass(frozen=True)
class Hole:
    pass


@dataclass(frozen=True)
class MontesinosPair:
    """Montesinos pair over a disk (base 0) or Mobius band (base -1).

    ``holes`` counts every boundary sphere, the outer one included, so it
    equals one plus the number of ``Hole`` entries.
    """

    base: int
    holes: int
    entries: tuple[Union[ExtRational, Hole], ...]

    def __init__(self, base, holes, entries):
        entries = tuple(e if isinstance(e, Hole) else as_ext(e) for e in entries)
        if base not in (ORIENTABLE, NONORIENTABLE):
            raise ValueError(f"base must be 0 or -1, got {base}")
        if holes != 1 + sum(isinstance(e, Hole) for e in entries):
            raise ValueError(f"hole count {holes} does not match entries")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "holes", holes)
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class GluedCable:
    """Inner one-hole piece Q plugged into the cable pattern of index p."""

    inner: "TangleExpr"
    p: int
    sign: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"cable index must exceed 1, got {self.p}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if _count_holes(self.inner) != 1:
            raise ValueError("inner piece must contain exactly one hole")


TangleExpr = Union[Rational, Sum, Mult, Circle, Ring, Hole, MontesinosPair, GluedCable]


@dataclass(frozen=True)
class NotRational:
    reason: str


@dataclass(frozen=True)
class Unsupported:
    reason: str


def _count_holes(t) -> int:
    if isinstance(t, Hole):
        return 1
    if isinstance(t, (Sum, Mult)):
        return _count_holes(t.left) + _count_holes(t.right)
    if isinstance(t, Circle):
        return _count_holes(t.inner)
    if isinstance(t, MontesinosPair):
        return t.holes - 1
    if isinstance(t, GluedCable):
        return 0
    return 0


# ---------------------------------------------------------------- fractions


def circle_product_fraction(f: ExtRational, C) -> ExtRational:
    """Fraction of ``f o C``: odd positions twist vertically, even ones horizontally."""
    f = as_ext(f)
    for i, c in enumerate(C):
        if i % 2 == 0:
            f = (f.reciprocal() + c).reciprocal()
        else:
            f = f + c
    return f


def fraction_of(t) -> Union[ExtRational, NotRational]:
    if isinstance(t, Rational):
        return t.f
    if isinstance(t, Circle):
        inner = fraction_of(t.inner)
        if isinstance(inner, NotRational):
            return inner
        return circle_product_fraction(inner, t.C)
    if isinstance(t, Sum):
        a, b = fraction_of(t.left), fraction_of(t.right)
        if isinstance(a, NotRational) or isinstance(b, NotRational):
            return NotRational("sum has a non-rational summand")
        # adding horizontal twists keeps a tangle rational
        if (a.is_integer and not b.is_inf) or (b.is_integer and not a.is_inf):
            return a + b
        return NotRational(f"{a} + {b} is a Montesinos tangle")
    if isinstance(t, Mult):
        a, b = fraction_of(t.left), fraction_of(t.right)
        if isinstance(a, NotRational) or isinstance(b, NotRational):
            return NotRational("product has a non-rational factor")
        ra, rb = a.reciprocal(), b.reciprocal()
        if (ra.is_integer and not rb.is_inf) or (rb.is_integer and not ra.is_inf):
            return (ra + rb).reciprocal()
        return NotRational(f"{a} * {b} is not rational")
    return NotRational(f"{type(t).__name__} is not a rational tangle")


def closure(f: ExtRational, kind: str = NUMERATOR) -> TwoBridgeLink:
    """N(beta/alpha) = b(beta, -alpha) and D(beta/alpha) = b(alpha, beta)."""
    f = as_ext(f)
    alpha, beta = f.den, f.num
    if kind == NUMERATOR:
        return canonical(beta, -alpha)
    if kind == DENOMINATOR:
        return canonical(alpha, beta)
    raise ValueError(f"closure kind must be N or D, got {kind!r}")


def closure_of_sum(f1: ExtRational, f2: ExtRational, k: int = 0) -> TwoBridgeLink:
    """N(f1 + f2) for rational tangles.

    ``k`` shifts the auxiliary solution (a2', b2') of b2*a2' - a2*b2' = 1 by
    k*(a2, b2); the result does not depend on it.
    """
    from .seifert import _bezout_complement

    f1, f2 = as_ext(f1), as_ext(f2)
    a1, b1 = f1.den, f1.num
    a2, b2 = f2.den, f2.num
    # b2*a2' - a2*b2' = 1, i.e. _bezout_complement(b2, a2) with (x, y) = (b2', a2')
    x, y = _bezout_complement(b2, a2)
    a2p, b2p = y + k * a2, x + k * b2
    return canonical(a1 * b2 + a2 * b1, a1 * b2p + a2p * b1)


def denominator_of_sum(f1: ExtRational, f2: ExtRational) -> ConnectedSum:
    """D(f1 + f2) = D(f1) # D(f2)."""
    return ConnectedSum([closure(f1, DENOMINATOR), closure(f2, DENOMINATOR)])


# ---------------------------------------------------------------- covers


def _flatten_sum(t) -> list:
    if isinstance(t, Sum):
        return _flatten_sum(t.left) + _flatten_sum(t.right)
    return [t]


def _fiber(f: ExtRational) -> tuple[int, int]:
    return f.den, f.num


def _montesinos_cover(terms):
    base, holes, fibers = ORIENTABLE, 1, []
    for term in terms:
        if isinstance(term, Ring):
            if base == NONORIENTABLE:
                return Unsupported("more than one ring summand")
            base = NONORIENTABLE
        elif isinstance(term, Hole):
            holes += 1
        else:
            f = fraction_of(term)
            if isinstance(f, NotRational):
                return Unsupported(f"summand {print_tangle(term)} is not rational")
            fibers.append(_fiber(f))
    return SeifertData(base, holes, fibers)


def dbc_of_tangle(t):
    """Double branched cover as SeifertData, GraphManifold or Unsupported.

    A rational tangle beta/alpha lifts to the solid torus M(0,1;(alpha,beta)),
    whose meridian is the lift of the tangle's own disk.
    """
    if isinstance(t, MontesinosPair):
        fibers = [_fiber(e) for e in t.entries if not isinstance(e, Hole)]
        return SeifertData(t.base, t.holes, fibers)
    if isinstance(t, GluedCable):
        inner = _montesinos_cover(_flatten_sum(t.inner))
        if isinstance(inner, Unsupported):
            return inner
        if inner.base != ORIENTABLE:
            return Unsupported("cable inner piece must be over a disk")
        closed_end = SeifertData(ORIENTABLE, 1, inner.fibers)
        return GraphManifold([closed_end, SeifertData(ORIENTABLE, 2, [(t.p, t.sign)])])
    if isinstance(t, (Rational, Sum, Ring, Circle)):
        f = fraction_of(t)
        if not isinstance(f, NotRational):
            return SeifertData(ORIENTABLE, 1, [_fiber(f)])
        if isinstance(t, Circle):
            return Unsupported("circle product of a non-rational tangle")
        return _montesinos_cover(_flatten_sum(t))
    if isinstance(t, Hole):
        return Unsupported("a bare hole has no cover")
    return Unsupported(f"general algebraic tangle {type(t).__name__}")


# ---------------------------------------------------------------- text form


class TangleSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<frac>\d+(?:/\d+)?)|(?P<word>inf|ring|circ|mp|glue|p|s)|(?P<hole>\[\])|(?P<op>[-+*();,=]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise TangleSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None, kind=None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise TangleSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def sign(self) -> int:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            return -1 if tok[1] == "-" else 1
        return 1

    def integer(self) -> int:
        sign = self.sign()
        kind, value, pos = self.take(kind="frac")
        if "/" in value:
            raise TangleSyntaxError(f"expected an integer, got {value!r}", pos)
        return sign * int(value)

    def fraction(self) -> ExtRational:
        start = self.peek()[2]
        sign = self.sign()
        kind, value, pos = self.peek()
        if value == "inf":
            self.i += 1
            return INF
        self.take(kind="frac")
        try:
            f = parse_fraction(value)
        except ValueError as exc:
            raise TangleSyntaxError(str(exc), start) from None
        return -f if sign < 0 else f

    def expr(self):
        node = self.term()
        while self.peek()[1] == "+":
            self.take("+")
            node = Sum(node, self.term())
        return node

    def term(self):
        node = self.atom()
        while self.peek()[1] == "*":
            self.take("*")
            node = Mult(node, self.atom())
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "frac" or value == "-":
            return Rational(self.fraction())
        if kind == "hole":
            self.i += 1
            return Hole()
        if value == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if value == "inf":
            return Rational(self.fraction())
        if value == "ring":
            self.i += 1
            return Ring()
        if value == "circ":
            self.i += 1
            self.take("(")
            inner = self.expr()
            self.take(";")
            C = [self.integer()]
            while self.peek()[1] == ",":
                self.take(",")
                C.append(self.integer())
            self.take(")")
            return Circle(inner, C)
        if value == "mp":
            self.i += 1
            self.take("(")
            base = self.integer()
            self.take(",")
            holes = self.integer()
            self.take(";")
            entries = []
            if self.peek()[1] != ")":
                entries.append(self.entry())
                while self.peek()[1] == ",":
                    self.take(",")
                    entries.append(self.entry())
            self.take(")")
            try:
                return MontesinosPair(base, holes, entries)
            except ValueError as exc:
                raise TangleSyntaxError(str(exc), pos) from None
        if value == "glue":
            self.i += 1
            self.take("(")
            inner = self.expr()
            self.take(";")
            self.take("p")
            self.take("=")
            p = self.integer()
            self.take(",")
            self.take("s")
            self.take("=")
            s = self.integer()
            self.take(")")
            try:
                return GluedCable(inner, p, s)
            except ValueError as exc:
                raise TangleSyntaxError(str(exc), pos) from None
        raise TangleSyntaxError(f"unexpected {value or 'end of input'!r}", pos)

    def entry(self):
        if self.peek()[0] == "hole":
            self.i += 1
            return Hole()
        return self.fraction()


def parse_tangle(text: str):
    parser = _Parser(text)
    node = parser.expr()
    parser.take(kind="end")
    return node


def _fmt_fraction(f: ExtRational) -> str:
    if f.is_inf:
        return "inf"
    return str(f.num) if f.is_integer else str(f)


def print_tangle(t) -> str:
    if isinstance(t, Rational):
        return _fmt_fraction(t.f)
    if isinstance(t, Hole):
        return "[]"
    if isinstance(t, Ring):
        return "ring"
    if isinstance(t, Sum):
        right = print_tangle(t.right)
        if isinstance(t.right, Sum):
            right = f"({right})"
        return f"{print_tangle(t.left)} + {right}"
    if isinstance(t, Mult):
        left, right = print_tangle(t.left), print_tangle(t.right)
        if isinstance(t.left, Sum):
            left = f"({left})"
        if isinstance(t.right, (Sum, Mult)):
            right = f"({right})"
        return f"{left} * {right}"
    if isinstance(t, Circle):
        return f"circ({print_tangle(t.inner)}; {','.join(str(c) for c in t.C)})"
    if isinstance(t, MontesinosPair):
        body = ",".join("[]" if isinstance(e, Hole) else _fmt_fraction(e) for e in t.entries)
        return f"mp({t.base},{t.holes}; {body})"
    if isinstance(t, GluedCable):
        return f"glue({print_tangle(t.inner)}; p={t.p}, s={t.sign:+d})"
    raise TypeError(f"not a tangle expression: {t!r}")
