"""Extended rationals, modular inverses and even-length continued fractions.

Every value is an exact Python integer; nothing here ever touches a float.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Union

__all__ = [
    "ExtRational",
    "NoInverse",
    "UndefinedFraction",
    "INF",
    "ZERO",
    "reduce",
    "mod_inverse",
    "cf_expand",
    "cf_eval",
    "parse_fraction",
]


class UndefinedFraction(ValueError):
    """Raised for the meaningless fraction 0/0 (or for inf + inf)."""


_set = object.__setattr__


class NoInverse(ValueError):
    """Raised when an integer has no inverse modulo m."""


class ExtRational:
    """A reduced fraction num/den with den >= 0; 1/0 is the unique infinity.

    Constructing ``ExtRational(26, 8)`` stores ``13/4``; the class is its own
    normalizer so that equality and hashing are structural.  Instances are
    immutable; slots instead of a frozen dataclass keep construction cheap.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1) -> None:
        if type(num) is not int or type(den) is not int:
            num, den = int(num), int(den)
        g = gcd(num, den)
        if g == 0:
            raise UndefinedFraction("0/0 is not an extended rational")
        if den == 0:
            num = 1
        elif g != 1 or den < 0:
            if den < 0:
                g = -g
            num, den = num // g, den // g
        _set(self, "num", num)
        _set(self, "den", den)

    @classmethod
    def _coprime(cls, num: int, den: int) -> ExtRational:
        # caller guarantees gcd(num, den) == 1
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        obj = object.__new__(cls)
        _set(obj, "num", num)
        _set(obj, "den", den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExtRational is immutable")

    def __reduce__(self):
        return ExtRational, (self.num, self.den)

    def __eq__(self, other):
        if isinstance(other, ExtRational):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # structural order on (num, den), enough for deterministic sorting
    def __lt__(self, other):
        if not isinstance(other, ExtRational):
            return NotImplemented
        return (self.num, self.den) < (other.num, other.den)

    def __le__(self, other):
        if not isinstance(other, ExtRational):
            return NotImplemented
        return (self.num, self.den) <= (other.num, other.den)

    def __gt__(self, other):
        if not isinstance(other, ExtRational):
            return NotImplemented
        return (self.num, self.den) > (other.num, other.den)

    def __ge__(self, other):
        if not isinstance(other, ExtRational):
            return NotImplemented
        return (self.num, self.den) >= (other.num, other.den)

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    @property
    def is_integer(self) -> bool:
        return self.den == 1

    def reciprocal(self) -> ExtRational:
        if self.num == 0:
            return INF
        return ExtRational(self.den, self.num)

    def __neg__(self) -> ExtRational:
        if self.is_inf:
            return self
        return ExtRational(-self.num, self.den)

    def __add__(self, other: Union[ExtRational, int]) -> ExtRational:
        other = as_ext(other)
        if self.is_inf and other.is_inf:
            raise UndefinedFraction("inf + inf is undefined")
        if self.is_inf or other.is_inf:
            return INF
        return ExtRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __str__(self) -> str:
        return "inf" if self.is_inf else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"ExtRational({self.num}, {self.den})"


INF = ExtRational(1, 0)
ZERO = ExtRational(0, 1)


def as_ext(x: Union[ExtRational, int]) -> ExtRational:
    if isinstance(x, ExtRational):
        return x
    return ExtRational(int(x), 1)


def reduce(num: int, den: int) -> ExtRational:
    """Reduced representative of num/den; any k/0 with k != 0 becomes inf."""
    return ExtRational(num, den)


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


def parse_fraction(text: str) -> ExtRational:
    """Parse ``"b/a"``, an integer, or ``"inf"``; unreduced input is accepted."""
    if text.strip().lower() in ("inf", "oo", "1/0"):
        return INF
    m = _FRACTION_RE.match(text)
    if not m:
        raise ValueError(f"not a fraction: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return ExtRational(num, den)


def mod_inverse(x: int, m: int) -> int:
    """Return y in [1, m-1] with x*y = 1 (mod m)."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    try:
        return pow(x, -1, m)
    except ValueError:
        raise NoInverse(f"{x} has no inverse modulo {m} (gcd {gcd(x, m)})") from None


def cf_expand(f: ExtRational) -> tuple[int, ...]:
    """Canonical even-length vector C with ``cf_eval(C) == f``.

    The vector is ordered as the circle product consumes it: ``C[-1]`` is the
    integer part and ``C[0]`` the deepest partial quotient.  All entries share
    the sign of ``f``; odd-length expansions are padded by splitting the
    deepest quotient c into (c-1, 1), or (c+1, -1) for negative f.
    """
    num, den = f.num, f.den
    if den == 0 or num == 0:
        raise ValueError("0 and inf are reserved tangles and have no vector form")
    sign = 1 if num > 0 else -1
    num *= sign
    quotients = []
    push = quotients.append
    while den:
        q = num // den
        push(q * sign)
        num, den = den, num - q * den
    if len(quotients) % 2:
        last = quotients.pop()
        quotients += (last - sign, sign)
    quotients.reverse()
    return tuple(quotients)


def cf_eval(entries: Iterable[int]) -> ExtRational:
    """Evaluate ``c_n + 1/(c_{n-1} + ... + 1/c_1)`` starting from inf."""
    # x -> 1/x + c on (num, den) pairs; each step is unimodular, so the
    # pair stays coprime and only the sign needs fixing at the end
    num, den = 1, 0
    for c in entries:
        num, den = den + c * num, num
    return ExtRational._coprime(num, den)
