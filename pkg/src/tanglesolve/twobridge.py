"""Schubert normal forms of 2-bridge links and their connected sums."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .exact import mod_inverse

__all__ = [
    "TwoBridgeLink",
    "ConnectedSum",
    "schubert_pair",
    "canonical",
    "equivalent",
    "mirror",
    "parse_link",
    "parse_sum",
    "UNKNOT",
    "UNLINK",
]

STRICT = "strict"
MIRROR = "mirror"


def schubert_pair(a: int, b: int) -> tuple[int, int]:
    """Normal form of the pair (a, b) under (a,b) ~ (-a,-b), b ~ b + ka, b ~ b^-1.

    Shared by 2-bridge links and lens spaces, which obey the same relation.
    """
    if a == 0 and b == 0:
        raise ValueError("(0, 0) is not a valid pair")
    if gcd(a, b) != 1:
        raise ValueError(f"parameters ({a}, {b}) are not coprime")
    if a < 0:
        a, b = -a, -b
    if a == 0:
        return 0, 1
    if a == 1:
        return 1, 1
    r = b % a
    return a, min(r, mod_inverse(r, a))


@dataclass(frozen=True, order=True)
class TwoBridgeLink:
    """b(alpha, beta) in Schubert normal form; build through ``canonical``."""

    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if (self.alpha, self.beta) != schubert_pair(self.alpha, self.beta):
            raise ValueError(f"b({self.alpha},{self.beta}) is not in normal form; use canonical()")

    @property
    def is_unknot(self) -> bool:
        return self.alpha == 1

    def __str__(self) -> str:
        return f"b({self.alpha},{self.beta})"


UNKNOT = TwoBridgeLink(1, 1)
UNLINK = TwoBridgeLink(0, 1)


def canonical(a: int, b: int) -> TwoBridgeLink:
    return TwoBridgeLink(*schubert_pair(a, b))


def mirror(x: TwoBridgeLink) -> TwoBridgeLink:
    return canonical(x.alpha, -x.beta)


def equivalent(x: TwoBridgeLink, y: TwoBridgeLink, mode: str = STRICT) -> bool:
    """Schubert's test; ``mirror`` mode also accepts the mirror image."""
    if mode not in (STRICT, MIRROR):
        raise ValueError(f"unknown mode {mode!r}")
    if x == y:
        return True
    return mode == MIRROR and mirror(x) == y


@dataclass(frozen=True)
class ConnectedSum:
    """Multiset of prime 2-bridge summands; unknot summands are dropped."""

    summands: tuple[TwoBridgeLink, ...]

    def __init__(self, summands: Iterable[TwoBridgeLink]):
        kept = tuple(sorted(s for s in summands if not s.is_unknot))
        object.__setattr__(self, "summands", kept)

    def __str__(self) -> str:
        if not self.summands:
            return str(UNKNOT)
        return "#".join(str(s) for s in self.summands)


def sums_equivalent(x: Iterable[TwoBridgeLink], y: Iterable[TwoBridgeLink], mode: str = STRICT) -> bool:
    """Summand-wise multiset match under ``equivalent``."""
    left = list(ConnectedSum(x).summands)
    right = list(ConnectedSum(y).summands)
    if len(left) != len(right):
        return False
    for s in left:
        for i, t in enumerate(right):
            if equivalent(s, t, mode):
                del right[i]
                break
        else:
            return False
    return True


_LINK_RE = re.compile(r"^\s*(?:b\s*\(\s*)?([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)?\s*$")


def parse_link(text: str) -> TwoBridgeLink:
    """Accept ``"b(13,31)"`` or ``"13,31"``; the result is canonical."""
    m = _LINK_RE.match(text)
    if not m:
        raise ValueError(f"not a 2-bridge link: {text!r}")
    return canonical(int(m.group(1)), int(m.group(2)))


def parse_sum(text: str) -> ConnectedSum:
    return ConnectedSum(parse_link(part) for part in text.split("#"))


def dbc_link(x: TwoBridgeLink):
    """Double branched cover: b(p,q) lifts to L(p,q)."""
    from .seifert import LensSpace

    return LensSpace(x.alpha, x.beta)


def dbc_sum(s: ConnectedSum):
    return [dbc_link(x) for x in s.summands]
