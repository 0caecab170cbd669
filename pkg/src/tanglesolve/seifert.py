"""Seifert fiber data, lens-space recognition and torus-knot exteriors.

Notation follows the usual M(g, k; (a1,b1), ...): ``g`` is 0 for a disk/sphere
base and -1 for a Mobius band/projective plane base, ``k`` counts boundary
tori and each pair is an (unnormalized) fiber coefficient.  A pair (0, 1) is a
generalized fiber whose filling splits the manifold.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Union

from .exact import mod_inverse
from .twobridge import schubert_pair

__all__ = [
    "ORIENTABLE",
    "NONORIENTABLE",
    "SeifertData",
    "LensSpace",
    "LensSum",
    "NotLens",
    "GraphManifold",
    "normalize_fiber",
    "normalize_closed",
    "lens_of_two_fiber",
    "lens_of_mobius",
    "refiber_mobius_piece",
    "torus_knot_exterior",
    "torus_knot_de",
    "h1_order",
    "lens_equiv",
    "parse_seifert",
    "parse_lens",
]

ORIENTABLE = 0
NONORIENTABLE = -1

Fiber = tuple[int, int]


def normalize_fiber(alpha: int, beta: int) -> Fiber:
    """Identify (a, b) with (-a, -b); generalized fibers become (0, 1)."""
    if gcd(alpha, beta) != 1:
        raise ValueError(f"fiber ({alpha},{beta}) is not coprime")
    if alpha < 0 or (alpha == 0 and beta < 0):
        return -alpha, -beta
    return alpha, beta


@dataclass(frozen=True)
class SeifertData:
    base: int
    boundary: int
    fibers: tuple[Fiber, ...]

    def __init__(self, base: int, boundary: int, fibers: Iterable[Fiber] = ()):
        if base not in (ORIENTABLE, NONORIENTABLE):
            raise ValueError(f"base must be 0 or -1, got {base}")
        if boundary < 0:
            raise ValueError("boundary count must be non-negative")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "fibers", tuple(normalize_fiber(a, b) for a, b in fibers))

    def with_fiber(self, alpha: int, beta: int) -> SeifertData:
        """Fill one boundary torus by adding the fiber (alpha, beta)."""
        if self.boundary == 0:
            raise ValueError("no boundary torus left to fill")
        return SeifertData(self.base, self.boundary - 1, self.fibers + ((alpha, beta),))

    def __str__(self) -> str:
        body = ",".join(f"({a},{b})" for a, b in self.fibers)
        return f"M({self.base},{self.boundary};{body})"


@dataclass(frozen=True, order=True)
class LensSpace:
    """L(p, q) normalized like a Schubert pair: p >= 0, q = min(q, q^-1) mod p.

    Because the normal form absorbs exactly the orientation-preserving
    homeomorphisms L(p,q) = L(p,q^-1) = L(-p,-q), identical normal forms are
    the same oriented manifold.
    """

    p: int
    q: int

    def __init__(self, p: int, q: int):
        p, q = schubert_pair(p, q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_sphere(self) -> bool:
        return self.p == 1

    def mirror(self) -> LensSpace:
        return LensSpace(self.p, -self.q)

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class LensSum:
    """Connected sum of lens spaces; S^3 summands are dropped."""

    summands: tuple[LensSpace, ...]

    def __init__(self, summands: Iterable[LensSpace]):
        object.__setattr__(self, "summands", tuple(sorted(s for s in summands if not s.is_sphere)))

    def __str__(self) -> str:
        return " # ".join(str(s) for s in self.summands) or "L(1,1)"


@dataclass(frozen=True)
class NotLens:
    reason: str

    def __str__(self) -> str:
        return f"not a lens space ({self.reason})"


@dataclass(frozen=True)
class GraphManifold:
    """Linear chain of Seifert pieces glued along tori.

    ``pieces[0]`` is the closed end M(0,1;...) and ``pieces[-1]`` carries the
    free boundary.  Every later piece is a cable space M(0,2;(p, s)) with
    s = +-1; see ``tanglesolve.surgery.fill_graph`` for the gluing.
    """

    pieces: tuple[SeifertData, ...]

    def __init__(self, pieces: Iterable[SeifertData]):
        pieces = tuple(pieces)
        if not pieces or pieces[0].boundary != 1:
            raise ValueError("chain must start with a one-boundary piece")
        for piece in pieces[1:]:
            if piece.base != ORIENTABLE or piece.boundary != 2 or len(piece.fibers) != 1:
                raise ValueError(f"{piece} is not a cable space M(0,2;(p,s))")
            p, s = piece.fibers[0]
            if p < 2 or abs(s) != 1:
                raise ValueError(f"{piece} is not a cable space M(0,2;(p,+-1))")
        object.__setattr__(self, "pieces", pieces)

    def __str__(self) -> str:
        return "[" + ", ".join(str(p) for p in self.pieces) + "]"


ClosedResult = Union[LensSpace, LensSum, NotLens]


def lens_of_two_fiber(m: SeifertData) -> LensSpace:
    """Lens space M(0,0;(a1,b1),(a2,b2)) via the determinant formula.

    Fewer fibers are padded with the ordinary fiber (1, 0).
    """
    if m.base != ORIENTABLE or m.boundary != 0 or len(m.fibers) > 2:
        raise ValueError(f"{m} is not a closed two-fiber space over S^2")
    fibers = list(m.fibers) + [(1, 0)] * (2 - len(m.fibers))
    (a1, b1), (a2, b2) = fibers
    a = a1 * b2 + a2 * b1
    # (x, y) with a2*y - x*b2 = 1
    x, y = _bezout_complement(a2, b2)
    b = -(a1 * y + x * b1)
    return LensSpace(a, b)


def _bezout_complement(alpha: int, beta: int) -> tuple[int, int]:
    """Some (x, y) with alpha*y - x*beta = 1."""
    g, u, v = _ext_gcd(alpha, beta)
    if abs(g) != 1:
        raise ValueError(f"({alpha},{beta}) is not coprime")
    # alpha*u + beta*v = g
    return -v * g, u * g


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lens_of_mobius(m: SeifertData) -> Union[LensSpace, NotLens]:
    """M(-1,0;(alpha,+-1)) is L(4*alpha, +-1 - 2*alpha)."""
    if m.base != NONORIENTABLE or m.boundary != 0 or len(m.fibers) != 1:
        raise ValueError(f"{m} is not a closed one-fiber space over RP^2")
    alpha, beta = m.fibers[0]
    if (alpha, beta) == (1, 0):
        return NotLens("M(-1,0;) is RP^3 # RP^3")
    if abs(beta) != 1:
        return NotLens(f"fiber ({alpha},{beta}) over RP^2 needs beta = +-1")
    return LensSpace(4 * alpha, beta - 2 * alpha)


def refiber_mobius_piece(m: SeifertData = SeifertData(NONORIENTABLE, 1)) -> SeifertData:
    """Rewrite M(-1,1;) as the disk-base fibration M(0,1;(2,1),(2,-1))."""
    if m != SeifertData(NONORIENTABLE, 1):
        raise ValueError(f"only M(-1,1;) has the alternate fibration, got {m}")
    return SeifertData(ORIENTABLE, 1, [(2, 1), (2, -1)])


def _absorb_units(fibers: list[Fiber]) -> list[Fiber]:
    """Merge every (+-1, b) fiber into the exceptional fiber of largest |alpha|."""
    units = [f for f in fibers if f[0] == 1]
    rest = [f for f in fibers if f[0] != 1]
    targets = [i for i, f in enumerate(rest) if f[0] != 0]
    if not targets:
        if not units:
            return rest
        return rest + [(1, sum(b for _, b in units))]
    t = max(targets, key=lambda i: (rest[i][0], -i))
    alpha, beta = rest[t]
    rest[t] = (alpha, beta + alpha * sum(b for _, b in units))
    return rest


def normalize_closed(m: SeifertData) -> ClosedResult:
    """Classify a closed Seifert space as lens, sum of lenses, or neither."""
    if m.boundary != 0:
        raise ValueError(f"{m} has {m.boundary} unfilled boundary tori")
    fibers = list(m.fibers)
    splitting = [f for f in fibers if f[0] == 0]
    if splitting:
        pieces = [LensSpace(a, b) for a, b in fibers if a != 0]
        extra = len(splitting) - 1
        if m.base == NONORIENTABLE:
            extra += 1
        total = LensSum(pieces + [LensSpace(0, 1)] * extra)
        if len(total.summands) <= 1:
            return total.summands[0] if total.summands else LensSpace(1, 1)
        return total
    fibers = _absorb_units(fibers)
    if m.base == NONORIENTABLE:
        if fibers == [(1, 0)] or not fibers:
            return LensSum([LensSpace(2, 1), LensSpace(2, 1)])
        if len(fibers) == 1:
            return lens_of_mobius(SeifertData(NONORIENTABLE, 0, fibers))
        return NotLens(f"{len(fibers)} exceptional fibers over RP^2")
    if len(fibers) <= 2:
        return lens_of_two_fiber(SeifertData(ORIENTABLE, 0, fibers))
    return NotLens(f"{len(fibers)} exceptional fibers over S^2")


def torus_knot_de(p: int, q: int) -> tuple[int, int]:
    """Canonical (d, e) with p*d - q*e = 1 and 0 <= e < p."""
    if p < 1:
        raise ValueError(f"torus knot needs p >= 1, got {p}")
    if gcd(p, q) != 1:
        raise ValueError(f"({p},{q}) is not coprime")
    e = 0 if p == 1 else (-mod_inverse(q % p, p)) % p
    d, r = divmod(1 + q * e, p)
    assert r == 0
    return d, e


def torus_knot_exterior(a: int, b: int, p: int, q: int) -> SeifertData:
    """Exterior of the (p,q) torus knot in the first solid torus of L(a,b)."""
    if gcd(a, b) != 1:
        raise ValueError(f"L({a},{b}) needs coprime parameters")
    if p == 0:
        raise ValueError("p = 0 puts the knot in a ball")
    d, e = torus_knot_de(p, q)
    return SeifertData(ORIENTABLE, 1, [(p, -e), (a * q - b * p, a * d - b * e)])


def h1_order(m: SeifertData) -> int:
    """|H_1| of a closed Seifert space from its presentation; 0 means infinite.

    Over S^2 the order is |sum_i b_i prod_{j != i} a_j|; over RP^2 the
    crosscap relation forces 4 * prod a_i.
    """
    if m.boundary != 0:
        raise ValueError("h1_order needs a closed manifold")
    alphas = [a for a, _ in m.fibers]
    if any(a == 0 for a in alphas):
        raise ValueError("generalized (0,1) fibers are handled by normalize_closed")
    if m.base == NONORIENTABLE:
        return 4 * prod(alphas)
    total = sum(b * prod(alphas[:i] + alphas[i + 1:]) for i, (_, b) in enumerate(m.fibers))
    return abs(total)


def lens_equiv(x: LensSpace, y: LensSpace, mode: str = "oriented") -> bool:
    if mode == "oriented":
        return x == y
    if mode == "unoriented":
        return x == y or x.mirror() == y
    raise ValueError(f"unknown mode {mode!r}")


_PAIR_RE = re.compile(r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_SFS_RE = re.compile(r"^\s*M\s*\(\s*([+-]?\d+)\s*,\s*(\d+)\s*;(.*)\)\s*$")


def parse_seifert(text: str) -> SeifertData:
    """Parse ``"M(0,0;(2,-1),(3,2))"``."""
    m = _SFS_RE.match(text)
    if not m:
        raise ValueError(f"not Seifert data: {text!r}")
    body = m.group(3)
    fibers = [(int(a), int(b)) for a, b in _PAIR_RE.findall(body)]
    if _PAIR_RE.sub("", body).replace(",", "").strip():
        raise ValueError(f"malformed fiber list in {text!r}")
    return SeifertData(int(m.group(1)), int(m.group(2)), fibers)


_LENS_RE = re.compile(r"^\s*(?:L\s*\(\s*)?([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)?\s*$")


def parse_lens(text: str) -> LensSpace:
    m = _LENS_RE.match(text)
    if not m:
        raise ValueError(f"not a lens space: {text!r}")
    return LensSpace(int(m.group(1)), int(m.group(2)))
