"""Dehn surgery on torus knots, cable knots and iterated cables in lens spaces.

Knot slopes m/n are written in the companion-framed (longitude, meridian)
basis, so 1/0 is the meridian and pq is the cabling annulus slope of a
(p,q)-cable.  Filling the (p,q) torus knot exterior along m/n adds the
Seifert fiber (m - npq, n).

``fill_graph`` works in the other natural basis: it takes the fraction of the
rational tangle being plugged in, and the tangle beta/alpha adds the fiber
(alpha, beta) to the double branched cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

from .exact import ExtRational
from .seifert import (
    NONORIENTABLE,
    GraphManifold,
    LensSpace,
    LensSum,
    NotLens,
    SeifertData,
    normalize_closed,
    torus_knot_exterior,
)

__all__ = [
    "Slope",
    "MERIDIAN",
    "CableKnot",
    "IteratedCable",
    "GraphManifold",
    "Lens",
    "Sum",
    "SolidTorus",
    "SolidTorusSumLens",
    "ToroidalOrSFS",
    "HypothesisViolation",
    "pushdown",
    "cable_space_fill",
    "tk_fill_disk",
    "tk_fill_mobius",
    "cable_fill",
    "iterated_lens_surgeries",
    "fill_graph",
    "classify_closed",
    "parse_slope",
]


class HypothesisViolation(ValueError):
    """A cable or iterated knot outside the range where the results apply."""


@dataclass(frozen=True, order=True)
class Slope:
    m: int
    n: int = 1

    def __post_init__(self):
        m, n = int(self.m), int(self.n)
        if m == 0 and n == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(m, n)
        m, n = m // g, n // g
        if n < 0 or (n == 0 and m < 0):
            m, n = -m, -n
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @classmethod
    def of(cls, r) -> Slope:
        if isinstance(r, Slope):
            return r
        if isinstance(r, ExtRational):
            return cls(r.num, r.den)
        return cls(int(r), 1)

    @property
    def is_meridian(self) -> bool:
        return self.n == 0

    def __str__(self) -> str:
        return f"{self.m}/{self.n}"


MERIDIAN = Slope(1, 0)


def parse_slope(text: str) -> Slope:
    text = text.strip()
    if text.lower() in ("inf", "oo"):
        return MERIDIAN
    m, _, n = text.partition("/")
    try:
        return Slope(int(m), int(n) if n else 1)
    except ValueError:
        raise ValueError(f"not a slope: {text!r}") from None


# ---------------------------------------------------------------- results


@dataclass(frozen=True)
class Lens:
    space: LensSpace

    def __str__(self) -> str:
        return str(self.space)


@dataclass(frozen=True)
class Sum:
    """Connected sum of at least two non-trivial lens spaces (sorted)."""

    summands: tuple[LensSpace, ...]

    def __str__(self) -> str:
        return " # ".join(str(s) for s in self.summands)


@dataclass(frozen=True)
class SolidTorus:
    def __str__(self) -> str:
        return "S^1 x D^2"


@dataclass(frozen=True)
class SolidTorusSumLens:
    lens: LensSpace

    def __str__(self) -> str:
        return f"S^1 x D^2 # {self.lens}"


@dataclass(frozen=True)
class ToroidalOrSFS:
    description: str

    def __str__(self) -> str:
        return self.description


FillResult = Union[Lens, Sum, SolidTorus, SolidTorusSumLens, ToroidalOrSFS]


def _combine(parts) -> FillResult:
    """Lens or Sum from a list of LensSpace/LensSum/NotLens/FillResult pieces."""
    summands = []
    for part in parts:
        if isinstance(part, LensSpace):
            summands.append(part)
        elif isinstance(part, (LensSum, Sum)):
            summands.extend(part.summands)
        elif isinstance(part, Lens):
            summands.append(part.space)
        elif isinstance(part, NotLens):
            return ToroidalOrSFS(part.reason)
        else:
            return part
    summands = sorted(s for s in summands if not s.is_sphere)
    if not summands:
        return Lens(LensSpace(1, 1))
    if len(summands) == 1:
        return Lens(summands[0])
    return Sum(tuple(summands))


def classify_closed(m: SeifertData) -> FillResult:
    return _combine([normalize_closed(m)])


# ---------------------------------------------------------------- knots


@dataclass(frozen=True)
class CableKnot:
    """(p,q)-cable of the (p1,q1) torus knot in the first solid torus of L(a,b).

    The ambient is kept as the raw pair (a, b): the torus knot depends on the
    chosen splitting, not just on the homeomorphism type of L(a,b).
    """

    a: int
    b: int
    p1: int
    q1: int
    p: int
    q: int

    def __post_init__(self):
        if gcd(self.a, self.b) != 1 or gcd(self.p1, self.q1) != 1 or gcd(self.p, self.q) != 1:
            raise ValueError(f"non-coprime parameters in {self}")

    @property
    def ambient(self) -> LensSpace:
        return LensSpace(self.a, self.b)

    def check_hypotheses(self) -> None:
        if self.p < 2:
            raise HypothesisViolation(f"cable index p={self.p} must be at least 2")
        if self.p1 < 2:
            raise HypothesisViolation(f"companion index p1={self.p1} must be at least 2")
        if abs(self.a * self.q1 - self.b * self.p1) <= 1:
            raise HypothesisViolation("|a*q1 - b*p1| must exceed 1")

    def __str__(self) -> str:
        return f"cable(L({self.a},{self.b}); ({self.p1},{self.q1}); ({self.p},{self.q}))"


@dataclass(frozen=True)
class IteratedCable:
    """[p0,q0; p1,q1; ...]: outermost cable first, the torus knot last."""

    stages: tuple[tuple[int, int], ...]

    def __init__(self, stages):
        stages = tuple((int(p), int(q)) for p, q in stages)
        if len(stages) < 2:
            raise ValueError("an iterated cable needs at least two stages")
        for p, q in stages:
            if p < 2 or gcd(p, q) != 1:
                raise ValueError(f"bad stage ({p},{q}): need p >= 2 and gcd 1")
        object.__setattr__(self, "stages", stages)

    def __str__(self) -> str:
        return "[" + "; ".join(f"{p},{q}" for p, q in self.stages) + "]"


def pushdown(w: int, r) -> Slope:
    """Slope on the companion torus bounding a disk after r-surgery on the pattern.

    For winding number w the boundary class is (n*w^2/g)*alpha + (m/g)*beta
    with g = gcd(w, m); w = 0 always gives the meridian beta.
    """
    r = Slope.of(r)
    if w < 0:
        raise ValueError("winding number must be non-negative")
    if w == 0:
        return MERIDIAN
    g = gcd(w, r.m)
    return Slope(r.m // g, r.n * w * w // g)


def cable_space_fill(p: int, q: int, r) -> FillResult:
    """Filling the (p,q) cable space along r."""
    if p < 2:
        raise ValueError("cable space needs p >= 2")
    r = Slope.of(r)
    if r.n == 1 and r.m == p * q:
        return SolidTorusSumLens(LensSpace(p, q))
    if abs(r.m - r.n * p * q) == 1:
        return SolidTorus()
    return ToroidalOrSFS("Seifert fibered with incompressible boundary")


def tk_fill_disk(a: int, b: int, p: int, q: int, r) -> SeifertData:
    """Slope s/t filling of the (p,q) torus knot exterior in L(a,b)."""
    if p < 1:
        raise ValueError("torus knot index p must be positive")
    r = Slope.of(r)
    return torus_knot_exterior(a, b, p, q).with_fiber(r.m - r.n * p * q, r.n)


def tk_fill_mobius(p: int, q: int, r) -> SeifertData:
    """Filling of the (p,q) torus knot in the solid torus of L(4p, +-1 - 2p)
    whose complement is the twisted I-bundle side."""
    if p < 1:
        raise ValueError("torus knot index p must be positive")
    if q % p == 1 % p:
        eps = 1
    elif q % p == (-1) % p:
        eps = -1
    else:
        raise ValueError(f"q={q} is not +-1 mod p={p}")
    r = Slope.of(r)
    return SeifertData(NONORIENTABLE, 0, [(p, eps), (r.m - r.n * p * q, r.n)])


def cable_fill(k: CableKnot, r) -> FillResult:
    """r-surgery on a cable of a torus knot, by Gordon's trichotomy."""
    k.check_hypotheses()
    r = Slope.of(r)
    outer = cable_space_fill(k.p, k.q, r)
    if isinstance(outer, ToroidalOrSFS):
        return ToroidalOrSFS(f"slope {r} on {k}: {outer.description}")
    inner = tk_fill_disk(k.a, k.b, k.p1, k.q1, pushdown(k.p, r))
    if isinstance(outer, SolidTorusSumLens):
        return _combine([outer.lens, normalize_closed(inner)])
    return classify_closed(inner)


def iterated_lens_surgeries(a: int, b: int, ic: IteratedCable) -> list[tuple[Slope, LensSpace]]:
    """Integral-or-not slopes on [p0,q0; p1,q1] in L(a,b) giving a lens space.

    A lens filling needs the outer stage to push down to a solid torus
    (m = n*p0*q0 + e1) and the torus knot filling to be lens as well
    (m - n*p0^2*p1*q1 = e2), so n*p0*(q0 - p0*p1*q1) = e2 - e1.  Three or
    more stages never satisfy the analogous system.
    """
    if not isinstance(ic, IteratedCable):
        ic = IteratedCable(ic)
    if len(ic.stages) > 2:
        return []
    (p0, q0), (p1, q1) = ic.stages
    if abs(a * q1 - b * p1) <= 1:
        return []
    knot = CableKnot(a, b, p1, q1, p0, q0)
    k = p0 * (q0 - p0 * p1 * q1)
    out = []
    for e1 in (1, -1):
        for e2 in (1, -1):
            if e1 == e2 or (e2 - e1) % k:
                continue
            n = (e2 - e1) // k
            if n <= 0:
                continue
            slope = Slope(n * p0 * q0 + e1, n)
            result = cable_fill(knot, slope)
            if isinstance(result, Lens):
                out.append((slope, result.space))
    return sorted(set(out))


# ---------------------------------------------------------------- graphs


def _through_cable(p: int, s: int, fiber: tuple[int, int]):
    """Fill the outer boundary of M(0,2;(p,s)) with ``fiber``.

    Returns (lens summand or None, fiber on the inner boundary) or None when
    the filled cable space is not a solid torus.  Inner coordinates are mapped
    by (u, v) -> (s*v, -s*u + p*v).
    """
    x, y = fiber
    if x == 0:
        return LensSpace(p, s), (s, p)
    if abs(x) != 1:
        return None
    if x == -1:
        x, y = 1, -y
    u, v = p, s + p * y
    return None, (s * v, -s * u + p * v)


def fill_graph(g, r) -> FillResult:
    """Plug the rational tangle with fraction r into a solution shape's cover.

    ``g`` is a GraphManifold from ``dbc_of_tangle`` or a one-boundary
    SeifertData.  The chain is collapsed from the outer boundary inwards.
    """
    r = Slope.of(r)
    fiber = (r.n, r.m)
    if isinstance(g, SeifertData):
        if g.boundary != 1:
            raise ValueError(f"{g} must have exactly one boundary torus")
        return classify_closed(g.with_fiber(*fiber))
    summands = []
    for piece in reversed(g.pieces[1:]):
        p, s = piece.fibers[0]
        step = _through_cable(p, s, fiber)
        if step is None:
            return ToroidalOrSFS(f"fiber {fiber} leaves {piece} with incompressible boundary")
        lens, fiber = step
        if lens is not None:
            summands.append(lens)
    return _combine(summands + [normalize_closed(g.pieces[0].with_fiber(*fiber))])
