"""Solve N(O + X1) = b1, N(O + X2) = b2 # b3 (or = b2) over the Seifert cases.

Families are produced either forward (``enumerate_composite``) or by exact
inversion from the target links (``solve_composite``, ``solve_lens``).  Every
family carries its tangle O with the fillings X1 = 0 and X2, and ``verify``
re-derives both equations from the double branched cover of O.

Cases:

* ``T1i``/``T1ii``: O covers a (p,q)-cable of the (p1,q1) torus knot in
  L(a,b), with q = p*p1*q1 + 1 or - 1.
* ``T2i``: O covers the exterior of the (p,q) torus knot in L(a,b).
* ``T2ii``: O covers the twisted I-bundle side of L(4p, 1-2p).
* ``S4a``/``S4b``: lens-to-lens moves on the (2, 2*p1*q1 +- 1)-cable.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from math import gcd, isqrt
from typing import Optional

from .exact import INF, ZERO, ExtRational
from .seifert import LensSpace, torus_knot_de
from .surgery import (
    CableKnot,
    IteratedCable,
    Lens,
    Slope,
    Sum,
    cable_fill,
    fill_graph,
    iterated_lens_surgeries,
)
from .tangle import (
    Circle,
    GluedCable,
    Hole,
    Rational,
    Ring,
    Unsupported,
    circle_product_fraction,
    dbc_of_tangle,
    print_tangle,
)
from .tangle import Sum as TSum
from .twobridge import UNLINK, TwoBridgeLink, canonical

__all__ = [
    "Params",
    "Bounds",
    "SolutionFamily",
    "Report",
    "ambient_representatives",
    "enumerate_composite",
    "solve_composite",
    "solve_lens",
    "build_tangle",
    "make_family",
    "verify",
    "normalize_move",
    "scope_diagnostics",
    "CASES",
]

CASES = ("T1i", "T1ii", "T2i", "T2ii", "S4a", "S4b")
BOUNDARY_CASE = "boundary-case"


@dataclass(frozen=True, order=True)
class Params:
    a: Optional[int] = None
    b: Optional[int] = None
    p1: Optional[int] = None
    q1: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    d: Optional[int] = None
    e: Optional[int] = None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def key(self) -> tuple:
        # None sorts before every integer
        return tuple((v is not None, v or 0) for v in self.as_dict().values())


@dataclass(frozen=True)
class Bounds:
    """Search box: 2 <= p <= p_max, 2 <= p1 <= p1_max, 1 <= |q1| <= q1_max.

    Torus-knot families (T2i) reuse ``p`` for their index and ``q1`` for |q|.
    """

    p: int = 4
    p1: int = 4
    q1: int = 5

    def __post_init__(self):
        if self.p < 2 or self.p1 < 2 or self.q1 < 1:
            raise ValueError(f"bounds too small: {self}")


@dataclass(frozen=True)
class SolutionFamily:
    case: str
    params: Params
    b1: TwoBridgeLink
    O: object
    X1: ExtRational
    X2: ExtRational
    products: tuple[TwoBridgeLink, ...]
    flags: tuple[str, ...] = ()
    variants: tuple = ()
    verified: Optional[bool] = None
    mismatch: tuple[str, ...] = ()

    @property
    def N(self) -> Optional[int]:
        pr = self.params
        if self.case in ("T1i", "T1ii", "S4a", "S4b"):
            return pr.a * pr.q1 - pr.b * pr.p1
        if self.case == "T2i":
            return pr.a * pr.q - pr.b * pr.p
        return None

    def key(self) -> tuple:
        return (CASES.index(self.case), self.params.key())


@dataclass(frozen=True)
class Report:
    passed: bool
    eq1_expected: str
    eq1_computed: str
    eq2_expected: str
    eq2_computed: str
    mismatch: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


# ---------------------------------------------------------------- helpers


def ambient_representatives(b1: TwoBridgeLink) -> list[tuple[int, int]]:
    """Pairs (a, b) with 0 < b <= a and b(a,b) = b1, or (0, 1) for the unlink."""
    if b1.alpha == 0:
        return [(0, 1)]
    if b1.alpha == 1:
        return [(1, 1)]
    reps = {b1.beta, pow(b1.beta, -1, b1.alpha)}
    return [(b1.alpha, r) for r in sorted(reps)]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _cable_second(a, b, p1, q1, k, s):
    # k is the cable index p for T1 and p^2 = 4 for the lens-to-lens moves
    n = a * q1 - b * p1
    return a + s * k * p1 * n, b + s * k * q1 * n


def _case_of(kind: str, s: int) -> str:
    return {("T1", 1): "T1i", ("T1", -1): "T1ii", ("S4", 1): "S4a", ("S4", -1): "S4b"}[(kind, s)]


def _sign_of(case: str) -> int:
    return 1 if case in ("T1i", "S4a") else -1


def _lens_of(x: TwoBridgeLink) -> LensSpace:
    return LensSpace(x.alpha, x.beta)


# ---------------------------------------------------------------- tangles


def build_tangle(fam: SolutionFamily):
    """(O, X1, X2) for a family, rebuilt from its case and parameters."""
    O, X1, X2, _ = _build(fam.case, fam.params)
    return O, X1, X2


def _build(case: str, params: Params):
    # (O, X1, X2, variants); the variant swaps the two rational summands
    pr = params
    if case in ("T1i", "T1ii", "S4a", "S4b"):
        d, e = torus_knot_de(pr.p1, pr.q1)
        n = pr.a * pr.q1 - pr.b * pr.p1
        A, B = Rational(ExtRational(-e, pr.p1)), Rational(ExtRational(pr.a * d - pr.b * e, n))
        s = _sign_of(case)
        O = GluedCable(TSum(TSum(A, B), Hole()), pr.p, s)
        alt = GluedCable(TSum(TSum(B, A), Hole()), pr.p, s)
        X2 = INF if case.startswith("T1") else ExtRational(-s)
        return O, ZERO, X2, (alt,)
    if case == "T2i":
        d, e = torus_knot_de(pr.p, pr.q)
        A = Rational(ExtRational(-e, pr.p))
        B = Rational(ExtRational(pr.a * d - pr.b * e, pr.a * pr.q - pr.b * pr.p))
        return TSum(A, B), ZERO, INF, (TSum(B, A),)
    if case == "T2ii":
        return TSum(Ring(), Rational(ExtRational(1, pr.p))), ZERO, INF, ()
    raise ValueError(f"unknown case {case!r}")


def _expected_products(case: str, pr: Params) -> tuple[TwoBridgeLink, ...]:
    if case in ("T1i", "T1ii"):
        s = _sign_of(case)
        return canonical(pr.p, pr.q), canonical(*_cable_second(pr.a, pr.b, pr.p1, pr.q1, pr.p, s))
    if case in ("S4a", "S4b"):
        return (canonical(*_cable_second(pr.a, pr.b, pr.p1, pr.q1, pr.p * pr.p, _sign_of(case))),)
    if case == "T2i":
        d, e = torus_knot_de(pr.p, pr.q)
        return canonical(pr.p, -e), canonical(pr.a * pr.q - pr.b * pr.p, pr.a * d - pr.b * e)
    if case == "T2ii":
        return UNLINK, canonical(pr.p, 1)
    raise ValueError(f"unknown case {case!r}")


def _expected_b1(case: str, pr: Params) -> TwoBridgeLink:
    if case == "T2ii":
        return canonical(4 * pr.p, 1 - 2 * pr.p)
    return canonical(pr.a, pr.b)


def _with_de(case: str, pr: Params) -> Params:
    if case == "T2ii":
        return pr
    if case == "T2i":
        d, e = torus_knot_de(pr.p, pr.q)
    else:
        d, e = torus_knot_de(pr.p1, pr.q1)
    return replace(pr, d=d, e=e)


_REQUIRED = {
    "T1i": ("a", "b", "p1", "q1", "p", "q"),
    "T1ii": ("a", "b", "p1", "q1", "p", "q"),
    "S4a": ("a", "b", "p1", "q1", "p", "q"),
    "S4b": ("a", "b", "p1", "q1", "p", "q"),
    "T2i": ("a", "b", "p", "q"),
    "T2ii": ("p",),
}


def make_family(case: str, params: Params, check: bool = True) -> SolutionFamily:
    """Assemble a family from its case and parameters; ``check`` runs verify."""
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    missing = [k for k in _REQUIRED[case] if getattr(params, k) is None]
    if missing:
        raise ValueError(f"{case} needs parameters {', '.join(missing)}")
    params = _with_de(case, params)
    O, X1, X2, variants = _build(case, params)
    products = _expected_products(case, params)
    flags = ()
    if UNLINK in products and case != "T2ii":
        flags = (BOUNDARY_CASE,)
    fam = SolutionFamily(case, params, _expected_b1(case, params), O, X1, X2, products, flags, variants)
    if check:
        report = verify(fam)
        fam = replace(fam, verified=report.passed, mismatch=report.mismatch)
    return fam


# ---------------------------------------------------------------- verify


def _constraint_errors(case: str, pr: Params) -> list[str]:
    errs = []
    if case in ("T1i", "T1ii", "S4a", "S4b"):
        if None in (pr.a, pr.b, pr.p1, pr.q1, pr.p, pr.q):
            return [f"{case} needs a, b, p1, q1, p, q"]
        s = _sign_of(case)
        if pr.p1 < 2:
            errs.append("p1 must exceed 1")
        if pr.p < 2 or (case.startswith("S4") and pr.p != 2):
            errs.append("cable index p out of range")
        if abs(pr.a * pr.q1 - pr.b * pr.p1) <= 1:
            errs.append("|a*q1 - b*p1| must exceed 1")
        if pr.q != pr.p * pr.p1 * pr.q1 + s:
            errs.append(f"q must equal p*p1*q1 {'+' if s > 0 else '-'} 1")
        if gcd(pr.p1, pr.q1) != 1 or gcd(pr.a, pr.b) != 1:
            errs.append("parameters not coprime")
    elif case == "T2i":
        if None in (pr.a, pr.b, pr.p, pr.q):
            return ["T2i needs a, b, p, q"]
        if pr.p < 2:
            errs.append("p must exceed 1")
        if abs(pr.a * pr.q - pr.b * pr.p) <= 1:
            errs.append("|a*q - b*p| must exceed 1")
        if gcd(pr.p, pr.q) != 1 or gcd(pr.a, pr.b) != 1:
            errs.append("parameters not coprime")
    elif case == "T2ii":
        if pr.p is None or abs(pr.p) <= 1:
            errs.append("|p| must exceed 1")
    else:
        errs.append(f"unknown case {case!r}")
    if case != "T2ii" and not errs:
        de = torus_knot_de(pr.p if case == "T2i" else pr.p1, pr.q if case == "T2i" else pr.q1)
        if pr.d is not None and (pr.d, pr.e) != de:
            errs.append(f"(d,e) = ({pr.d},{pr.e}) is not the canonical {de}")
    return errs


def _fill_str(res) -> str:
    return str(res)


def _matches(res, targets: tuple[TwoBridgeLink, ...]) -> bool:
    want = sorted(_lens_of(t) for t in targets if not t.is_unknot)
    if isinstance(res, Lens):
        got = [] if res.space.is_sphere else [res.space]
    elif isinstance(res, Sum):
        got = list(res.summands)
    else:
        return False
    return sorted(got) == want


def verify(fam: SolutionFamily) -> Report:
    """Re-derive both equations from the double branched cover of O."""
    errs = _constraint_errors(fam.case, fam.params)
    eq1_exp = eq2_exp = eq1_got = eq2_got = "?"
    if not errs:
        O, X1, X2, variants = _build(fam.case, fam.params)
        if O != fam.O:
            errs.append(f"O = {print_tangle(fam.O)} differs from rebuilt {print_tangle(O)}")
        if (X1, X2) != (fam.X1, fam.X2):
            errs.append(f"fillings ({fam.X1}, {fam.X2}) differ from ({X1}, {X2})")
        if fam.b1 != _expected_b1(fam.case, fam.params):
            errs.append(f"b1 = {fam.b1} is not covered by the parameters")
        if fam.products != _expected_products(fam.case, fam.params):
            errs.append("claimed products differ from the closed form")
    eq1_exp = str(_lens_of(fam.b1))
    eq2_exp = " # ".join(str(_lens_of(t)) for t in fam.products)
    for shape in (fam.O,) + tuple(fam.variants):
        g = dbc_of_tangle(shape)
        if isinstance(g, Unsupported):
            errs.append(f"unsupported tangle: {g.reason}")
            break
        r1 = fill_graph(g, Slope.of(fam.X1))
        r2 = fill_graph(g, Slope.of(fam.X2))
        if shape is fam.O:
            eq1_got, eq2_got = _fill_str(r1), _fill_str(r2)
        if not _matches(r1, (fam.b1,)):
            errs.append(f"N(O + {fam.X1}) covers {r1}, expected {eq1_exp}")
        if not _matches(r2, fam.products):
            errs.append(f"N(O + {fam.X2}) covers {r2}, expected {eq2_exp}")
    if not errs:
        errs.extend(_oracle_errors(fam))
    return Report(not errs, eq1_exp, eq1_got, eq2_exp, eq2_got, tuple(dict.fromkeys(errs)))


def _oracle_errors(fam: SolutionFamily) -> list[str]:
    """Cross-check against the knot-surgery pipeline where one applies."""
    pr = fam.params
    if fam.case in ("T1i", "T1ii"):
        res = cable_fill(CableKnot(pr.a, pr.b, pr.p1, pr.q1, pr.p, pr.q), Slope(pr.p * pr.q))
        if not _matches(res, fam.products):
            return [f"cable surgery gives {res}"]
    if fam.case in ("S4a", "S4b"):
        got = iterated_lens_surgeries(pr.a, pr.b, IteratedCable([(pr.p, pr.q), (pr.p1, pr.q1)]))
        if _lens_of(fam.products[0]) not in [lens for _, lens in got]:
            return [f"iterated surgery gives {[str(x) for _, x in got]}"]
    return []


# ---------------------------------------------------------------- forward


def enumerate_composite(b1: TwoBridgeLink, bounds: Bounds = Bounds()) -> list[SolutionFamily]:
    out = {}

    def add(case, params):
        fam = make_family(case, params)
        out.setdefault((case, fam.params), fam)

    for a, b in ambient_representatives(b1):
        for p1 in range(2, bounds.p1 + 1):
            for q1 in _q_range(a, p1, bounds.q1):
                if gcd(p1, q1) != 1 or abs(a * q1 - b * p1) <= 1:
                    continue
                for p in range(2, bounds.p + 1):
                    for s in (1, -1):
                        second = _cable_second(a, b, p1, q1, p, s)
                        if abs(second[0]) == 1:
                            continue
                        add(_case_of("T1", s), Params(a, b, p1, q1, p, p * p1 * q1 + s))
        for p in range(2, bounds.p + 1):
            for q in _q_range(a, p, bounds.q1):
                if gcd(p, q) == 1 and abs(a * q - b * p) > 1:
                    add("T2i", Params(a, b, p=p, q=q))
    for p in _t2ii_indices(b1):
        add("T2ii", Params(p=p))
    return sorted(out.values(), key=SolutionFamily.key)


def _q_range(a: int, p: int, qmax: int) -> range:
    # with a = 0 only q mod p matters
    if a == 0:
        return range(1, p)
    return [q for q in range(-qmax, qmax + 1) if q != 0]


def _t2ii_indices(b1: TwoBridgeLink) -> list[int]:
    if b1.alpha % 4 or b1.alpha < 8:
        return []
    m = b1.alpha // 4
    return [p for p in (m, -m) if canonical(4 * p, 1 - 2 * p) == b1]


# ---------------------------------------------------------------- inverse


def _invert_cable(a: int, b: int, k: int, s: int, target: TwoBridgeLink) -> list[tuple[int, int]]:
    """All (p1, q1) with p1 >= 2, |N| >= 2 and b(cable second factor) = target."""
    found = []
    for sigma in (1, -1):
        num = sigma * target.alpha - a
        if target.alpha == 0 and sigma == -1:
            continue
        if num % (s * k):
            continue
        t = num // (s * k)  # = p1 * N
        if t == 0:
            continue
        if a == 0:
            # N = -b*p1 with b = 1, so t = -p1^2
            r = isqrt(-t) if t < 0 else 0
            if r < 2 or r * r != -t:
                continue
            candidates = [(r, q1) for q1 in range(1, r) if gcd(r, q1) == 1]
        else:
            candidates = []
            for p1 in _divisors(t):
                if p1 < 2:
                    continue
                n = t // p1
                if abs(n) < 2 or (n + b * p1) % a:
                    continue
                candidates.append((p1, (n + b * p1) // a))
        for p1, q1 in candidates:
            if gcd(p1, q1) != 1 or abs(a * q1 - b * p1) < 2:
                continue
            if canonical(*_cable_second(a, b, p1, q1, k, s)) == target:
                found.append((p1, q1))
    return found


def _invert_torus(a: int, b: int, first: TwoBridgeLink, second: TwoBridgeLink) -> list[int]:
    """All q with b(p,-e) = first and b(aq - bp, ad - be) = second, p = first.alpha."""
    p = first.alpha
    if a == 0:
        qs = [q for q in range(1, p) if gcd(p, q) == 1]
    else:
        qs = []
        for sigma in (1, -1):
            num = sigma * second.alpha + b * p
            if num % a == 0:
                qs.append(num // a)
    out = []
    for q in sorted(set(qs)):
        if gcd(p, q) != 1 or abs(a * q - b * p) <= 1:
            continue
        d, e = torus_knot_de(p, q)
        if canonical(p, -e) == first and canonical(a * q - b * p, a * d - b * e) == second:
            out.append(q)
    return out


def solve_composite(b1: TwoBridgeLink, b2: TwoBridgeLink, b3: TwoBridgeLink) -> list[SolutionFamily]:
    """Every cable and torus-knot family with N(O+0) = b1 and N(O+inf) = b2 # b3."""
    if b2.is_unknot or b3.is_unknot:
        raise ValueError("b2 and b3 must be non-trivial")
    out = {}

    def add(case, params):
        fam = make_family(case, params)
        out.setdefault((case, fam.params), fam)

    for a, b in ambient_representatives(b1):
        for first, second in {(b2, b3), (b3, b2)}:
            p = first.alpha
            if p < 2:
                continue
            for s in (1, -1):
                if canonical(p, s) != first:
                    continue
                for p1, q1 in _invert_cable(a, b, p, s, second):
                    add(_case_of("T1", s), Params(a, b, p1, q1, p, p * p1 * q1 + s))
            for q in _invert_torus(a, b, first, second):
                add("T2i", Params(a, b, p=p, q=q))
    for first, second in ((b2, b3), (b3, b2)):
        if first == UNLINK and second.alpha >= 2:
            for p in _t2ii_indices(b1):
                if canonical(p, 1) == second:
                    add("T2ii", Params(p=p))
    return sorted(out.values(), key=SolutionFamily.key)


def solve_lens(b1: TwoBridgeLink, b2: TwoBridgeLink) -> list[SolutionFamily]:
    """Cable families with N(O+0) = b1 and N(O-+1) = b2 (lens-to-lens moves)."""
    if b1 == b2:
        raise ValueError("b1 and b2 must differ")
    out = {}
    for a, b in ambient_representatives(b1):
        for s in (1, -1):
            for p1, q1 in _invert_cable(a, b, 4, s, b2):
                case = _case_of("S4", s)
                fam = make_family(case, Params(a, b, p1, q1, 2, 2 * p1 * q1 + s))
                out.setdefault((case, fam.params), fam)
    return sorted(out.values(), key=SolutionFamily.key)


def scope_diagnostics(b1: TwoBridgeLink, b2: TwoBridgeLink, b3: Optional[TwoBridgeLink] = None) -> list[str]:
    """Cases the solver deliberately does not model, as human-readable notes."""
    notes = ["O with hyperbolic double branched cover is out of model scope"]
    if b3 is not None and b1 in (b2, b3):
        notes.append("b1 equals a factor: the reducible (locally knotted or Berge) case is out of model scope")
    return notes


# ---------------------------------------------------------------- moves


def normalize_move(O, X1: ExtRational, X2: ExtRational):
    """Undo (n, 0) circle products on O by twisting X2 back."""
    if X1 != ZERO:
        return O, X1, X2
    while isinstance(O, Circle) and len(O.C) == 2 and O.C[1] == 0:
        X2 = circle_product_fraction(X2, (O.C[0], 0))
        O = O.inner
    return O, X1, X2
