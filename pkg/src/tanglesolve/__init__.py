"""Exact solver for tangle equations whose double branched covers are Seifert
fibered or graph manifolds built from torus-knot and cable exteriors."""

from .exact import ExtRational, cf_eval, cf_expand, mod_inverse, parse_fraction
from .seifert import LensSpace, SeifertData, normalize_closed
from .solver import Bounds, enumerate_composite, solve_composite, solve_lens, verify
from .twobridge import TwoBridgeLink, canonical, parse_link

__version__ = "0.1.0"

__all__ = [
    "ExtRational",
    "cf_eval",
    "cf_expand",
    "mod_inverse",
    "parse_fraction",
    "LensSpace",
    "SeifertData",
    "normalize_closed",
    "Bounds",
    "enumerate_composite",
    "solve_composite",
    "solve_lens",
    "verify",
    "TwoBridgeLink",
    "canonical",
    "parse_link",
]
