"""Theoretical bounds per metric and the verdict policy built on them."""

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

TOWARD_LB = "toward_LB"
TOWARD_UB = "toward_UB"
EXACT = "exact"

VERDICTS = ("ideal", "acceptable", "poor", "out_of_bounds")

# share of the range at each end that counts as ideal / poor
DEFAULT_BAND = 0.25


@dataclass(frozen=True)
class BoundsEntry:
    prop: str
    lb: object
    ub: object
    ideal: str
    lb_inclusive: bool = True
    ub_inclusive: bool = True
    target: object = None        # for EXACT ideals
    aspirational: bool = False   # a required value rather than a range
    note: str = ""

    def contains(self, value):
        if self.aspirational:
            return value == self.target
        lo_ok = value >= self.lb if self.lb_inclusive else value > self.lb
        hi_ok = value <= self.ub if self.ub_inclusive else value < self.ub
        return lo_ok and hi_ok

    def describe(self):
        if self.aspirational:
            return f"{self.prop} = {_fmt(self.target)}"
        lo = "<=" if self.lb_inclusive else "<"
        hi = "<=" if self.ub_inclusive else "<"
        return f"{_fmt(self.lb)} {lo} {self.prop} {hi} {_fmt(self.ub)}"

    def to_dict(self):
        d = asdict(self)
        for key in ("lb", "ub", "target"):
            d[key] = _jsonable(d[key])
        return d


def _fmt(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return float(v) if v.denominator != 1 else v.numerator
    return v


def _pow2(e):
    """2^e, exact when e is an integer, float otherwise."""
    if float(e).is_integer():
        e = int(e)
        return 2 ** e if e >= 0 else Fraction(1, 2 ** -e)
    return 2.0 ** e


def _nl(n, m):
    if n % 2 == 0:
        ub = 2 ** (n - 1) - 2 ** (n // 2 - 1)
        # bent vectorial functions reach the even bound when m <= n/2
        note = "attainable maximum for bijective 4-bit boxes is 4" if n == m == 4 else ""
        return BoundsEntry("nl", 0, ub, TOWARD_UB, ub_inclusive=m <= n // 2, note=note)
    ub = 2 ** (n - 1) - 2 ** ((n - 1) // 2)
    return BoundsEntry("nl", 0, ub, TOWARD_UB,
                       note="reached by almost bent functions for odd n")


def _floor_range(prop, lb, ub, ideal):
    """At tiny widths the closed form drops below LB; the range collapses to LB."""
    if ub < lb:
        return BoundsEntry(prop, lb, lb, ideal, note="range collapses at this width")
    return BoundsEntry(prop, lb, ub, ideal)


def _dpa(n, m, balanced):
    ub = _pow2(n / 2)
    if balanced is False:
        return BoundsEntry("dpa_snr", 0, ub, TOWARD_LB, note="general range")
    return BoundsEntry("dpa_snr", 1, ub, TOWARD_LB, note="balanced S-box range")


_CATALOGUE = {
    "op": lambda n, m: BoundsEntry("op", 1, 2 ** n, TOWARD_LB),
    "fp": lambda n, m: BoundsEntry("fp", 0, 2 ** n, TOWARD_LB),
    "ofp": lambda n, m: BoundsEntry("ofp", 0, 2 ** n, TOWARD_LB),
    "bic": lambda n, m: BoundsEntry("bic", 0, 1, EXACT, target=0),
    "sac": lambda n, m: BoundsEntry("sac", 0, 1, EXACT, target=Fraction(1, 2)),
    "ai": lambda n, m: BoundsEntry("ai", math.sqrt(2 ** (2 * n) / (2 ** n - 1)), 2 ** n,
                                   TOWARD_LB),
    "ssi": lambda n, m: BoundsEntry("ssi", 2 ** (2 * n), 2 ** (3 * n + m), TOWARD_LB),
    "lat": lambda n, m: BoundsEntry("lat", 0, 2 ** (n - 1), TOWARD_LB,
                                    note="largest |LAT - 2^(n-1)|"),
    "lap": lambda n, m: BoundsEntry("lap", 0, Fraction(1, 2), TOWARD_LB),
    "nl": _nl,
    "lbn": lambda n, m: _floor_range("lbn", 2, n - 1, TOWARD_UB),
    "ls": lambda n, m: BoundsEntry("ls", 0, 2 ** (n + m), TOWARD_LB),
    "ci": lambda n, m: BoundsEntry("ci", 0, n, TOWARD_LB),
    "du": lambda n, m: BoundsEntry("du", 2, 2 ** n, TOWARD_LB),
    "dbn": lambda n, m: _floor_range("dbn", 2, math.ceil(2 * n / 3), TOWARD_UB),
    "pc": lambda n, m: BoundsEntry("pc", 0, n, TOWARD_UB),
    "udb": lambda n, m: BoundsEntry("udb", 0, 0, EXACT, target=0, aspirational=True,
                                    note="required value, not a range"),
    "bu": lambda n, m: BoundsEntry("bu", 2, 2 ** n, TOWARD_LB),
    # stated for max|DLCT|; divided by 2^n to match the normalised metric
    "dlu": lambda n, m: BoundsEntry("dlu", _pow2(n / 2 - 1 - n), Fraction(1, 2), TOWARD_LB,
                                    lb_inclusive=False, note="max|DLCT| / 2^n"),
    "ad": lambda n, m: _floor_range("ad", 1, n - 1, TOWARD_UB),
    "dpa_snr": lambda n, m: _dpa(n, m, True),
    "to": lambda n, m: BoundsEntry("to", 0, m, TOWARD_LB),
}

PROPERTIES = tuple(_CATALOGUE)


def bounds_for(prop, n, m=None, balanced=None):
    """Instantiate the bound of ``prop`` for an n x m S-box.

    ``balanced`` only matters for DPA-SNR: False selects the general
    range starting at 0, anything else the balanced range starting at 1.
    """
    m = n if m is None else m
    if prop not in _CATALOGUE:
        raise KeyError(f"no bound for property {prop!r}")
    if prop == "dpa_snr":
        return _dpa(n, m, balanced)
    return _CATALOGUE[prop](n, m)


def catalogue(n, m=None):
    m = n if m is None else m
    return [bounds_for(p, n, m) for p in PROPERTIES]


def catalogue_json(n, m=None):
    m = n if m is None else m
    data = {"n": n, "m": m, "bounds": [e.to_dict() for e in catalogue(n, m)],
            "verdict_band": DEFAULT_BAND}
    return json.dumps(data, indent=2)


def _score(value, entry):
    """Position in [0, 1] of ``value`` inside the range, 1 being the ideal end."""
    lb, ub = float(entry.lb), float(entry.ub)
    v = float(value)
    span = ub - lb
    if span <= 0:
        return 1.0
    if entry.ideal == TOWARD_UB:
        return (v - lb) / span
    if entry.ideal == TOWARD_LB:
        return (ub - v) / span
    t = float(entry.target)
    worst = max(t - lb, ub - t)
    return 1.0 - abs(v - t) / worst if worst else 1.0


def verdict(value, entry, band=DEFAULT_BAND):
    """Classify ``value`` as ideal / acceptable / poor / out_of_bounds.

    Inside the bounds the range is split by ``band``: the share nearest
    the ideal end is ``ideal``, the share at the far end ``poor``.
    """
    if value is None:
        return None
    if not entry.contains(value):
        return "out_of_bounds"
    if entry.aspirational:
        return "ideal"
    score = _score(value, entry)
    if score >= 1 - band:
        return "ideal"
    if score <= band:
        return "poor"
    return "acceptable"


def verdict_note(value, entry):
    if entry.aspirational and value != entry.target:
        return f"nonzero {entry.prop.upper()}"
    return ""
