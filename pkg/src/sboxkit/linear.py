"""Linear cryptanalysis metrics: LAT, LAP, NL, branch number, LS, CI."""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from ._bits import PARITY, WEIGHT
from .core import PreconditionError
from .spectral import SpectrumTable, _act, _walsh, check_table_size


def lat_counting(s):
    """LAT[r, g] = #{x : r.x = g.S(x)} by direct counting."""
    check_table_size(s)
    xs = np.arange(s.size)
    p_in = PARITY[xs[:, None] & xs[None, :]].astype(np.int64)
    p_out = PARITY[np.arange(s.out_size)[:, None] & s.array[None, :]].astype(np.int64)
    both_one = p_in @ p_out.T
    both_zero = (1 - p_in) @ (1 - p_out).T
    return both_one + both_zero


def lat(s, method="walsh"):
    """Return ``(lat_raw, lat_centered)``; rows are input masks, columns output masks."""
    if method == "walsh":
        raw = s.size // 2 + _walsh(s).T // 2
    elif method == "count":
        raw = lat_counting(s)
    else:
        raise ValueError(f"unknown method {method!r}")
    raw = np.ascontiguousarray(raw, dtype=np.int64)
    return SpectrumTable("lat_raw", raw), SpectrumTable("lat_centered", raw - s.size // 2)


def max_lat_bias(s):
    """max |LAT[r, g] - 2^(n-1)| over nonzero output masks g."""
    w = _walsh(s)
    return int(np.abs(w[1:]).max()) // 2 if s.out_size > 1 else 0


def linear_approximation_probability(s):
    return Fraction(max_lat_bias(s), s.size)


def nonlinearity(s):
    return s.size // 2 - max_lat_bias(s)


def linear_branch_number(s):
    """Least wt(g) + wt(r) over nonzero mask pairs with nonzero correlation."""
    if s.n != s.m:
        raise PreconditionError("linear branch number is only defined for n = m")
    w = _walsh(s)
    gw = WEIGHT[np.arange(s.out_size)][:, None]
    rw = WEIGHT[np.arange(s.size)][None, :]
    total = np.where(w != 0, gw + rw, 0)[1:, 1:]
    if not total.any():
        raise PreconditionError("no correlated pair of nonzero masks")
    return int(total[total > 0].min())


class LinearStructure(NamedTuple):
    mask: int        # output mask rho
    shift: int       # input difference gamma
    constant: int    # 0: invariant, 1: complementary


def linear_structures(s):
    """All (rho, gamma) with x -> rho.S(x ^ gamma) ^ rho.S(x) constant."""
    act = _act(s)
    hits = np.argwhere(np.abs(act[1:, 1:]) == s.size)
    out = []
    for d, r in hits:
        d, r = int(d) + 1, int(r) + 1
        out.append(LinearStructure(r, d, 0 if act[d, r] > 0 else 1))
    out.sort(key=lambda t: (t.mask, t.shift))
    return out


def correlation_immunity_order(s):
    """Largest k with walsh[g, r] = 0 for all g != 0 and 1 <= wt(r) <= k."""
    w = _walsh(s)
    rw = WEIGHT[np.arange(s.size)]
    k = 0
    while k < s.n:
        cols = rw == k + 1
        if np.any(w[1:, cols] != 0):
            break
        k += 1
    return k


@dataclass(frozen=True, eq=False)
class LinearProfile:
    lat_raw: SpectrumTable
    lat_centered: SpectrumTable
    lap: Fraction
    nl: int
    lbn: int
    ls: list
    ci_order: int

    @property
    def ls_count(self):
        return len(self.ls)


def linear_profile(s):
    raw, centred = lat(s)
    lbn = linear_branch_number(s) if s.n == s.m else None
    return LinearProfile(raw, centred, linear_approximation_probability(s),
                         nonlinearity(s), lbn, linear_structures(s),
                         correlation_immunity_order(s))
