"""Side-channel design metrics: DPA signal-to-noise ratio and transparency order."""

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._bits import WEIGHT
from .spectral import _act, _walsh


def _dpa_quartic_sum(s):
    """sum over input masks r of (sum_j walsh[e_j, r])^4, as a Python int."""
    w = _walsh(s)
    cols = w[[1 << j for j in range(s.m)]].sum(axis=0)
    return sum(int(c) ** 4 for c in cols)


def dpa_snr(s):
    """m * 2^(2n) / sqrt(sum_r (sum_j walsh[e_j, r])^4).

    A zero quartic sum yields ``inf`` together with a RuntimeWarning.
    """
    total = _dpa_quartic_sum(s)
    if total == 0:
        warnings.warn("DPA-SNR quartic sum is zero", RuntimeWarning, stacklevel=2)
        return math.inf
    return s.m * s.size * s.size / math.sqrt(total)


def _to_penalties(s):
    """penalty[beta] = sum_{d != 0} |sum_j (-1)^(beta_j) act[d, e_j]|, exact ints."""
    act = _act(s)
    coord = act[1:, [1 << j for j in range(s.m)]]  # (2^n - 1, m)
    betas = np.arange(s.out_size)
    signs = 1 - 2 * ((betas[:, None] >> np.arange(s.m)[None, :]) & 1)
    return np.abs(signs @ coord.T).sum(axis=1), betas


def transparency_order_exact(s):
    """Transparency order as an exact Fraction."""
    penalties, betas = _to_penalties(s)
    denom = s.size * s.size - s.size
    best = None
    for beta, pen in zip(betas, penalties):
        v = Fraction(abs(s.m - 2 * int(WEIGHT[beta]))) - Fraction(int(pen), denom)
        if best is None or v > best:
            best = v
    return best


def transparency_order(s):
    """max_beta (|m - 2 wt(beta)| - penalty(beta) / (2^(2n) - 2^n))."""
    return float(transparency_order_exact(s))


@dataclass(frozen=True)
class ScaProfile:
    dpa_snr: float
    transparency_order: float


def sca_profile(s):
    return ScaProfile(dpa_snr(s), transparency_order(s))
