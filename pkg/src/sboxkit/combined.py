"""Boomerang and differential-linear connectivity tables."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._bits import PARITY, fwht, xor_grid
from .core import PreconditionError, inverse, is_bijective
from .differential import _ddt
from .spectral import SpectrumTable

# the boomerang table is cubic in 2^n; larger boxes are refused by policy
MAX_BCT_BITS = 8


def _check_bct(s):
    if not is_bijective(s):
        raise PreconditionError("the boomerang table requires a bijective S-box")
    if s.n > MAX_BCT_BITS:
        raise PreconditionError(f"the boomerang table is limited to n <= {MAX_BCT_BITS}")


def bct(s):
    """BCT[d, nabla] = #{x : S^-1(S(x)^nabla) ^ S^-1(S(x^d)^nabla) = d}.

    For fixed nabla put D(x) = S^-1(S(x) ^ nabla) ^ x; the defining
    condition is then D(x) = D(x ^ d), which is one vectorised comparison
    per nabla.
    """
    _check_bct(s)
    inv = inverse(s).array
    grid = xor_grid(s.size)
    xs = np.arange(s.size)
    table = np.empty((s.size, s.size), dtype=np.int64)
    for nabla in range(s.size):
        d = inv[s.array ^ nabla] ^ xs
        table[:, nabla] = (d[grid] == d[None, :]).sum(axis=1)
    return SpectrumTable("bct", table)


def bct_naive(s):
    """Literal triple loop over (d, nabla, x)."""
    _check_bct(s)
    S = s.table
    inv = inverse(s).table
    size = s.size
    table = np.zeros((size, size), dtype=np.int64)
    for d in range(size):
        for nabla in range(size):
            c = 0
            for x in range(size):
                if inv[S[x] ^ nabla] ^ inv[S[x ^ d] ^ nabla] == d:
                    c += 1
            table[d, nabla] = c
    return table


def bct_cellwise(s):
    """Definition evaluated cell by cell, vectorised over x only."""
    _check_bct(s)
    S = s.array
    inv = inverse(s).array
    xs = np.arange(s.size)
    table = np.zeros((s.size, s.size), dtype=np.int64)
    for d in range(s.size):
        shifted = S[xs ^ d]
        for nabla in range(s.size):
            table[d, nabla] = int(np.count_nonzero((inv[S ^ nabla] ^ inv[shifted ^ nabla]) == d))
    return table


def boomerang_uniformity(s):
    return bct(s).max_abs()


def dlct(s):
    """DLCT[d, r] = #{x : r.S(x) = r.S(x ^ d)} - 2^(n-1).

    Each row is half the Walsh transform of the matching DDT row.
    """
    half = fwht(_ddt(s), axis=1) // 2
    return SpectrumTable("dlct", np.ascontiguousarray(half))


def dlct_naive(s):
    grid = xor_grid(s.size)
    out = np.zeros((s.size, s.out_size), dtype=np.int64)
    for d in range(s.size):
        deriv = s.array[grid[d]] ^ s.array
        for r in range(s.out_size):
            agree = s.size - int(PARITY[r & deriv].sum())
            out[d, r] = agree - s.size // 2
    return out


def differential_linear_uniformity(s):
    """Return ``(dlu_abs, dlu_bias)``.

    ``dlu_abs`` is max |DLCT| over nonzero (d, r). ``dlu_bias`` is that
    value over 2^n, the largest differential-linear bias, in [0, 1/2].
    """
    dlu_abs = dlct(s).max_abs()
    return dlu_abs, Fraction(dlu_abs, s.size)


@dataclass(frozen=True, eq=False)
class CombinedProfile:
    bct: SpectrumTable
    bu: int
    dlct: SpectrumTable
    dlu_abs: int
    dlu_normalized: Fraction


def combined_profile(s):
    table = bct(s)
    dl = dlct(s)
    dlu_abs, ratio = differential_linear_uniformity(s)
    return CombinedProfile(table, table.max_abs(), dl, dlu_abs, ratio)
