"""Differential cryptanalysis metrics: DDT, DU, branch number, PC, UDB."""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from ._bits import WEIGHT, xor_grid
from .core import PreconditionError, inverse
from .spectral import SpectrumTable, _act, check_table_size


@lru_cache(maxsize=64)
def _ddt(s):
    check_table_size(s)
    grid = xor_grid(s.size)
    derivs = s.array[grid] ^ s.array[None, :]
    # offset each row so a single bincount fills the whole table
    flat = derivs + (np.arange(s.size) * s.out_size)[:, None]
    table = np.bincount(flat.ravel(), minlength=s.size * s.out_size)
    table = table.reshape(s.size, s.out_size).astype(np.int64)
    table.setflags(write=False)
    return table


def ddt(s):
    """DDT[d_in, d_out] = #{x : S(x ^ d_in) ^ S(x) = d_out}."""
    return SpectrumTable("ddt", _ddt(s).copy())


def ddt_naive(s):
    table = np.zeros((s.size, s.out_size), dtype=np.int64)
    for d in range(s.size):
        for x in range(s.size):
            table[d, s.table[x ^ d] ^ s.table[x]] += 1
    return table


def differential_uniformity(s):
    return int(_ddt(s)[1:].max())


def differential_branch_number(s):
    """min wt(d_in) + wt(d_out) over reachable transitions with d_in != 0."""
    if s.n != s.m:
        raise PreconditionError("differential branch number is only defined for n = m")
    table = _ddt(s)
    wi = WEIGHT[np.arange(s.size)][:, None]
    wo = WEIGHT[np.arange(s.out_size)][None, :]
    total = np.where(table > 0, wi + wo, np.iinfo(np.int64).max)
    return int(total[1:].min())


def propagation_criteria_order(s):
    """Largest l with act[d, r] = 0 for 1 <= wt(d) <= l and every r != 0."""
    act = _act(s)
    dw = WEIGHT[np.arange(s.size)]
    level = 0
    while level < s.n:
        rows = dw == level + 1
        if np.any(act[rows, 1:] != 0):
            break
        level += 1
    return level


class UndisturbedBit(NamedTuple):
    difference: int
    bit: int
    value: int
    direction: str = "forward"


def _undisturbed(table, out_bits, direction):
    found = []
    for d in range(1, table.shape[0]):
        reachable = np.nonzero(table[d])[0]
        for j in range(out_bits):
            bits = (reachable >> j) & 1
            if bits.min() == bits.max():
                found.append(UndisturbedBit(d, j, int(bits[0]), direction))
    return found


def undisturbed_bits(s, include_inverse=False):
    """Output-difference bits fixed across every transition of some d_in.

    With ``include_inverse`` the same scan is run on S^-1 (requires a
    bijection) and those witnesses are appended with direction "inverse".
    """
    found = _undisturbed(_ddt(s), s.m, "forward")
    if include_inverse:
        found += _undisturbed(_ddt(inverse(s)), s.n, "inverse")
    return found


@dataclass(frozen=True, eq=False)
class DifferentialProfile:
    ddt: SpectrumTable
    du: int
    dbn: int
    pc_order: int
    udb: list

    @property
    def udb_count(self):
        return len(self.udb)


def differential_profile(s):
    dbn = differential_branch_number(s) if s.n == s.m else None
    return DifferentialProfile(ddt(s), differential_uniformity(s), dbn,
                               propagation_criteria_order(s), undisturbed_bits(s))
