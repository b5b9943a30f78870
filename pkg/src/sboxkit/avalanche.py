"""Strict avalanche and bit independence criteria."""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import PreconditionError


@dataclass(frozen=True, eq=False)
class AvalancheMatrix:
    """``counts[i, j]`` = #{x : bit j of S(x) ^ S(x ^ e_i) is 1}."""

    counts: np.ndarray
    denominator: int

    def entry(self, i, j):
        return Fraction(int(self.counts[i, j]), self.denominator)

    def entries(self):
        return [[self.entry(i, j) for j in range(self.counts.shape[1])]
                for i in range(self.counts.shape[0])]

    def max_entry(self):
        return Fraction(int(self.counts.max()), self.denominator)

    def satisfies_sac(self):
        return bool(np.all(2 * self.counts == self.denominator))

    def to_csv(self):
        rows = ["input_bit," + ",".join(f"out{j}" for j in range(self.counts.shape[1]))]
        for i, row in enumerate(self.counts):
            rows.append(f"in{i}," + ",".join(str(Fraction(int(c), self.denominator)) for c in row))
        return "\n".join(rows) + "\n"


def _flip_bits(s):
    """flips[i, x, j] = bit j of S(x) ^ S(x ^ e_i)."""
    xs = np.arange(s.size)
    deltas = np.stack([s.array ^ s.array[xs ^ (1 << i)] for i in range(s.n)])
    return ((deltas[:, :, None] >> np.arange(s.m)[None, None, :]) & 1).astype(np.int64)


def sac_matrix(s):
    counts = _flip_bits(s).sum(axis=1)
    counts.setflags(write=False)
    return AvalancheMatrix(counts, s.size)


def sac_scalar(s):
    """Largest flip probability; 1/2 is ideal, 1 means a bit always flips."""
    return sac_matrix(s).max_entry()


def bic_scalar(s):
    """Largest |Pearson correlation| between two output-bit flip indicators.

    Pairs in which either indicator is constant contribute 0.
    """
    if s.m < 2:
        raise PreconditionError("bit independence needs at least two output bits")
    flips = _flip_bits(s).astype(float)
    best = 0.0
    for i in range(s.n):
        cols = flips[i]
        centred = cols - cols.mean(axis=0)
        std = np.sqrt((centred ** 2).mean(axis=0))
        for u, v in itertools.combinations(range(s.m), 2):
            if std[u] == 0 or std[v] == 0:
                continue
            corr = (centred[:, u] * centred[:, v]).mean() / (std[u] * std[v])
            best = max(best, abs(float(corr)))
    return min(best, 1.0)
