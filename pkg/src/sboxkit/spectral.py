"""Walsh spectrum, autocorrelation and algebraic normal form.

Orientation of the Walsh table is fixed once for the whole package:
``walsh[g, r] = sum_x (-1)^(g.S(x) + r.x)`` with ``g`` the *output* mask
(rows, 2^m) and ``r`` the *input* mask (columns, 2^n). The
autocorrelation table is indexed the other way round, ``act[d, r]`` with
``d`` an input difference (rows, 2^n) and ``r`` an output mask.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._bits import PARITY, WEIGHT, fwht, moebius, xor_grid
from .core import BooleanComponent, PreconditionError

# table-based metrics allocate 2^(n+m) entries
MAX_TABLE_BITS = 22

KINDS = ("walsh", "act", "lat_raw", "lat_centered", "ddt", "bct", "dlct")


@dataclass(frozen=True, eq=False)
class SpectrumTable:
    kind: str
    entries: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        self.entries.setflags(write=False)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def __getitem__(self, idx):
        v = self.entries[idx]
        return int(v) if np.ndim(v) == 0 else v

    def __eq__(self, other):
        if not isinstance(other, SpectrumTable):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def nontrivial(self):
        """Entries with both indices nonzero."""
        return self.entries[1:, 1:]

    def max_abs(self):
        """Largest magnitude with both indices nonzero."""
        sub = self.nontrivial()
        return int(np.abs(sub).max()) if sub.size else 0

    def to_csv(self):
        lines = [",".join([self.kind] + [str(c) for c in range(self.cols)])]
        for r in range(self.rows):
            lines.append(",".join([str(r)] + [str(int(v)) for v in self.entries[r]]))
        return "\n".join(lines) + "\n"


def check_table_size(s):
    if s.n + s.m > MAX_TABLE_BITS:
        raise PreconditionError(
            f"{s.n}x{s.m} S-box exceeds the {MAX_TABLE_BITS}-bit table budget")


def _component_signs(s):
    """signs[g, x] = (-1)^(g.S(x)), one row per output mask."""
    masks = np.arange(s.out_size)[:, None]
    return 1 - 2 * PARITY[masks & s.array[None, :]].astype(np.int64)


@lru_cache(maxsize=64)
def _walsh(s):
    check_table_size(s)
    w = fwht(_component_signs(s), axis=1)
    w.setflags(write=False)
    return w


@lru_cache(maxsize=64)
def _act(s):
    w = _walsh(s)
    # Wiener-Khinchin: autocorrelation = inverse transform of the power spectrum
    acc = fwht(w * w, axis=1)
    if np.any(acc % s.size):
        raise ArithmeticError("autocorrelation is not integral")
    a = np.ascontiguousarray((acc // s.size).T)
    a.setflags(write=False)
    return a


def walsh_spectrum(s, method="fast"):
    """Walsh table, rows = output mask, columns = input mask."""
    if method == "fast":
        return SpectrumTable("walsh", _walsh(s).copy())
    if method == "naive":
        return SpectrumTable("walsh", walsh_naive(s))
    raise ValueError(f"unknown method {method!r}")


def walsh_naive(s):
    check_table_size(s)
    xs = np.arange(s.size)
    out = np.zeros((s.out_size, s.size), dtype=np.int64)
    for g in range(s.out_size):
        gs = PARITY[g & s.array]
        for r in range(s.size):
            bits = gs ^ PARITY[r & xs]
            out[g, r] = s.size - 2 * int(bits.sum())
    return out


def autocorrelation_table(s, method="fast"):
    """ACT indexed (input difference, output mask).

    ``fast`` goes through the squared Walsh spectrum, ``naive`` evaluates
    the defining sum entry by entry.
    """
    if method == "fast":
        return SpectrumTable("act", _act(s).copy())
    if method == "naive":
        return SpectrumTable("act", act_naive(s))
    raise ValueError(f"unknown method {method!r}")


def act_naive(s):
    check_table_size(s)
    grid = xor_grid(s.size)
    out = np.zeros((s.size, s.out_size), dtype=np.int64)
    for d in range(s.size):
        deriv = s.array[grid[d]] ^ s.array
        for r in range(s.out_size):
            out[d, r] = s.size - 2 * int(PARITY[r & deriv].sum())
    return out


def absolute_indicator(s):
    return SpectrumTable("act", _act(s).copy()).max_abs()


SSI_CONVENTIONS = ("all", "nonzero", "component_max")


def sum_of_squares_indicator(s, convention="all"):
    """Sum of squared autocorrelation coefficients.

    ``all`` sums every (difference, mask) pair, ``nonzero`` drops the zero
    row and column, ``component_max`` is the largest single-component sum
    sum_d act[d, r]^2 over nonzero masks r.
    """
    sq = _act(s) ** 2  # at most 2^(3n+m) in total, fits int64 under the table budget
    if convention == "all":
        return int(sq.sum())
    if convention == "nonzero":
        return int(sq[1:, 1:].sum())
    if convention == "component_max":
        return int(sq[:, 1:].sum(axis=0).max()) if s.m else 0
    raise ValueError(f"unknown SSI convention {convention!r}")


# --- algebraic normal form ------------------------------------------------

@dataclass(frozen=True)
class AnfPolynomial:
    """Coefficient ``coefficients[u]`` multiplies the monomial prod_{i in u} x_i."""

    n: int
    coefficients: tuple

    @property
    def degree(self):
        degs = [WEIGHT[u] for u, c in enumerate(self.coefficients) if c]
        return int(max(degs)) if degs else 0

    def monomials(self):
        return [u for u, c in enumerate(self.coefficients) if c]

    def is_zero(self):
        return not any(self.coefficients)

    def __str__(self):
        terms = []
        for u in self.monomials():
            if u == 0:
                terms.append("1")
            else:
                terms.append("*".join(f"x{i}" for i in range(self.n) if u >> i & 1))
        return " + ".join(terms) if terms else "0"


def _truth_values(truth):
    if isinstance(truth, BooleanComponent):
        truth = truth.truth
    values = np.array(truth, dtype=np.uint8)
    size = len(values)
    if size == 0 or size & (size - 1):
        raise ValueError("truth table length must be a power of two")
    if np.any(values > 1):
        raise ValueError("truth table entries must be 0 or 1")
    return values


def anf(truth):
    """Moebius transform of a truth table (applying it twice is the identity)."""
    values = _truth_values(truth)
    n = len(values).bit_length() - 1
    return AnfPolynomial(n, tuple(int(c) for c in moebius(values)))


def anf_naive(truth):
    """c_u = XOR of f(x) over all x whose support is contained in u."""
    values = _truth_values(truth)
    n = len(values).bit_length() - 1
    coeffs = []
    for u in range(len(values)):
        acc = 0
        for x in range(len(values)):
            if x & u == x:
                acc ^= int(values[x])
        coeffs.append(acc)
    return AnfPolynomial(n, tuple(coeffs))


@lru_cache(maxsize=64)
def _component_degrees(s):
    check_table_size(s)
    bits = PARITY[np.arange(s.out_size)[:, None] & s.array[None, :]].astype(np.uint8)
    coeffs = moebius(bits, axis=1)
    weights = np.where(coeffs == 1, WEIGHT[np.arange(s.size)][None, :], -1)
    degs = weights.max(axis=1)
    degs[degs < 0] = 0
    degs.setflags(write=False)
    return degs


def component_degrees(s):
    """Degree of mask . S for every mask (index 0 is the zero function)."""
    return [int(d) for d in _component_degrees(s)]


def algebraic_degree(s):
    """Maximum degree over the coordinate functions."""
    degs = _component_degrees(s)
    return int(max(degs[1 << j] for j in range(s.m)))


def min_component_degree(s):
    degs = _component_degrees(s)
    return int(degs[1:].min()) if s.m else 0


def coordinate_anfs(s):
    return [anf(PARITY[s.array & (1 << j)]) for j in range(s.m)]
