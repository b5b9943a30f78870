"""Affine transformations of S-boxes and the affine-invariance harness.

Bit matrices are stored as tuples of row integers: bit i of ``M x`` is
the parity of ``rows[i] & x``.
"""

import json
from dataclasses import dataclass

import numpy as np

from ._bits import PARITY
from .core import SBox, SBoxError


def _identity_rows(k):
    return tuple(1 << i for i in range(k))


def gf2_rank(rows):
    rows = list(rows)
    rank = 0
    for bit in range(max((r.bit_length() for r in rows), default=0)):
        pivot = next((i for i in range(rank, len(rows)) if rows[i] >> bit & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> bit & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def gf2_inverse(rows):
    """Gauss-Jordan inverse of a k x k matrix; lowest-index pivot first."""
    k = len(rows)
    left = list(rows)
    right = list(_identity_rows(k))
    for col in range(k):
        pivot = next((i for i in range(col, k) if left[i] >> col & 1), None)
        if pivot is None:
            raise SBoxError("matrix is singular over GF(2)")
        left[col], left[pivot] = left[pivot], left[col]
        right[col], right[pivot] = right[pivot], right[col]
        for i in range(k):
            if i != col and left[i] >> col & 1:
                left[i] ^= left[col]
                right[i] ^= right[col]
    return tuple(right)


def mat_vec(rows, x):
    y = 0
    for i, r in enumerate(rows):
        y |= (bin(r & x).count("1") & 1) << i
    return y


def mat_mul(a_rows, b_rows):
    """Rows of A*B: row i of the product is XOR of B's rows selected by A's row i."""
    out = []
    for r in a_rows:
        acc = 0
        for j, br in enumerate(b_rows):
            if r >> j & 1:
                acc ^= br
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class AffineTransform:
    """x -> B * S(A*x ^ a) ^ b."""

    A: tuple
    a: int
    B: tuple
    b: int

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(int(r) for r in self.A))
        object.__setattr__(self, "B", tuple(int(r) for r in self.B))
        for name, rows, const in (("A", self.A, self.a), ("B", self.B, self.b)):
            k = len(rows)
            if k == 0 or any(r >> k for r in rows) or const >> k or const < 0:
                raise SBoxError(f"{name} does not describe a {k}x{k} map")
            if gf2_rank(rows) != k:
                raise SBoxError(f"{name} is singular over GF(2)")

    @property
    def n(self):
        return len(self.A)

    @property
    def m(self):
        return len(self.B)

    @classmethod
    def identity(cls, n, m=None):
        m = n if m is None else m
        return cls(_identity_rows(n), 0, _identity_rows(m), 0)

    def to_json(self):
        return json.dumps({"n": self.n, "m": self.m, "A": list(self.A), "a": self.a,
                           "B": list(self.B), "b": self.b}, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            return cls(tuple(data["A"]), int(data["a"]), tuple(data["B"]), int(data["b"]))
        except (KeyError, TypeError) as exc:
            raise SBoxError(f"malformed transform: {exc}") from exc


def _apply_rows(rows, values):
    out = np.zeros_like(values)
    for i, r in enumerate(rows):
        out |= PARITY[values & r].astype(values.dtype) << i
    return out


def apply_affine(s, t):
    if t.n != s.n or t.m != s.m:
        raise SBoxError(f"{t.n}x{t.m} transform does not fit a {s.n}x{s.m} S-box")
    xs = np.arange(s.size, dtype=np.int64)
    inner = _apply_rows(t.A, xs) ^ t.a
    outer = _apply_rows(t.B, s.array[inner]) ^ t.b
    return SBox(s.n, s.m, tuple(int(v) for v in outer), source=s.source)


def inverse_transform(t):
    """The transform undoing ``t``: (A^-1, A^-1 a, B^-1, B^-1 b)."""
    ai = gf2_inverse(t.A)
    bi = gf2_inverse(t.B)
    return AffineTransform(ai, mat_vec(ai, t.a), bi, mat_vec(bi, t.b))


def _random_invertible(k, rng):
    while True:
        rows = tuple(int(v) for v in rng.integers(0, 1 << k, size=k))
        if gf2_rank(rows) == k:
            return rows


def random_affine(n, m=None, seed=0):
    """Deterministic random transform; the same seed gives the same transform."""
    m = n if m is None else m
    rng = np.random.default_rng(seed)
    A = _random_invertible(n, rng)
    a = int(rng.integers(0, 1 << n))
    B = _random_invertible(m, rng)
    b = int(rng.integers(0, 1 << m))
    return AffineTransform(A, a, B, b)


# metrics asserted equal on S and its transform
INVARIANT_METRICS = ("nl", "du", "bu", "dlu_abs", "ad", "ai", "ssi_nonzero", "lap",
                     "balanced", "bijective")
# metrics shown side by side but not asserted
VARIANT_METRICS = ("op", "fp", "ofp", "sac", "bic", "lbn", "dbn", "ls", "dpa_snr", "to",
                   "ci", "udb", "pc")


def _metric(s, key):
    from . import avalanche, combined, core, differential, linear, sca, spectral
    square = s.n == s.m
    bij = core.is_bijective(s)
    table = {
        "nl": lambda: linear.nonlinearity(s),
        "du": lambda: differential.differential_uniformity(s),
        "bu": lambda: combined.boomerang_uniformity(s) if bij and s.n <= combined.MAX_BCT_BITS else None,
        "dlu_abs": lambda: combined.differential_linear_uniformity(s)[0],
        "ad": lambda: spectral.algebraic_degree(s),
        "ai": lambda: spectral.absolute_indicator(s),
        "ssi_nonzero": lambda: spectral.sum_of_squares_indicator(s, "nonzero"),
        "lap": lambda: linear.linear_approximation_probability(s),
        "balanced": lambda: core.is_balanced(s),
        "bijective": lambda: bij,
        "op": lambda: core.permutation_order(s) if bij else None,
        "fp": lambda: len(core.fixed_points(s)) if square else None,
        "ofp": lambda: len(core.opposite_fixed_points(s)) if square else None,
        "sac": lambda: avalanche.sac_scalar(s),
        "bic": lambda: avalanche.bic_scalar(s) if s.m >= 2 else None,
        "lbn": lambda: _safe(linear.linear_branch_number, s) if square else None,
        "dbn": lambda: differential.differential_branch_number(s) if square else None,
        "ls": lambda: len(linear.linear_structures(s)),
        "dpa_snr": lambda: sca.dpa_snr(s),
        "to": lambda: sca.transparency_order(s),
        "ci": lambda: linear.correlation_immunity_order(s),
        "udb": lambda: len(differential.undisturbed_bits(s)),
        "pc": lambda: differential.propagation_criteria_order(s),
    }
    return table[key]()


def _safe(fn, s):
    try:
        return fn(s)
    except SBoxError:
        return None


@dataclass(frozen=True)
class InvarianceRow:
    metric: str
    before: object
    after: object
    asserted: bool

    @property
    def preserved(self):
        return self.before == self.after


def invariance_report(s, t, metrics=None):
    """Compare metrics on ``s`` and ``apply_affine(s, t)``.

    Rows for INVARIANT_METRICS carry ``asserted=True``; a False
    ``preserved`` on such a row indicates a bug, not a property of ``s``.
    """
    s2 = apply_affine(s, t)
    keys = metrics or INVARIANT_METRICS + VARIANT_METRICS
    rows = []
    for key in keys:
        rows.append(InvarianceRow(key, _metric(s, key), _metric(s2, key),
                                  key in INVARIANT_METRICS))
    return rows


def invariance_violations(rows):
    return [r for r in rows if r.asserted and not r.preserved]
