"""Bit-level helpers shared by the metric modules."""

import numpy as np

MAX_BITS = 16

# parity and Hamming weight of every value below 2**MAX_BITS
_VALUES = np.arange(1 << MAX_BITS, dtype=np.uint32)
WEIGHT = np.zeros(1 << MAX_BITS, dtype=np.int64)
for _k in range(MAX_BITS):
    WEIGHT += (_VALUES >> _k) & 1
PARITY = (WEIGHT & 1).astype(np.int8)
del _k, _VALUES


def weight(v):
    return bin(v).count("1")


def dot(a, b):
    """Inner product of two bit vectors over GF(2)."""
    return bin(a & b).count("1") & 1


def sign_matrix(size_a, size_b):
    """Character matrix H[a, b] = (-1)^(a.b)."""
    a = np.arange(size_a)[:, None]
    b = np.arange(size_b)[None, :]
    return 1 - 2 * PARITY[a & b].astype(np.int64)


def xor_grid(size):
    """grid[d, x] = x ^ d, used to vectorise derivative computations."""
    r = np.arange(size)
    return r[:, None] ^ r[None, :]


def fwht(values, axis=-1):
    """Fast Walsh-Hadamard transform (unnormalised) along ``axis``.

    Integer input stays integer; the butterfly is applied over whole
    slices, so a 2-D array transforms every row (or column) at once.
    """
    a = np.moveaxis(np.array(values, dtype=np.int64, copy=True), axis, -1)
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError("transform length must be a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(lead + (size // (2 * h), 2, h))
        lo = a[..., 0, :]
        hi = a[..., 1, :]
        a = np.stack((lo + hi, lo - hi), axis=-2)
        h *= 2
    return np.moveaxis(a.reshape(lead + (size,)), -1, axis)


def moebius(values, axis=-1):
    """Binary Moebius transform along ``axis`` (an involution)."""
    a = np.moveaxis(np.array(values, dtype=np.uint8, copy=True), axis, -1)
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError("transform length must be a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(lead + (size // (2 * h), 2, h))
        lo = a[..., 0, :]
        hi = a[..., 1, :]
        a = np.stack((lo, lo ^ hi), axis=-2)
        h *= 2
    return np.moveaxis(a.reshape(lead + (size,)), -1, axis)
