from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from sboxkit import combined, differential, spectral
from sboxkit.core import PreconditionError, SBox, identity

import oracles
from conftest import functions, permutations


def test_identity_bct_is_full():
    t = combined.bct(identity(4))
    assert np.all(t.entries == 16)


def test_heys_values(heys):
    assert combined.boomerang_uniformity(heys) == 10
    assert combined.differential_linear_uniformity(heys) == (8, Fraction(1, 2))


@given(permutations(n_values=(3, 4)))
def test_bct_matches_oracle(s):
    expected = oracles.bct(list(s.table), s.n)
    assert combined.bct(s).entries.tolist() == expected
    assert combined.bct_naive(s).tolist() == expected
    assert combined.bct_cellwise(s).tolist() == expected


@given(permutations())
def test_bct_dominates_ddt(s):
    assert np.all(combined.bct(s).entries >= differential.ddt(s).entries)
    assert combined.boomerang_uniformity(s) >= differential.differential_uniformity(s)


@given(functions())
def test_dlct_matches_oracle(s):
    expected = oracles.dlct(list(s.table), s.n, s.m)
    assert combined.dlct(s).entries.tolist() == expected
    assert combined.dlct_naive(s).tolist() == expected


@given(functions())
def test_dlct_is_half_act(s):
    assert np.array_equal(2 * combined.dlct(s).entries, spectral.autocorrelation_table(s).entries)


def test_bct_requires_bijection():
    with pytest.raises(PreconditionError):
        combined.bct(SBox(2, 2, (0, 0, 1, 2)))


def test_bct_size_policy():
    big = SBox(9, 9, tuple(range(512)))
    with pytest.raises(PreconditionError):
        combined.bct(big)


def test_profile(heys):
    p = combined.combined_profile(heys)
    assert p.bu == 10 and p.dlu_abs == 8 and p.dlu_normalized == Fraction(1, 2)
