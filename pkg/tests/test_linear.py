from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from sboxkit import linear, spectral
from sboxkit.core import PreconditionError, SBox, identity

import oracles
from conftest import HEYS, functions, permutations

# centred LAT rows 1 and 2 of the Heys box, as printed in the tutorial
HEYS_LAT_ROW1 = [0, 0, -2, -2, 0, 0, -2, 6, 2, 2, 0, 0, 2, 2, 0, 0]
HEYS_LAT_ROW2 = [0, 0, -2, -2, 0, 0, -2, -2, 0, 0, 2, 2, 0, 0, -6, 2]


def test_heys_lat_rows(heys):
    _, centred = linear.lat(heys)
    assert list(centred[1]) == HEYS_LAT_ROW1
    assert list(centred[2]) == HEYS_LAT_ROW2
    assert centred[0xB, 0x4] == 4


@given(functions())
def test_lat_matches_oracle_both_routes(s):
    expected = np.array(oracles.lat(list(s.table), s.n, s.m))
    assert np.array_equal(linear.lat(s, "walsh")[0].entries, expected)
    assert np.array_equal(linear.lat(s, "count")[0].entries, expected)


@given(functions())
def test_centred_lat_is_half_walsh(s):
    _, centred = linear.lat(s)
    w = spectral.walsh_spectrum(s).entries
    assert np.array_equal(2 * centred.entries, w.T)


@given(functions())
def test_nonlinearity_matches_oracle(s):
    assert linear.nonlinearity(s) == oracles.nonlinearity(list(s.table), s.n, s.m)


def test_heys_scalars(heys):
    assert linear.nonlinearity(heys) == 2
    assert linear.linear_approximation_probability(heys) == Fraction(3, 8)
    assert linear.linear_branch_number(heys) == 2
    assert len(linear.linear_structures(heys)) == 7
    assert linear.correlation_immunity_order(heys) == 0


def test_identity_closed_forms():
    s = identity(4)
    assert linear.nonlinearity(s) == 0
    assert linear.linear_approximation_probability(s) == Fraction(1, 2)
    assert len(linear.linear_structures(s)) == 225
    assert linear.linear_branch_number(s) == 2


@given(permutations())
def test_lbn_matches_oracle(s):
    assert linear.linear_branch_number(s) == oracles.lbn(list(s.table), s.n, s.n)


@given(functions())
def test_linear_structures_match_oracle(s):
    found = linear.linear_structures(s)
    assert len(found) == oracles.ls_count(list(s.table), s.n, s.m)
    for t in found:
        vals = {oracles.dot(t.mask, s.table[x] ^ s.table[x ^ t.shift]) for x in range(s.size)}
        assert vals == {t.constant}


@given(functions())
def test_ci_matches_oracle(s):
    assert linear.correlation_immunity_order(s) == oracles.ci_order(list(s.table), s.n, s.m)


def test_lbn_requires_square():
    with pytest.raises(PreconditionError):
        linear.linear_branch_number(SBox(2, 1, (0, 1, 1, 0)))


def test_profile_fields(heys):
    p = linear.linear_profile(heys)
    assert p.nl == 2 and p.ls_count == 7 and p.lbn == 2
    assert p.lat_raw[0, 0] == 16
