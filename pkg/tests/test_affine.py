import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sboxkit import builtin
from sboxkit.affine import (AffineTransform, apply_affine, gf2_inverse, gf2_rank,
                            invariance_report, invariance_violations, inverse_transform,
                            mat_mul, mat_vec, random_affine)
from sboxkit.core import SBoxError, identity
from sboxkit.linear import nonlinearity
from sboxkit.spectral import algebraic_degree

from conftest import permutations


def test_identity_transform_is_noop(heys):
    assert apply_affine(heys, AffineTransform.identity(4)).table == heys.table


def test_output_complement(heys):
    t = AffineTransform.identity(4)
    t = AffineTransform(t.A, 0, t.B, 0xF)
    assert apply_affine(heys, t).table == tuple(v ^ 0xF for v in heys.table)


@given(permutations(), st.integers(0, 10_000))
def test_inverse_transform_restores(s, seed):
    t = random_affine(s.n, seed=seed)
    t2 = inverse_transform(t)
    # applying the inverse transform recovers the original table
    s2 = apply_affine(s, t)
    back = [mat_vec(t2.B, s2.table[mat_vec(t2.A, x) ^ t2.a]) ^ t2.b for x in range(s.size)]
    assert tuple(back) == s.table


def test_random_affine_is_deterministic():
    assert random_affine(5, seed=7) == random_affine(5, seed=7)
    assert random_affine(5, seed=7) != random_affine(5, seed=8)


def test_random_affine_always_invertible():
    for seed in range(1000):
        t = random_affine(4, seed=seed)
        assert gf2_rank(t.A) == 4 and gf2_rank(t.B) == 4


def test_json_round_trip():
    t = random_affine(6, seed=3)
    assert AffineTransform.from_json(t.to_json()) == t
    with pytest.raises(SBoxError):
        AffineTransform.from_json('{"A": [1]}')


def test_singular_rejected():
    with pytest.raises(SBoxError):
        AffineTransform((1, 1), 0, (1, 2), 0)
    with pytest.raises(SBoxError):
        AffineTransform((1, 2), 4, (1, 2), 0)


def test_shape_mismatch(heys):
    with pytest.raises(SBoxError):
        apply_affine(heys, AffineTransform.identity(3))


def test_matrix_helpers():
    a = (0b011, 0b010, 0b100)
    ai = gf2_inverse(a)
    assert mat_mul(a, ai) == (1, 2, 4)
    for x in range(8):
        assert mat_vec(ai, mat_vec(a, x)) == x
    with pytest.raises(SBoxError):
        gf2_inverse((1, 1))


def test_present_nl_preserved():
    s = builtin("present")
    for seed in range(50):
        assert nonlinearity(apply_affine(s, random_affine(4, seed=seed))) == 4


def test_gift_degree_preserved():
    s = builtin("gift")
    for seed in range(100):
        assert algebraic_degree(apply_affine(s, random_affine(4, seed=seed))) == 3


@settings(max_examples=30)
@given(permutations(n_values=(3, 4)), st.integers(0, 10_000))
def test_invariants_hold(s, seed):
    rows = invariance_report(s, random_affine(s.n, seed=seed))
    assert invariance_violations(rows) == []


def test_report_rows_flag_assertions(heys):
    rows = invariance_report(heys, random_affine(4, seed=1), metrics=("nl", "op"))
    assert [(r.metric, r.asserted) for r in rows] == [("nl", True), ("op", False)]
