import json
from fractions import Fraction

import pytest

from sboxkit import bounds
from sboxkit.bounds import bounds_for, verdict, verdict_note


def test_nl_even_width_is_exclusive_above_half():
    e = bounds_for("nl", 8)
    assert (e.lb, e.ub, e.ub_inclusive) == (0, 120, False)
    assert not e.contains(120) and e.contains(119)
    # m <= n/2 admits bent functions
    assert bounds_for("nl", 8, 4).ub_inclusive


def test_nl_odd_width_inclusive():
    e = bounds_for("nl", 5)
    assert (e.ub, e.ub_inclusive) == (12, True)


def test_du_and_dbn_ranges():
    e = bounds_for("du", 4)
    assert (e.lb, e.ub) == (2, 16)
    e = bounds_for("dbn", 8)
    assert (e.lb, e.ub) == (2, 6)


def test_dlu_is_normalised():
    e = bounds_for("dlu", 4)
    assert e.lb == Fraction(1, 8) and e.ub == Fraction(1, 2) and not e.lb_inclusive


def test_dpa_ranges_depend_on_balance():
    assert bounds_for("dpa_snr", 4).lb == 1
    assert bounds_for("dpa_snr", 4, balanced=False).lb == 0
    assert bounds_for("dpa_snr", 4).ub == 4


def test_verdicts():
    assert verdict(16, bounds_for("du", 4)) == "poor"
    assert verdict(4, bounds_for("du", 4)) == "ideal"
    assert verdict(None, bounds_for("du", 4)) is None
    assert verdict(1, bounds_for("du", 4)) == "out_of_bounds"


def test_nl_eight_at_five_bits_is_acceptable():
    # 8 of a possible 12 sits below the top quarter of the range
    assert verdict(8, bounds_for("nl", 5)) == "acceptable"
    assert verdict(12, bounds_for("nl", 5)) == "ideal"


def test_udb_is_aspirational():
    e = bounds_for("udb", 4)
    assert verdict(3, e) == "out_of_bounds"
    assert verdict_note(3, e) == "nonzero UDB"
    assert verdict(0, e) == "ideal" and verdict_note(0, e) == ""


def test_exact_ideal_scoring():
    e = bounds_for("sac", 4)
    assert verdict(Fraction(1, 2), e) == "ideal"
    assert verdict(1, e) == "poor"


def test_band_parameter():
    e = bounds_for("du", 4)
    # DU=4 scores 12/14 of the way to the ideal end
    assert verdict(4, e, band=0.25) == "ideal"
    assert verdict(4, e, band=0.1) == "acceptable"


@pytest.mark.parametrize("n", range(1, 17))
def test_lower_bound_never_exceeds_upper(n):
    for m in range(1, 17):
        for e in bounds.catalogue(n, m):
            if not e.aspirational:
                assert float(e.lb) <= float(e.ub), (e.prop, n, m)


def test_tiny_widths_collapse():
    e = bounds_for("lbn", 2)
    assert (e.lb, e.ub) == (2, 2) and e.note
    assert bounds_for("ad", 1).ub == 1


def test_unknown_property():
    with pytest.raises(KeyError):
        bounds_for("xyz", 4)


def test_catalogue_json():
    data = json.loads(bounds.catalogue_json(4))
    assert data["n"] == 4 and data["verdict_band"] == 0.25
    props = [b["prop"] for b in data["bounds"]]
    assert props == list(bounds.PROPERTIES)
    lap = next(b for b in data["bounds"] if b["prop"] == "lap")
    assert lap["ub"] == 0.5


def test_describe():
    assert bounds_for("nl", 8).describe() == "0 <= nl < 120"
    assert bounds_for("udb", 4).describe() == "udb = 0"
