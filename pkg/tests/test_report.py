import csv
import io
import json
from fractions import Fraction

import pytest

from sboxkit import builtin, report
from sboxkit.core import SBox, identity


@pytest.fixture(scope="module")
def ascon_report():
    return report.analyze(builtin("ascon"), timestamp=False)


def test_ascon_values(ascon_report):
    r = ascon_report
    expected = {"nl": 8, "du": 8, "ad": 2, "lbn": 3, "dbn": 3, "lap": Fraction(1, 4),
                "ci": 0, "pc": 0}
    for key, val in expected.items():
        assert r.value(key) == val, key


def test_every_metric_once(ascon_report):
    ids = [rec.id for rec in ascon_report.records]
    assert sorted(ids) == sorted(report.METRICS)
    assert len(ids) == len(set(ids))


def test_ordering_by_category_then_id(ascon_report):
    keys = [(report.CATEGORIES.index(rec.category), rec.id) for rec in ascon_report.records]
    assert keys == sorted(keys)


def test_categories():
    cat = {k: v[0] for k, v in report.METRICS.items()}
    assert cat["nl"] == "Linear" and cat["du"] == "Differential"
    assert cat["bu"] == "Boomerang" and cat["dlu"] == "Differential-Linear"
    assert cat["ad"] == "Algebraic" and cat["to"] == "Side Channel"
    assert cat["op"] == "Generic"


def test_non_bijective_marks_not_applicable():
    s = SBox(4, 4, tuple(x & 0xE for x in range(16)))
    r = report.analyze(s)
    for key in ("op", "fp", "ofp", "bu"):
        assert r[key].value is None
        assert r[key].note.startswith("not applicable")
    assert r.value("nl") == 0


def test_identity_report():
    r = report.analyze(identity(4))
    assert (r.value("nl"), r.value("du"), r.value("ad"), r.value("udb"), r.value("ls")) == \
        (0, 16, 1, 60, 225)


def test_selection_and_unknown_metric():
    r = report.analyze(identity(3), ["nl", "du"])
    assert [rec.id for rec in r.records] == ["nl", "du"]
    with pytest.raises(ValueError):
        report.analyze(identity(3), ["nope"])


def test_failure_isolation(monkeypatch):
    def boom(s):
        raise RuntimeError("kaput")
    monkeypatch.setattr(report.linear, "nonlinearity", boom)
    r = report.analyze(identity(3), ["nl", "du"])
    assert r["nl"].note.startswith("failed") and r.value("du") == 8


def test_json_round_trip(ascon_report):
    text = report.render(ascon_report, "json")
    assert json.loads(text)["schema_version"] == 1
    assert report.from_json(text) == ascon_report


def test_json_round_trip_with_infinity():
    r = report.analyze(SBox(2, 2, (1, 1, 1, 1)), ["dpa_snr"])
    assert report.from_json(report.render(r, "json")) == r


def test_reproducible_json():
    a = report.render(report.analyze(builtin("gift"), timestamp=False), "json")
    b = report.render(report.analyze(builtin("gift"), timestamp=False), "json")
    assert a == b


def test_csv_layout(ascon_report):
    text = report.render(ascon_report, "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["metric", "value", "lb", "ub", "verdict", "category"]
    assert len(rows) == 1 + len(report.METRICS)


def test_text_six_decimals(ascon_report):
    text = report.render(ascon_report, "text")
    line = next(l for l in text.splitlines() if l.strip().startswith("DPA"))
    assert "3.015113" in line
    assert report.format_value(3.0151134457) == "3.015113"
    assert report.format_value(Fraction(1, 4)) == "0.250000"


def test_unknown_format(ascon_report):
    with pytest.raises(ValueError):
        report.render(ascon_report, "pdf")


def test_compare_rows():
    reps = [report.analyze(builtin(b), timestamp=False) for b in report.TABLE5]
    cmp = report.compare(reps)
    assert len(cmp.rows) == 24
    assert len(cmp.columns) == 5


def test_compare_identical_reports():
    r = report.analyze(builtin("present"), timestamp=False)
    assert report.compare([r, r]).differing_rows() == []


def test_compare_present_gift_du():
    reps = [report.analyze(builtin(b), ["du"]) for b in ("present", "gift")]
    row = next(row for row in report.compare(reps).rows if row[1] == "du")
    assert row[2] == (4, 6)


def test_compare_needs_two():
    with pytest.raises(ValueError):
        report.compare([report.analyze(identity(2))])


def test_table5_deltas_are_labelled():
    r = report.analyze(builtin("gift"), table5_compare=True)
    deltas = {rec.id: rec.delta for rec in r.deltas()}
    assert deltas["du"]["published"] == 4 and deltas["du"]["computed"] == 6
    assert deltas["du"]["kind"] == "column_shuffle"


def test_table5_compare_ignored_for_other_boxes():
    r = report.analyze(identity(4), table5_compare=True)
    assert r.deltas() == []
