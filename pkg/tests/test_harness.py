import csv
import io

import pytest

from tsubdiv.harness import (CSV_COLUMNS, HostRule, SweepPlan, format_summary, records_csv,
                             run_sweep, summarize)


def _strip_millis(text):
    rows = list(csv.reader(io.StringIO(text)))
    col = rows[0].index("millis")
    return [r[:col] + r[col + 1:] for r in rows]


class TestHostRule:
    def test_parse(self):
        assert HostRule.parse("paper").order(16) == 901
        assert HostRule.parse("n=40").order(3) == 40
        assert HostRule.parse("ratio=0.5").order(12) == 72

    @pytest.mark.parametrize("text", ["", "ratio=0", "n=-3", "k=2", "ratio=x"])
    def test_bad(self, text):
        with pytest.raises(ValueError):
            HostRule.parse(text)


def test_plan_validation():
    with pytest.raises(ValueError):
        SweepPlan((), HostRule("paper"))
    with pytest.raises(ValueError):
        SweepPlan((3,), HostRule("paper"), seeds=0)
    with pytest.raises(ValueError):
        SweepPlan((3,), HostRule("paper"), generator="cubic")


def test_k1_always_succeeds():
    recs = run_sweep(SweepPlan((1,), HostRule("paper"), seeds=5))
    assert [r.outcome for r in recs] == ["success"] * 5
    assert summarize(recs)[0].successes == 5


def test_ratio_below_lower_bound_fails_fast():
    recs = run_sweep(SweepPlan((12,), HostRule.parse("ratio=0.5"), seeds=6))
    assert all(r.n == 72 and r.stage == "too-small-host" and r.attempts == 0 for r in recs)


def test_csv_stable_modulo_timing():
    plan = SweepPlan((3, 5), HostRule.parse("n=30"), seeds=4, sweep_seed=99)
    a = records_csv(run_sweep(plan))
    b = records_csv(run_sweep(plan, workers=2))
    assert a.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert _strip_millis(a) == _strip_millis(b)


def test_every_cell_once():
    plan = SweepPlan((2, 3, 4), HostRule.parse("n=25"), seeds=5)
    seen = []
    recs = run_sweep(plan, workers=3, on_record=seen.append)
    assert recs == seen
    assert [(r.k) for r in recs] == [2] * 5 + [3] * 5 + [4] * 5
    assert len({(r.k, r.seed) for r in recs}) == 15


def test_paley_hosts(tmp_path):
    recs = run_sweep(SweepPlan((4,), HostRule.parse("n=40"), generator="paley", seeds=3),
                     cert_dir=tmp_path)
    assert all(r.n == 43 and r.generator == "paley" for r in recs)
    for r in recs:
        if r.outcome == "success":
            assert (tmp_path / f"k4_s{recs.index(r)}.cert").exists()


def test_summary_labels_ratio_mode():
    plan = SweepPlan((3,), HostRule.parse("ratio=4"), seeds=2)
    text = format_summary(plan, summarize(run_sweep(plan)))
    assert "ratio mode: empirical evidence" in text
    plain = SweepPlan((3,), HostRule.parse("n=36"), seeds=2)
    assert "evidence" not in format_summary(plain, summarize(run_sweep(plain)))
