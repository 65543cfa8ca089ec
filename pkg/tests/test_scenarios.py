import csv
import io
import json

import pytest

from qgame import equilibrium as eq
from qgame import scenarios as sc


def test_claim_pass_rules():
    assert sc.Claim("x", 1.0, 1.0 + 1e-10, 1e-9).passed
    assert not sc.Claim("x", 1.0, 1.1, 1e-9).passed
    assert sc.Claim("x", True, True).passed
    assert not sc.Claim("x", ["a"], ["a", "b"]).passed


def test_report_pass_and_serialization():
    r = sc.ScenarioReport("demo", [sc.Claim("a", 1.0, 1.0, 0.1, id="demo-01"),
                                   sc.Claim("b", 2.0, 3.0, 0.1, id="demo-02")], runtime=1.5)
    assert not r.passed and [c.id for c in r.failures()] == ["demo-02"]
    data = json.loads(sc.reports_to_json([r]))
    assert data["passed"] is False and data["reports"][0]["runtime"] == 1.5
    assert "runtime" not in json.loads(sc.reports_to_json([r], runtime=False))["reports"][0]
    rows = list(csv.DictReader(io.StringIO(sc.reports_to_csv([r]))))
    assert list(rows[0]) == sc.CSV_FIELDS and rows[1]["pass"] == "False"


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("QGAME_THREADS", "3")
    assert sc.thread_count() == 3
    monkeypatch.setenv("QGAME_THREADS", "many")
    with pytest.raises(ValueError):
        sc.thread_count()


def test_property_suite_green():
    report = sc.run_property_suite(eq.SearchConfig(), threads=1)
    assert report.passed, [c.to_dict() for c in report.failures()]


def test_property_suite_thread_independent():
    cfg = eq.SearchConfig()
    a = sc.run_property_suite(cfg, threads=1, samples=100).to_dict(runtime=False)
    b = sc.run_property_suite(cfg, threads=4, samples=100).to_dict(runtime=False)
    assert json.dumps(a) == json.dumps(b)


def test_cl_mixed_equivalence(ctx):
    from qgame import ewl
    assert sc.cl_mixed_deviation(ewl.PRISONERS_DILEMMA, ctx, points=21) <= 1e-9
    assert sc.cl_mixed_deviation(ewl.CHICKEN, ctx, points=21) <= 1e-9


def test_random_pure_profiles_refuted(ctx):
    from qgame import ewl, strategies as st
    for s_a, s_b in sc.random_pure_profiles(20, 42):
        cur = ewl.payoffs(ewl.PRISONERS_DILEMMA, ctx, s_a, s_b)
        ga = ewl.payoffs(ewl.PRISONERS_DILEMMA, ctx, st.optimal_answer(s_b), s_b).p_a - cur.p_a
        gb = ewl.payoffs(ewl.PRISONERS_DILEMMA, ctx, s_a, st.bob_optimal_answer(s_a)).p_b - cur.p_b
        assert min(ga, gb) >= -1e-12 and max(ga, gb) > 0
