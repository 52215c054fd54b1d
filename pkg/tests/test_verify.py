import csv
import io
import json

import pytest

from mlbeta.errors import ParameterError
from mlbeta.quadrature import QuadControl
from mlbeta.verify import CSV_FIELDS, FORMAT_VERSION, THEOREM_IDS, parse_suite, run_sweep

SMALL_T21 = {"eta1": [0.6], "eta2": [1.5], "beta1": [0.5], "beta2": [1.25],
             "z1": [0.3], "z2": [-0.4, 1.2], "q": [0.8, 1 + 1j], "ml": ["l2"]}


class TestSuiteParsing:
    def test_aliases(self):
        assert parse_suite("2.1, ex3.1,REMARK") == ("T2_1", "EX3_1", "REMARK")
        assert parse_suite("all") == THEOREM_IDS
        assert parse_suite(["T2_4", "2.4"]) == ("T2_4",)
        assert parse_suite("") == ()

    def test_unknown(self):
        with pytest.raises(ParameterError):
            parse_suite("9.9")


class TestSweep:
    def test_empty_suite(self):
        rep = run_sweep("")
        assert rep.cases == [] and rep.summary == {} and rep.all_passed
        assert json.loads(rep.to_json())["format_version"] == FORMAT_VERSION

    def test_skip_accounting(self):
        rep = run_sweep("2.1", grid={"2.1": SMALL_T21})
        s = rep.summary["T2_1"]
        assert s == {"total": 4, "passed": 2, "failed": 0, "skipped": 2}
        assert s["passed"] + s["failed"] + s["skipped"] == s["total"]
        assert all("DomainError" in k["reason"] for k in rep.skipped)

    def test_weighted_denominator_suite(self):
        rep = run_sweep("2.4", tol=1e-8)
        assert rep.all_passed and rep.summary["T2_4"]["total"] == 48

    def test_single_index_degeneration(self):
        rep = run_sweep("remark")
        assert len(rep.cases) == 3 and rep.all_passed
        assert max(c.rel_err for c in rep.cases) <= 1e-12

    def test_rel_err_definition(self):
        for c in run_sweep("2.1", grid={"2.1": SMALL_T21}).cases:
            assert c.rel_err == abs(c.lhs - c.rhs) / (1 + abs(c.rhs))
            assert c.passed == (c.rel_err <= c.tol)

    def test_evaluation_error_is_recorded(self):
        rep = run_sweep("2.1", grid={"2.1": SMALL_T21}, quad_ctrl=QuadControl(max_nodes=16))
        assert rep.summary["T2_1"]["failed"] == 2 and not rep.all_passed
        assert all(c.error.startswith("QuadratureError") for c in rep.failures())

    def test_per_identity_tolerance(self):
        rep = run_sweep("2.1,2.4", grid={"2.1": SMALL_T21}, tol={"2.1": 1e-9})
        assert rep.environment["tolerances"]["T2_1"] == 1e-9
        assert rep.environment["tolerances"]["T2_4"] == 1e-8

    def test_deterministic_and_ordered(self):
        a = run_sweep("2.1,1.6", grid={"2.1": SMALL_T21})
        b = run_sweep("2.1,1.6", grid={"2.1": SMALL_T21}, workers=2)
        assert a.to_json(include_runtime=False) == b.to_json(include_runtime=False)
        assert [c.params["z"] for c in a.cases if c.theorem_id == "RED1_6"][:4] == [0.5, 1.0, 2.0, 4.0]


class TestSerialisation:
    def test_json_fields(self):
        doc = json.loads(run_sweep("2.1", grid={"2.1": SMALL_T21}).to_json())
        assert set(doc) == {"format_version", "environment", "summary", "cases", "skipped"}
        assert set(doc["cases"][0]) == set(CSV_FIELDS)
        assert doc["cases"][1]["params"]["q"] == [1.0, 1.0]

    def test_csv_columns(self):
        text = run_sweep("2.1", grid={"2.1": SMALL_T21}).to_csv()
        rows = list(csv.DictReader(io.StringIO(text)))
        assert tuple(rows[0]) == CSV_FIELDS and len(rows) == 2
        assert json.loads(rows[0]["params"])["z2"] == -0.4
