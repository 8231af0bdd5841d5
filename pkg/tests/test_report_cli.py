import json
import math
from fractions import Fraction

import pytest

from bwres.boundary import REFERENCE_CASES, case_result_from_coeffs
from bwres.cli import main
from bwres.report import (RunConfig, arbitrate_case, case_result_from_json,
                          case_result_to_json, dump_catalog,
                          einstein_coefficient, render_json, render_markdown,
                          run, theorem_report)

R = Fraction


class TestEinsteinCoefficient:
    def test_dimension_four(self):
        out = einstein_coefficient(4)
        assert (out.value, out.pi_power) == (R(4, 3), 2)

    def test_dimension_two(self):
        out = einstein_coefficient(2)
        assert (out.value, out.pi_power) == (R(2, 3), 1)

    def test_higher_even_dimensions_use_exact_factorials(self):
        assert einstein_coefficient(6).value == R(2 * 8, 6 * 2)
        assert einstein_coefficient(8).value == R(2 * 16, 6 * 6)

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValueError):
            einstein_coefficient(5)
        with pytest.raises(ValueError):
            einstein_coefficient(0)

    def test_float_view(self):
        assert abs(float(einstein_coefficient(4)) - 4 * math.pi ** 2 / 3) < 1e-12


class TestSerialization:
    def test_round_trip(self):
        for case_id, ref in REFERENCE_CASES.items():
            doc = case_result_to_json(ref)
            assert case_result_from_json(doc) == ref, case_id

    def test_round_trip_through_text(self):
        r = case_result_from_coeffs({"hp*G": R(-7, 6), "DG": R(2, 3)})
        text = json.dumps(case_result_to_json(r))
        assert case_result_from_json(json.loads(text)) == r


@pytest.fixture(scope="module")
def full_doc():
    config = RunConfig(operator_type="both", output_format="json",
                       substitution="geometric", oracle="off")
    return run(config)


class TestRun:
    def test_exit_one_without_arbitration(self, full_doc):
        code, doc = full_doc
        assert code == 1                      # documented mismatches, no oracle
        assert set(doc["operators"]) == {"type1", "type2"}

    def test_six_sections_per_operator(self, full_doc):
        _, doc = full_doc
        for op in ("type1", "type2"):
            cases = doc["operators"][op]["cases"]
            assert len(cases) == 6
            assert sum(1 for c in cases if "grad" in c["case"]) == 1

    def test_exact_and_mismatched_cases(self, full_doc):
        _, doc = full_doc
        flags = {c["case"]: c["reference_match"]
                 for op in doc["operators"].values() for c in op["cases"]}
        assert flags["type1/conn/I"] and flags["type1/conn/III"]
        assert flags["type1/grad/direct"] and flags["type2/grad/direct"]
        assert flags["type2/conn/III"] and flags["type2/conn/V"]
        assert not flags["type1/conn/II"]
        assert not flags["type1/conn/IV"]
        assert not flags["type1/conn/V"]
        assert not flags["type2/conn/II"]
        assert not flags["type2/conn/IV"]

    def test_theorem_blocks_present(self, full_doc):
        _, doc = full_doc
        th = doc["operators"]["type1"]["theorem"]
        assert th["interior"]["coefficient"] == "4/3"
        assert th["interior"]["pi_power"] == 2

    def test_renderers_carry_identical_numbers(self, full_doc):
        _, doc = full_doc
        md = render_markdown(doc)
        js = render_json(doc)
        parsed = json.loads(js)
        for op in parsed["operators"].values():
            for case in op["cases"]:
                for term in case["terms"]:
                    row = f"| {term['monomial']} | {term['coefficient']} |"
                    assert row in md, row

    def test_case_filter(self):
        code, doc = run(RunConfig(operator_type="type1", case_filter="conn/III"))
        cases = doc["operators"]["type1"]["cases"]
        assert [c["case"] for c in cases] == ["type1/conn/III"]
        assert "total" not in doc["operators"]["type1"]
        assert code == 0                      # the filtered case matches exactly

    def test_verbose_trace(self):
        _, doc = run(RunConfig(operator_type="type1", case_filter="conn/II",
                               verbose=True))
        entry = doc["operators"]["type1"]["cases"][0]
        assert any("projected" in st["stage"] for st in entry["trace"])


class TestTheoremReport:
    def test_reference_convention_blocks(self):
        th = theorem_report("type1", "reference")
        eng = {t["monomial"]: t["coefficient"] for t in th["boundary"]["terms"]}
        # the gradient block and the jet terms agree with the stored theorem
        stored = {t["monomial"]: t["coefficient"]
                  for t in th["stored_boundary"]["terms"]}
        assert eng["Dnn"] == stored["Dnn"] == "2"
        assert eng["w4*A11"] == stored["w4*A11"]
        # the curvature coefficients differ by the documented amounts
        diffs = {d["monomial"]: (d["engine"], d["reference"]) for d in th["diffs"]}
        assert set(diffs) <= {"DG", "K*G", "K*v4*w4"}

    def test_consistent_convention_blocks(self):
        th = theorem_report("type1", "consistent")
        eng = {t["monomial"]: t["coefficient"] for t in th["boundary"]["terms"]}
        assert eng["K*G"] == "-8/9"
        assert eng["K*v4*w4"] == "8/3"
        th2 = theorem_report("type2", "consistent")
        eng2 = {t["monomial"]: t["coefficient"] for t in th2["boundary"]["terms"]}
        assert eng2["K*G"] == "4/9"
        assert eng2["K*v4*w4"] == "-4/3"


class TestArbitration:
    def test_oracle_sides_with_engine(self):
        from bwres.boundary import compute_case, enumerate_cases, substitute_geometric
        spec = next(s for s in enumerate_cases("type1") if s.label == "II")
        engine = substitute_geometric(compute_case(spec), extrinsic=False)
        verdict = arbitrate_case(spec, engine, REFERENCE_CASES[spec.case_id],
                                 "consistent", samples=2)
        assert verdict["verdict"] == "engine"
        assert verdict["engine_rel_err"] < 1e-8
        assert verdict["reference_rel_err"] > 1e-3

    def test_oracle_confirms_reference_when_engine_is_perturbed(self):
        from bwres.boundary import compute_case, enumerate_cases, substitute_geometric
        spec = next(s for s in enumerate_cases("type1") if s.label == "III")
        good = substitute_geometric(compute_case(spec), extrinsic=False)
        bad = good + case_result_from_coeffs({"hp*G": R(1, 7)})
        verdict = arbitrate_case(spec, bad, REFERENCE_CASES[spec.case_id],
                                 "consistent", samples=2)
        assert verdict["verdict"] == "reference"


class TestCatalogDump:
    def test_golden_canonical_forms(self):
        doc = dump_catalog("consistent")
        assert doc["symbols"]["D"]["1"] == \
            "[i*xi1*e]*c1 + [i*xi2*e]*c2 + [i*xi3*e]*c3 + [i*xin]*c4"
        assert doc["symbols"]["D"]["0"] == "[-3/4*hp]*c4"
        assert doc["symbols"]["Dinv2"]["-2"] == "[(1) / (L+xin^2)^1]"

    def test_golden_ratxi_text(self):
        from bwres.ring import ParamPoly, RatXi
        f = RatXi(ParamPoly.var("xin").scale(-2), 2, 2)
        assert str(f) == "(-2*xin) / (xin-i)^2*(xin+i)^2"

    def test_deterministic(self):
        a = render_json(dump_catalog("consistent"))
        b = render_json(dump_catalog("consistent"))
        assert a == b

    def test_contains_all_symbols(self):
        doc = dump_catalog("reference")
        assert set(doc["symbols"]) == {"D", "Dinv", "Dinv2", "nabla_v",
                                       "grad_prefix"}


class TestCli:
    def test_dump_catalog_exits_zero(self, tmp_path, capsys):
        out = tmp_path / "cat.json"
        assert main(["--dump-catalog", "-o", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert "symbols" in doc

    def test_single_case_json(self, tmp_path):
        out = tmp_path / "case.json"
        code = main(["--operator", "type1", "--case", "conn/III",
                     "--format", "json", "-o", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        entry = doc["operators"]["type1"]["cases"][0]
        assert entry["reference_match"] is True
        assert entry["pi_grade"] == 2

    def test_mismatch_exit_code(self, tmp_path):
        out = tmp_path / "case.json"
        code = main(["--operator", "type1", "--case", "conn/IV",
                     "--format", "json", "-o", str(out)])
        assert code == 1

    def test_markdown_output(self, capsys):
        code = main(["--operator", "type2", "--case", "conn/V",
                     "--format", "markdown"])
        captured = capsys.readouterr().out
        assert code == 0
        assert "exact match" in captured
        assert "| monomial | engine | reference | match |" in captured

    def test_bad_flag_combination(self):
        with pytest.raises(SystemExit):
            main(["--operator", "type3"])
