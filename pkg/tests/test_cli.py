import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

import oracles
from helpers import A1, C1, FIXTURES, GOLDEN, S1, S2
from flatpair import ProblemFormatError
from flatpair.cli import main
from flatpair.problemfile import format_number, parse_number, parse_problem, render_json, render_text

EXAMPLE = str(FIXTURES / "worked_example.json")

# golden document name -> CLI arguments
GOLDEN_RUNS = {
    "pair_V1_V2_full.json": ["pair", EXAMPLE, "V1", "V2", "--full"],
    "pair_V1_V2_float.json": ["pair", EXAMPLE, "V1", "V2", "--float"],
    "pair_V1_V2.txt": ["pair", EXAMPLE, "V1", "V2", "--output", "text"],
    "project_V1_q.json": ["project", EXAMPLE, "V1", "q"],
    "minnorm_V1.json": ["minnorm", EXAMPLE, "V1"],
    "check_V1_V2_s1_s2.json": ["check", EXAMPLE, "V1", "V2", "s1", "s2"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestCommands:
    def test_minnorm(self, capsys):
        doc = run_json(capsys, "minnorm", EXAMPLE, "V1")
        assert doc["operation"] == "minnorm" and doc["backend"] == "exact"
        assert [F(x) for x in doc["outputs"]["point"]] == oracles.min_norm(A1, C1)
        assert doc["residuals"]["membership"] == ["0", "0"]
        assert doc["residuals"]["max_abs"] == "0"

    def test_minnorm_subspace(self, capsys):
        doc = run_json(capsys, "minnorm", EXAMPLE, "L0")
        assert doc["outputs"]["point"] == ["0"] * 5
        assert doc["outputs"]["dist_sq"] == "0"

    def test_project(self, capsys):
        doc = run_json(capsys, "project", EXAMPLE, "V1", "q")
        assert doc["outputs"]["point"] == ["191/14", "221/42", "101/21", "15/7", "2/21"]
        assert doc["outputs"]["dist_sq"] == "337/7"
        assert doc["residuals"]["max_abs"] == "0"

    def test_project_point_already_inside(self, capsys):
        doc = run_json(capsys, "project", EXAMPLE, "V1", "s1")
        assert [F(x) for x in doc["outputs"]["point"]] == S1
        assert doc["outputs"]["dist_sq"] == "0"

    def test_pair(self, capsys):
        doc = run_json(capsys, "pair", EXAMPLE, "V1", "V2")
        out = doc["outputs"]
        assert [F(x) for x in out["s1"]] == S1
        assert [F(x) for x in out["s2"]] == S2
        assert out["dist_sq"] == "121/8"
        assert "distance" not in out
        assert out["certificate"]["verdict"] is True
        assert "sphere" not in out

    def test_pair_axes(self, capsys):
        doc = run_json(capsys, "pair", str(FIXTURES / "axes.json"), "X", "Y", "--full")
        out = doc["outputs"]
        assert out["dist_sq"] == "1"
        assert out["sphere"] == {"center": ["0", "0", "1/2"], "radius_sq": "1/4"}
        assert [h["offset"] for h in out["hyperplanes"]] == ["0", "-1"]

    def test_check_golden_pair(self, capsys):
        doc = run_json(capsys, "check", EXAMPLE, "V1", "V2", "s1", "s2")
        assert doc["residuals"]["verdict"] is True

    def test_check_shifted_pair(self, capsys):
        doc = run_json(capsys, "check", EXAMPLE, "V1", "V2", "s1", "s2_shifted")
        cert = doc["outputs"]["certificate"]
        assert cert["verdict"] is False
        assert cert["membership2"] == ["0", "0", "0"]
        assert any(x != "0" for x in cert["orthogonality2"])

    def test_check_points_off_varieties(self, capsys):
        doc = run_json(capsys, "check", EXAMPLE, "V1", "V2", "q", "u1")
        cert = doc["outputs"]["certificate"]
        assert cert["verdict"] is False
        assert any(x != "0" for x in cert["membership1"] + cert["membership2"])


class TestExitCodes:
    def test_dependent_rows(self, capsys):
        code, out, err = run(capsys, "minnorm", str(FIXTURES / "dependent_rows.json"), "D")
        assert code == 2 and out == ""
        assert "DependentRows" in err

    def test_parallel_pair(self, capsys):
        code, _, err = run(capsys, "pair", str(FIXTURES / "parallel.json"), "H0", "H1")
        assert code == 3
        assert "NonUniquePair" in err

    def test_bad_point_dimension(self, capsys):
        code, _, err = run(capsys, "project", str(FIXTURES / "bad_point.json"), "P", "short")
        assert code == 2
        assert "ProblemFormatError" in err

    def test_unknown_names(self, capsys):
        assert run(capsys, "minnorm", EXAMPLE, "nope")[0] == 2
        assert run(capsys, "project", EXAMPLE, "V1", "nope")[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "minnorm", str(tmp_path / "absent.json"), "V")[0] == 2

    def test_invalid_json(self, capsys, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{not json")
        assert run(capsys, "minnorm", str(p), "V")[0] == 2

    def test_intersecting_full_pair_has_no_hyperplanes(self, capsys, tmp_path):
        p = tmp_path / "lines.json"
        p.write_text(json.dumps({"format": 1, "dimension": 2, "varieties": [
            {"name": "L1", "A": [[1, -1]], "c": [0]},
            {"name": "L2", "A": [[1, 1]], "c": [2]}]}))
        doc = run_json(capsys, "pair", str(p), "L1", "L2", "--full")
        assert doc["outputs"]["dist_sq"] == "0"
        assert doc["outputs"]["hyperplanes"] is None

    def test_bad_usage_is_argparse_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["pair", EXAMPLE])
        assert exc.value.code == 2


class TestFormat:
    def test_float_flag_only_changes_representation(self, capsys):
        exact = run_json(capsys, "pair", EXAMPLE, "V1", "V2")
        approx = run_json(capsys, "pair", EXAMPLE, "V1", "V2", "--float")
        assert approx["operation"] == exact["operation"] == "pair"
        assert approx["backend"] == "float"
        for key in ("s1", "s2"):
            fl = [float(x) for x in approx["outputs"][key]]
            assert fl == pytest.approx([float(F(x)) for x in exact["outputs"][key]], rel=1e-10)
        assert float(approx["outputs"]["distance"]) == pytest.approx((121 / 8) ** 0.5)

    def test_float_numbers_have_enough_digits(self, capsys):
        doc = run_json(capsys, "project", EXAMPLE, "V1", "q", "--float")
        for x in doc["outputs"]["point"]:
            mantissa = x.split("e")[0].replace("-", "").replace(".", "")
            assert len(mantissa) >= 15
            assert float(x) == float(format_number(float(x)))

    def test_round_trip_exact_numbers(self, capsys):
        doc = run_json(capsys, "pair", EXAMPLE, "V1", "V2", "--full")
        rebuilt = json.loads(render_json(doc))
        assert rebuilt == doc
        values = [parse_number(x) for x in doc["outputs"]["s1"] + doc["outputs"]["s2"]]
        assert values == S1 + S2
        assert all(format_number(parse_number(x)) == x for x in doc["outputs"]["s2"])

    def test_problem_round_trip(self):
        data = json.loads((FIXTURES / "worked_example.json").read_text())
        prob = parse_problem(data)
        again = parse_problem(json.loads(json.dumps({
            "format": 1, "dimension": prob.dimension,
            "varieties": [{"name": k, "A": [[str(x) for x in r] for r in s.A], "c": [str(x) for x in s.c]}
                          for k, s in prob.varieties.items()],
            "query_points": [{"name": k, "coords": [str(x) for x in p]} for k, p in prob.points.items()],
        })))
        assert again == prob

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "minnorm", EXAMPLE, "L0", "--output", "text")
        assert code == 0
        assert "outputs.dist_sq: 0" in out.splitlines()
        assert render_text({"a": {"b": [1, 2]}}) == "a.b: (1, 2)\n"

    @pytest.mark.parametrize("value, expected", [
        (3, F(3)), ("-7/4", F(-7, 4)), ("0.25", F(1, 4)), ("1e-3", F(1, 1000)), (0.5, F(1, 2)),
    ])
    def test_parse_number(self, value, expected):
        assert parse_number(value) == expected

    @pytest.mark.parametrize("value", ["1/0", "abc", True, None, [1]])
    def test_parse_number_rejects(self, value):
        with pytest.raises(ProblemFormatError):
            parse_number(value)

    @pytest.mark.parametrize("data", [
        [],
        {"format": 2, "dimension": 2},
        {"format": 1, "dimension": 0},
        {"format": 1, "dimension": 2, "varieties": [{"name": "V", "A": [[1]], "c": [0]}]},
        {"format": 1, "dimension": 2, "varieties": [{"name": "V", "A": [[1, 0]], "c": [0, 1]}]},
        {"format": 1, "dimension": 2, "varieties": [{"name": "V", "A": [], "c": []}]},
        {"format": 1, "dimension": 2, "varieties": [{"name": "V", "A": [[1, 0]], "c": [0]},
                                                    {"name": "V", "A": [[0, 1]], "c": [0]}]},
        {"format": 1, "dimension": 2, "query_points": [{"name": "p", "coords": ["1/0", 1]}]},
    ])
    def test_malformed_problems(self, data):
        with pytest.raises(ProblemFormatError):
            parse_problem(data)


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_documents(capsys, name):
    code, out, _ = run(capsys, *GOLDEN_RUNS[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "flatpair", "pair", EXAMPLE, "V1", "V2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["dist_sq"] == "121/8"


def test_module_entry_point_error_code():
    proc = subprocess.run([sys.executable, "-m", "flatpair", "pair",
                           str(FIXTURES / "parallel.json"), "H0", "H1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 3
    assert proc.stderr.startswith("error: NonUniquePair:")
