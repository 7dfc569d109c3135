import json
import os

import pytest

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

from loopseries import __version__, coloops
from loopseries.cli import main, series_from_json, series_to_json
from loopseries.combinatorics import _D_CACHE
from loopseries.seriesloops import DEFAULT_SEED, TruncatedSeries


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


SCHEMA_PATH = os.path.join(os.path.dirname(__file__), os.pardir, "src",
                           "loopseries", "schemas", "cli_output.schema.json")


def validate_envelope(payload: str):
    data = json.loads(payload)
    if jsonschema is not None:
        with open(SCHEMA_PATH) as fh:
            schema = json.load(fh)
        jsonschema.validate(data, schema)
    return data


class TestCoeffs:
    def test_csv_contains_catalan_row(self, capsys):
        code, out, err = run(capsys, "--format", "csv",
                             "coeffs", "--kind", "d", "--n", "5")
        assert code == 0
        assert '5,"(1,1,1,1)",42' in out.splitlines()
        assert out.splitlines()[0] == "n,composition,d"
        assert f"loopseries {__version__}" in err

    def test_labeled_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv",
                           "coeffs", "--kind", "de", "--n", "3")
        assert code == 0
        assert '3,"(1,2)","(1,1)",1' in out.splitlines()

    def test_json_validates(self, capsys):
        code, out, _ = run(capsys, "--format", "json",
                           "coeffs", "--kind", "d", "--n", "4")
        assert code == 0
        data = validate_envelope(out)
        assert {"n": 4, "composition": [1, 1, 1], "d": 14} in data["data"]


class TestCoop:
    def test_text_matches_library(self, capsys):
        code, out, _ = run(capsys, "coop", "--flavor", "fdb",
                           "--kind", "delta_l", "--n", "4")
        assert code == 0
        assert out.strip() == str(coloops.codivision("fdb", "left", 4))

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "coop",
                           "--flavor", "inv", "--kind", "delta_r", "--n", "3")
        assert code == 0
        data = validate_envelope(out)
        from loopseries.freealg import NCPolynomial
        poly = NCPolynomial.from_json(data["data"]["polynomial"])
        assert poly == coloops.codivision("inv", "right", 3)


class TestOperators:
    def test_r_expansion(self, capsys):
        code, out, _ = run(capsys, "operators", "--op", "R",
                           "--degrees", "1,2")
        assert code == 0
        assert out.strip() == "2*x1*x2 + x1 | x2"

    def test_rm_requires_m(self, capsys):
        code, out, err = run(capsys, "operators", "--op", "Rm",
                             "--degrees", "1,1")
        assert code == 2
        assert "error" in err

    def test_re(self, capsys):
        code, out, _ = run(capsys, "operators", "--op", "Re",
                           "--degrees", "1,1", "--bits", "1,2")
        assert code == 0
        assert out.strip() == "x1 | x1"


class TestVerify:
    def test_expected_failure_whitelisted(self, capsys):
        code, out, _ = run(capsys, "verify", "--flavor", "fdb",
                           "--max-degree", "4")
        assert code == 0
        assert "expected-failure" in out
        assert "verdict: all as expected" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "verify",
                           "--flavor", "both", "--max-degree", "3")
        assert code == 0
        data = validate_envelope(out)
        records = data["data"]["records"]
        assert data["pass"] is True
        failing = [r for r in records if not r["pass"]]
        assert all(r["expected_failure"] for r in failing)
        assert {r["flavor"] for r in records} == {"inv", "fdb"}

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "verify",
                           "--flavor", "fdb", "--max-degree", "3")
        assert code == 0
        assert out.splitlines()[0] == \
            "flavor,axiom,n,pass,expected_failure,discrepancy"


class TestSeriesCommands:
    def test_divide_round_trip(self, capsys):
        a = {"coeffs": [["1", "1", "0", "1"], ["1", "0", "1", "0"]]}
        b = {"coeffs": [["0", "1", "1", "0"]]}
        code, out, _ = run(capsys, "--format", "json", "divide",
                           "--flavor", "diff", "--side", "left",
                           "--order", "4", "--algebra", "m2q",
                           "--a", json.dumps(a), "--b", json.dumps(b))
        assert code == 0
        data = validate_envelope(out)
        got = series_from_json(data["data"], "diff", 4, "m2q")
        lib_a = series_from_json(a, "diff", 4, "m2q")
        lib_b = series_from_json(b, "diff", 4, "m2q")
        from loopseries.seriesloops import divide
        assert got == divide("left", lib_a, lib_b)

    def test_invert_sedenion(self, capsys):
        code, out, _ = run(capsys, "invert", "--flavor", "inv",
                           "--side", "right", "--order", "3",
                           "--algebra", "sed",
                           "--a", '{"coeffs": ["e1 + e10"]}')
        assert code == 0
        assert "2*e1 + 2*e10" in out

    def test_series_json_round_trip(self):
        from fractions import Fraction
        s = TruncatedSeries("diff", 3, [Fraction(1, 2), Fraction(-3)],
                            Fraction(1))
        blob = series_to_json(s, "q")
        assert series_from_json(blob, "diff", 3, "q") == s


class TestWitnessCommand:
    def test_text_pass(self, capsys):
        code, out, _ = run(capsys, "witness", "diff-power-assoc")
        assert code == 0
        assert "witness diff-power-assoc: PASS" in out
        assert "[[2, 4], [1, 2]]" in out
        assert "[[3, 3], [1, 1]]" in out

    def test_json_schema_and_seed(self, capsys):
        code, out, err = run(capsys, "--format", "json",
                             "witness", "ucd-not-loop")
        assert code == 0
        data = validate_envelope(out)
        assert data["pass"] is True
        assert data["seed"] == DEFAULT_SEED
        assert f"seed {DEFAULT_SEED}" in err

    def test_unknown_witness_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "witness", "nope")
        assert exc.value.code == 2


class TestTrees:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "trees", "--length", "2")
        assert code == 0
        assert out.splitlines() == ["(2,0) ((..).)", "(1,1) (.(..))"]

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "trees", "--length", "3")
        assert code == 0
        assert len(out.splitlines()) == 1 + 5


class TestHarness:
    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "coeffs")
        assert exc.value.code == 2

    def test_byte_determinism(self, capsys):
        args = ("--format", "json", "verify", "--flavor", "fdb",
                "--max-degree", "3")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_version_always_on_stderr(self, capsys):
        _, _, err = run(capsys, "trees", "--length", "1")
        assert err.startswith(f"loopseries {__version__}")

    def test_cache_round_trip(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("LOOPSERIES_CACHE_DIR", str(tmp_path))
        run(capsys, "coeffs", "--kind", "d", "--n", "6")
        path = tmp_path / "lagrange_d.csv"
        assert path.exists()
        text = path.read_text()
        assert "1,1,1,1,1" in text
        _D_CACHE.clear()
        run(capsys, "coeffs", "--kind", "d", "--n", "3")
        assert ("1", "1", "1", "1", "1") in set(
            tuple(k) if isinstance(k, tuple) else k for k in map(
                lambda kk: tuple(map(str, kk)), _D_CACHE))
