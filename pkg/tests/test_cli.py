import json
import math
import subprocess
import sys

import jsonschema
import pytest

from angulus import cli
from angulus.errors import DegeneracyError

NUMBER = {"type": "number"}
ANTH_SCHEMA = {
    "type": "object",
    "required": ["kind", "quotients", "period", "gcd"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["finite", "periodic", "truncated"]},
        "quotients": {"type": "array", "items": {"type": "integer"}},
        "period": {"type": "array", "items": {"type": "integer"}},
        "gcd": {"type": ["string", "null"]},
    },
}
EXCESS_SCHEMA = {
    "type": "object",
    "required": ["method", "excess_sr", "stderr", "clamp_budget_used"],
    "additionalProperties": False,
    "properties": {
        "method": {"enum": ["girard", "lhuilier", "mc"]},
        "excess_sr": NUMBER,
        "stderr": {"type": ["number", "null"]},
        "clamp_budget_used": NUMBER,
    },
}
SIDEDIAM_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["n", "p", "q", "pell_residual", "angle_class", "apex_angle_rad", "gap_rad"],
        "properties": {"angle_class": {"enum": ["acute", "obtuse"]}},
    },
}
PLATONIC_ROW = {
    "type": "object",
    "required": ["solid", "n", "alpha", "solid_angle_sr", "fraction_of_sphere"],
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_process(*argv):
    return subprocess.run([sys.executable, "-m", "angulus", *argv],
                          capture_output=True, text=True, check=False)


class TestExamples:
    def test_anth_sqrt2(self, capsys):
        code, out, _ = run(capsys, "anth", "sqrt(2)", "1", "--format", "json")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, ANTH_SCHEMA)
        assert data == {"kind": "periodic", "quotients": [1], "period": [2], "gcd": None}

    def test_platonic_cube(self, capsys):
        code, out, _ = run(capsys, "solid", "platonic", "cube", "--format", "json")
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, PLATONIC_ROW)
        assert data["solid_angle_sr"] == pytest.approx(1.5707963, abs=5e-8)

    def test_excess_triangle_inequality(self, capsys):
        code, out, err = run(capsys, "sphere", "excess", "--sides", "1", "1", "2.5")
        assert code == 2
        assert out == ""
        assert "triangle inequality violated" in err


class TestSubcommands:
    def test_anth_finite_and_truncated(self, capsys):
        _, out, _ = run(capsys, "anth", "12", "8", "--format", "json")
        assert json.loads(out)["gcd"] == "4"
        _, out, _ = run(capsys, "anth", "sqrt(94)", "1", "--max-terms", "3", "--format", "json")
        assert json.loads(out)["kind"] == "truncated"

    def test_anth_bad_magnitude(self, capsys):
        code, _, err = run(capsys, "anth", "7/0", "1")
        assert code == 2 and "zero denominator" in err
        code, _, err = run(capsys, "anth", "sqrt(2", "1")
        assert code == 2 and "column" in err
        code, _, err = run(capsys, "anth", "sqrt(2)", "sqrt(3)")
        assert code == 2 and "same radicand" in err

    def test_sidediam(self, capsys):
        _, out, _ = run(capsys, "sidediam", "--count", "6", "--format", "json")
        rows = json.loads(out)
        jsonschema.validate(rows, SIDEDIAM_SCHEMA)
        assert [r["pell_residual"] for r in rows] == [-1, 1, -1, 1, -1, 1]
        _, out, _ = run(capsys, "sidediam", "--count", "3", "--format", "csv")
        assert out.splitlines()[0] == "n,p,q,pell_residual,angle_class,apex_angle_rad,gap_rad"

    def test_excess_methods(self, capsys):
        _, out, _ = run(capsys, "sphere", "excess", "--sides", "1", "1", "1", "--method", "both",
                        "--format", "json")
        records = json.loads(out)
        for r in records:
            jsonschema.validate(r, EXCESS_SCHEMA)
        assert records[0]["excess_sr"] == records[1]["excess_sr"] == 0.4955948957
        _, out, _ = run(capsys, "sphere", "excess", "--sides", "90", "90", "90", "--degrees",
                        "--method", "mc", "--samples", "20000", "--format", "json")
        rec = json.loads(out)
        jsonschema.validate(rec, EXCESS_SCHEMA)
        assert abs(rec["excess_sr"] - math.pi / 2) < 4 * rec["stderr"]

    def test_solid_trihedral_and_regular(self, capsys):
        _, out, _ = run(capsys, "solid", "trihedral", "90", "90", "90", "--degrees",
                        "--format", "json")
        assert json.loads(out)["solid_angle_sr"] == pytest.approx(math.pi / 2, abs=1e-9)
        code, _, err = run(capsys, "solid", "trihedral", "0.3", "0.3", "0.7")
        assert code == 2 and "face angle" in err
        _, out, _ = run(capsys, "solid", "regular", "--n", "4", "--alpha", "60", "--degrees",
                        "--format", "json")
        assert json.loads(out)["solid_angle_sr"] == pytest.approx(1.359347638, abs=1e-9)
        code, _, _ = run(capsys, "solid", "regular", "--n", "4", "--alpha", "1.6")
        assert code == 2

    def test_platonic_all_with_mc(self, capsys):
        _, out, _ = run(capsys, "solid", "platonic", "--samples", "20000", "--format", "json")
        rows = json.loads(out)
        assert len(rows) == 5
        for row in rows:
            jsonschema.validate(row, PLATONIC_ROW)
            assert abs(row["mc_sr"] - row["solid_angle_sr"]) < 5 * row["mc_stderr"]

    def test_platonic_custom_data(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps([{"name": "wedge", "faces_at_vertex": 3,
                                     "apex_angle_rad": 1.0}]))
        _, out, _ = run(capsys, "solid", "platonic", "--data", str(path), "--format", "json")
        (row,) = json.loads(out)
        assert row["solid"] == "wedge"
        code, _, err = run(capsys, "solid", "platonic", "cube", "--data", str(path))
        assert code == 2 and "no vertex figure" in err

    def test_unknown_subcommand_is_exit_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["frobnicate"])
        assert info.value.code == 2

    def test_degeneracy_maps_to_exit_3(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise DegeneracyError("law of cosines out of range")
        monkeypatch.setattr(cli.spherical, "excess_report", boom)
        code, _, err = run(capsys, "sphere", "excess", "--sides", "1", "1", "1")
        assert code == 3 and "degeneracy" in err


class TestFormats:
    def test_text_and_json_report_same_numbers(self, capsys):
        _, js, _ = run(capsys, "solid", "regular", "--n", "5", "--alpha", "1.0",
                       "--format", "json")
        _, text, _ = run(capsys, "solid", "regular", "--n", "5", "--alpha", "1.0")
        data = json.loads(js)
        fields = dict(line.split(None, 1) for line in text.splitlines())
        for key, value in data.items():
            assert float(fields[key]) == value

    def test_precision(self, capsys):
        _, out, _ = run(capsys, "solid", "platonic", "cube", "--format", "json",
                        "--precision", "4")
        assert json.loads(out)["solid_angle_sr"] == 1.571


def test_json_is_byte_deterministic_across_processes():
    argv = ("sphere", "excess", "--sides", "1", "1.2", "0.8", "--method", "mc",
            "--samples", "200000", "--seed", "42", "--format", "json")
    first, second = run_process(*argv), run_process(*argv)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
