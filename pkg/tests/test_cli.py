import json
import subprocess
import sys
from io import StringIO
from pathlib import Path

import pytest

from extcausal.cli import main

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
FIRE = str(MODELS / "forest_fire.ecm")
PEN = str(MODELS / "pen.ecm")


def run(*argv):
    out = StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


class TestSolve:
    def test_named_context(self):
        assert run("solve", FIRE, "--context", "lightning") == (0, "(L=1, M=0, F=1)\n")

    def test_single_context_is_implicit(self):
        code, text = run("solve", PEN)
        assert code == 0 and "PO=1" in text

    def test_context_required(self, capsys):
        assert run("solve", FIRE)[0] == 2
        assert "--context" in capsys.readouterr().err

    def test_unknown_context(self, capsys):
        assert run("solve", FIRE, "--context", "flood")[0] == 2
        assert "flood" in capsys.readouterr().err


class TestIntervene:
    def test_all_contexts(self):
        code, text = run("intervene", FIRE, "--set", "M=0")
        assert code == 0
        assert "arson: (L=0, M=0, F=0)" in text and "both: (L=1, M=0, F=1)" in text

    def test_bad_assignment(self, capsys):
        assert run("intervene", FIRE, "--set", "M")[0] == 2
        assert "VAR=VALUE" in capsys.readouterr().err

    def test_out_of_range(self, capsys):
        assert run("intervene", FIRE, "--set", "F=4")[0] == 2
        assert capsys.readouterr().err.startswith("error:")


class TestOrder:
    def test_dot_matches_golden(self):
        code, text = run("order", FIRE, "--dot")
        assert code == 0 and text == (ROOT / "tests" / "golden" / "forest_fire.dot").read_text()

    def test_json(self):
        code, text = run("order", FIRE, "--json")
        assert code == 0 and json.loads(text)["variables"] == ["L", "M", "F"]

    def test_text(self):
        code, text = run("order", str(MODELS / "forest_fire_ranked.ecm"))
        assert code == 0 and "(1,0,1) < (0,0,0) ≡ (0,1,1)" in text

    def test_formats_are_exclusive(self):
        assert run("order", FIRE, "--dot", "--json")[0] == 2

    def test_missing_normality_information(self, capsys):
        assert run("order", MODELS / "voting.ecm")[0] == 2
        assert "error:" in capsys.readouterr().err


class TestCause:
    def test_yes_with_witness(self):
        code, text = run("cause", FIRE, "--context", "lightning", "L=1", "F=1")
        assert code == 0
        assert text.splitlines() == ["yes: L=1 is a cause of F=1", "  witness (L=0): (L=0, M=0, F=0)"]

    def test_overdetermined_is_no(self):
        code, text = run("cause", FIRE, "--context", "both", "L=1", "F=1")
        assert code == 1 and text.startswith("no:")

    def test_conjunctive_overdetermination_is_yes(self):
        assert run("cause", MODELS / "forest_fire_conjunctive.ecm", "--context", "both", "L=1", "F=1")[0] == 0

    def test_factual_mismatch(self):
        code, text = run("cause", FIRE, "--context", "lightning", "L=0", "F=1")
        assert code == 1 and text.startswith("no:")

    def test_unknown_variable(self, capsys):
        assert run("cause", FIRE, "--context", "lightning", "Q=1", "F=1")[0] == 2
        assert "Q" in capsys.readouterr().err


class TestGrade:
    def test_pen(self):
        code, text = run("grade", PEN, "--effect", "PO=1", "PS=1", "AA=1")
        assert code == 0 and "PS=1 vs AA=1: greater" in text

    def test_json(self):
        code, text = run("grade", PEN, "--effect", "PO=1", "PS=1", "AA=1", "--json")
        assert code == 0 and ["PS=1", "AA=1"] in json.loads(text)["strict"]

    def test_dot(self):
        code, text = run("grade", PEN, "--effect", "PO=1", "PS=1", "AA=1", "--dot")
        assert code == 0 and '"AA=1" -> "PS=1";' in text

    def test_no_witness(self, capsys):
        code, _ = run("grade", FIRE, "--context", "both", "--effect", "F=1", "L=1", "M=1")
        assert code == 1 and "cannot grade" in capsys.readouterr().err


class TestCheck:
    def test_full_order(self):
        code, text = run("check", PEN, "--cap", "8")
        assert code == 0 and "checking the full order on 8 worlds" in text and "all axioms pass" in text

    def test_sampled(self):
        code, text = run("check", FIRE, "--cap", "4", "--samples", "5", "--seed", "3")
        assert code == 0 and "5 random 4-world restrictions (seed 3)" in text


class TestCost:
    def test_text(self):
        code, text = run("cost", FIRE)
        assert code == 0 and "naive equation bits: 12" in text and "F | L, M" in text

    def test_json(self):
        code, text = run("cost", FIRE, "--json")
        assert code == 0 and json.loads(text)["total_orders"] == "40320"


class TestInputErrors:
    def test_missing_file(self, capsys):
        assert run("solve", ROOT / "nope.ecm")[0] == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_syntax_error_reports_location(self, tmp_path, capsys):
        bad = tmp_path / "bad.ecm"
        bad.write_text("var A : {0, 1}\nA = max(A,, 1)\n")
        assert run("solve", bad)[0] == 2
        assert "2:11" in capsys.readouterr().err

    def test_unknown_subcommand(self):
        assert run("explode", FIRE)[0] == 2

    def test_help(self):
        assert run("--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "extcausal", "solve", FIRE, "--context", "arson"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "(L=0, M=1, F=1)\n"
