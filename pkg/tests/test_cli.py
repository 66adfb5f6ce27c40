import csv
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from ucsets import SetFamily, write_fam
from ucsets.cli import EXIT_COUNTEREXAMPLE, EXIT_FAILS, EXIT_INPUT, EXIT_OK, main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ce(tmp_path):
    p = tmp_path / "ce.fam"
    shutil.copy(DATA / "counterexample.fam", p)
    return p


class TestCheck:
    def test_counterexample(self, capsys, ce):
        code, out, _ = run(capsys, "check", ce)
        assert code == EXIT_OK
        assert "union-closed ✓" in out and "reduced ✓" in out
        assert "Frankl conj 4: 6 ≥ 5 strict (witness a, reinforcement ok)" in out

    def test_matrix_file(self, capsys):
        code, out, _ = run(capsys, "check", DATA / "counterexample.bm")
        assert code == EXIT_OK and "Frankl conj 6: 6 ≥ 5 strict" in out

    def test_not_closed_is_exploratory(self, capsys):
        code, out, _ = run(capsys, "check", DATA / "not_closed.fam")
        assert code == EXIT_OK
        assert "union-closed ✗" in out and "precondition not met" in out
        assert "2·max|F_x| = 6 vs m = 6" in out

    def test_malformed(self, capsys, tmp_path):
        bad = tmp_path / "bad.fam"
        bad.write_text("elements: a b\na z\n")
        code, _, err = run(capsys, "check", bad)
        assert code == EXIT_INPUT and "bad.fam:2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", tmp_path / "nope.fam")
        assert code == EXIT_INPUT and "nope.fam" in err

    def test_failing_inequality_exit(self, capsys, ce, monkeypatch):
        from ucsets import cli
        from ucsets.conjectures import ConjectureReport

        monkeypatch.setattr(cli, "check_frankl", lambda f, v, route="family": ConjectureReport("4", 4, 5, witness="a"))
        code, out, _ = run(capsys, "check", ce)
        assert code == EXIT_FAILS and "FAILS" in out

    def test_csv_matches_printed(self, capsys, ce, tmp_path):
        out_csv = tmp_path / "r.csv"
        _, out, _ = run(capsys, "check", ce, "--csv", out_csv)
        rows = list(csv.DictReader(out_csv.open()))
        assert [r["conjecture"] for r in rows] == ["4", "6", "3", "5"]
        for r in rows:
            printed = f"Frankl conj {r['conjecture']}: {r['lhs_num']} "
            assert printed in out and f" {r['rhs_num']} strict" in out

    def test_relabeled_copy_prints_same(self, capsys, tmp_path):
        # reverse the element order and rename: a canonical relabeling
        f = SetFamily.from_sets([[], ["z"], ["y"], ["z", "y"], ["z", "y", "x"]], "xyz")
        p = tmp_path / "relabeled.fam"
        write_fam(f, p)
        _, original, _ = run(capsys, "strong", DATA / "counterexample.fam")
        _, relabeled, _ = run(capsys, "strong", p)
        assert original == relabeled
        _, a, _ = run(capsys, "min-r", DATA / "counterexample.fam")
        _, b, _ = run(capsys, "min-r", p)
        assert a == b


class TestMinR:
    def test_counterexample(self, capsys, ce):
        code, out, _ = run(capsys, "min-r", ce)
        assert code == EXIT_OK and out.strip() == "r = 1 (r=0: 14<15; r=1: 38≥35)"

    def test_powerset(self, capsys):
        code, out, _ = run(capsys, "min-r", DATA / "powerset2.fam")
        assert code == EXIT_OK and out.startswith("equality for all r (Boolean case)")

    def test_budget(self, capsys, ce):
        code, out, _ = run(capsys, "min-r", ce, "--r-max", "0")
        assert code == EXIT_OK and out.startswith("not found ≤ 0, exists by limit")

    def test_precondition(self, capsys):
        code, _, err = run(capsys, "min-r", DATA / "not_closed.fam")
        assert code == EXIT_INPUT and "union-closed" in err

    def test_csv(self, capsys, ce, tmp_path):
        out_csv = tmp_path / "r.csv"
        run(capsys, "min-r", ce, "--csv", out_csv)
        (row,) = csv.DictReader(out_csv.open())
        assert (row["conjecture"], row["lhs_num"], row["rhs_num"], row["witness"]) == ("9", "38", "35", "1")


class TestStrong:
    def test_counterexample(self, capsys, ce):
        code, out, _ = run(capsys, "strong", ce)
        assert code == EXIT_OK
        assert "2·Σ|A∩B| vs m·Σ|A|: 38 ≥ 35 strict" in out
        assert "Σ|A∩B| vs Σ|A\\B|: 19 ≥ 16 strict" in out
        assert "3·Σ|A∩B| vs Σ|A∪B|: 57 ≥ 51 strict" in out
        assert "30 ≥ 24 strict" in out

    def test_exploratory(self, capsys):
        code, out, _ = run(capsys, "strong", DATA / "not_closed.fam")
        assert code == EXIT_OK and "precondition not met" in out and "sufficient condition" not in out

    def test_csv_matches_printed(self, capsys, ce, tmp_path):
        out_csv = tmp_path / "s.csv"
        _, out, _ = run(capsys, "strong", ce, "--csv", out_csv)
        rows = list(csv.DictReader(out_csv.open()))
        assert len(rows) == 7
        for r in rows:
            assert f"{r['lhs_num']} ≥ {r['rhs_num']}" in out
            assert r["lhs_den"] == r["rhs_den"] == "1"


class TestIdentity:
    def test_counterexample(self, capsys, ce):
        code, out, _ = run(capsys, "identity", ce)
        assert code == EXIT_OK
        assert "43 = 32 + 11" in out and "δ = (1, 1, -3)" in out and "strict" in out

    def test_powerset(self, capsys):
        _, out, _ = run(capsys, "identity", DATA / "powerset2.fam")
        assert "16 = 16 + 0" in out and "equality" in out


class TestLatticeVerbs:
    def test_pentagon(self, capsys, tmp_path):
        out_fam = tmp_path / "n5.fam"
        dot = tmp_path / "n5.dot"
        code, out, _ = run(capsys, "from-lattice", DATA / "pentagon.lat", "-o", out_fam, "--dot", dot)
        assert code == EXIT_OK
        assert "5 members on 3 elements" in out and "Conj 1: 4 ≤ 5 strict" in out
        assert out_fam.read_text().startswith("elements: a b c\n")
        assert dot.read_text().startswith("digraph")

    def test_boolean(self, capsys, tmp_path):
        out_fam = tmp_path / "b2.fam"
        code, out, _ = run(capsys, "from-lattice", DATA / "boolean2.lat", "-o", out_fam)
        assert code == EXIT_OK and "4 = 4 equality" in out
        assert out_fam.read_text() == "elements: x y\n-\nx\ny\nx y\n"

    def test_ideals(self, capsys, tmp_path):
        argv = ["from-lattice", DATA / "pentagon.lat", "--direction", "ideals", "-o", tmp_path / "u.fam"]
        code, out, _ = run(capsys, *argv)
        assert code == EXIT_OK and "Conj 2: 6 ≥ 5 strict" in out

    def test_invalid(self, capsys, tmp_path):
        code, _, err = run(capsys, "from-lattice", DATA / "broken.lat", "-o", tmp_path / "x.fam")
        assert code == EXIT_INPUT and "no join for (a,b)" in err

    def test_to_lattice_round_trip(self, capsys, ce, tmp_path):
        lat = tmp_path / "ce.lat"
        code, out, _ = run(capsys, "to-lattice", ce, "-o", lat)
        assert code == EXIT_OK and "5 elements" in out
        code, out, _ = run(capsys, "from-lattice", lat, "--direction", "ideals", "-o", tmp_path / "back.fam")
        assert code == EXIT_OK and "5 members on 3 elements" in out

    def test_to_lattice_precondition(self, capsys):
        code, _, err = run(capsys, "to-lattice", DATA / "not_closed.fam")
        assert code == EXIT_INPUT and "neither" in err

    def test_unwritable_output(self, capsys, ce, tmp_path):
        code, _, _ = run(capsys, "to-lattice", ce, "-o", tmp_path / "missing" / "x.lat")
        assert code == EXIT_INPUT


class TestEnumerate:
    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 9), (4, 126)])
    def test_counts(self, capsys, n, count):
        code, out, _ = run(capsys, "enumerate", "--n", n)
        assert code == EXIT_OK and out.startswith(f"n={n}: {count} non-isomorphic")

    def test_labelled_and_files(self, capsys, tmp_path):
        code, out, _ = run(capsys, "enumerate", "--n", 3, "--labelled", "--show", "-o", tmp_path)
        assert code == EXIT_OK and "32 labelled" in out
        assert len(list(tmp_path.glob("n3_*.fam"))) == 32
        assert "{{}, {a}, {b}, {a,b}, {a,b,c}}" in out

    def test_bound(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", 5)
        assert code == EXIT_INPUT and "n <= 4" in err


class TestSearch:
    def test_exhaustive(self, capsys, tmp_path):
        code, out, _ = run(capsys, "search", "--n", 3, "--mode", "exhaustive", "-o", tmp_path)
        assert code == EXIT_OK and "families checked: 9" in out
        data = json.loads((tmp_path / "summary.json").read_text())
        assert data["counts"]["12a"]["fails"] == 0 and data["failures"] == []

    def test_random_deterministic(self, capsys, tmp_path):
        argv = ["search", "--n", "6", "--mode", "random", "--samples", "500", "--seed", "7", "--reports"]
        run(capsys, *argv, "-o", tmp_path / "a")
        run(capsys, *argv, "-o", tmp_path / "b")
        for name in ("summary.json", "summary.csv", "reports.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_range_and_workers(self, capsys, tmp_path):
        argv = ["search", "--n", "5-6", "--mode", "random", "--samples", "200"]
        code, one, _ = run(capsys, *argv, "-o", tmp_path / "a")
        _, two, _ = run(capsys, *argv, "--workers", "2", "-o", tmp_path / "b")
        assert code == EXIT_OK
        assert (tmp_path / "a" / "summary.json").read_text().replace('"workers": 1', "") == (
            tmp_path / "b" / "summary.json"
        ).read_text().replace('"workers": 2', "")

    def test_counterexample_exit(self, capsys, tmp_path, monkeypatch):
        from ucsets import enumeration
        from ucsets.conjectures import ConjectureReport

        monkeypatch.setattr(enumeration, "check_strong", lambda f, ps=None: {"12a": ConjectureReport("12a", 1, 2)})
        code, out, _ = run(capsys, "search", "--n", 2, "-o", tmp_path)
        assert code == EXIT_COUNTEREXAMPLE and "COUNTEREXAMPLE" in out
        assert list((tmp_path / "failures").glob("12a_*.fam"))

    def test_unwritable(self, capsys, tmp_path):
        blocker = tmp_path / "f"
        blocker.write_text("")
        code, _, err = run(capsys, "search", "--n", 2, "-o", blocker / "out")
        assert code == EXIT_INPUT and "not writable" in err

    def test_bad_config(self, capsys, tmp_path):
        assert run(capsys, "search", "--n", 5, "-o", tmp_path)[0] == EXIT_INPUT
        assert run(capsys, "search", "--n", "x")[0] == EXIT_INPUT


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_INPUT


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ucsets", "min-r", str(DATA / "counterexample.fam")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("r = 1")
