import json
import subprocess
import sys
from pathlib import Path

import pytest

from reidtai.cli import main

REPO = Path(__file__).resolve().parent.parent


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "reidtai.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd or REPO,
    )


class TestBasics:
    def test_age(self, capsys):
        assert main(["--format", "json", "age", "--spectrum", "1/6,1/3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"schema": 1, "spectrum": ["1/6", "1/3"], "age": "1/2", "exceptional": True}

    def test_rt_check(self, capsys):
        code = main(["--format", "json", "rt-check", "--spectrum", "1/2,1/2", "--spectrum", "1/2,0"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["satisfies_rt"] is False

    def test_table1_row_count(self, capsys):
        assert main(["--format", "json", "table1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["rows"]) == 11
        assert payload["schema"] == 1

    def test_same_order_screen(self, capsys):
        assert main(["--format", "json", "same-order-screen", "--n", "10", "--dim", "4"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["min_age"] == "4/5" and payload["exceptional"] is True


class TestConformanceExit:
    def test_orders_scan_strict_exit(self, capsys):
        assert main(["orders-scan", "--bound", "372"]) == 0
        capsys.readouterr()
        assert main(["orders-scan", "--bound", "372", "--strict-conformance"]) == 1
        capsys.readouterr()
        # flag position before the subcommand works too
        assert main(["--strict-conformance", "orders-scan", "--bound", "372"]) == 1
        capsys.readouterr()

    def test_pair_search_strict_exit(self, capsys):
        assert main(["pair-search", "--f-max", "12", "--mode", "value-union", "--strict-conformance"]) == 1
        capsys.readouterr()


class TestTorusCommands:
    @pytest.fixture()
    def kummer_file(self, tmp_path):
        path = tmp_path / "kummer2.json"
        path.write_text(json.dumps({
            "rank": 2,
            "generators": [{"matrix": [[-1, 0], [0, -1]], "translation": ["0", "0"]}],
        }))
        return str(path)

    def test_av_verdict(self, kummer_file, capsys):
        assert main(["av-verdict", kummer_file]) == 0
        assert capsys.readouterr().out.strip() == "KodairaZero"

    def test_filtration_json(self, kummer_file, capsys):
        assert main(["--format", "json", "filtration", kummer_file]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "KodairaZero"
        assert payload["schema"] == 1

    def test_malformed_json_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"rank": 2, ')
        assert main(["av-verdict", str(bad)]) == 2

    def test_missing_file_exit_2(self):
        assert main(["av-verdict", "/nonexistent/x.json"]) == 2

    def test_infinite_order_generator_exit_2(self, tmp_path):
        bad = tmp_path / "bad_gen.json"
        bad.write_text(json.dumps({
            "rank": 2,
            "generators": [{"matrix": [[1, 1], [0, 1]], "translation": ["0", "0"]}],
        }))
        assert main(["av-verdict", str(bad)]) == 2


class TestWitnessRoundTrip:
    def test_pair_witnesses_verify(self, tmp_path, capsys):
        assert main(["--format", "json", "pair-search", "--f-max", "12"]) == 0
        payload = json.loads(capsys.readouterr().out)
        extras = payload["conformance"]["extra"]
        assert extras
        for entry in extras[:3]:
            wfile = tmp_path / "w.json"
            wfile.write_text(json.dumps(entry["witness"]))
            assert main(["verify-witness", str(wfile)]) == 0
            capsys.readouterr()

    def test_order_witness_verifies(self, tmp_path, capsys):
        assert main(["--format", "json", "orders-scan", "--bound", "30"]) == 0
        payload = json.loads(capsys.readouterr().out)
        entry = payload["conformance"]["extra"][0]
        wfile = tmp_path / "w.json"
        wfile.write_text(json.dumps(entry["witness"]))
        assert main(["verify-witness", str(wfile)]) == 0

    def test_tampered_witness_fails(self, tmp_path, capsys):
        assert main(["--format", "json", "orders-scan", "--bound", "30"]) == 0
        payload = json.loads(capsys.readouterr().out)
        witness = payload["conformance"]["extra"][0]["witness"]
        witness["sum"] = "1/2"
        wfile = tmp_path / "w.json"
        wfile.write_text(json.dumps(witness))
        assert main(["verify-witness", str(wfile)]) == 1

    def test_unknown_kind_exit_2(self, tmp_path):
        wfile = tmp_path / "w.json"
        wfile.write_text(json.dumps({"kind": "nonsense"}))
        assert main(["verify-witness", str(wfile)]) == 2

    def test_multiset_witnesses_verify(self, tmp_path, capsys):
        assert main(["--format", "json", "multisets", "--mode", "orbit-sets"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["refutations"]  # excluded candidates ship their totals
        entry = payload["conformance"]["extra"][0]
        wfile = tmp_path / "w.json"
        wfile.write_text(json.dumps(entry["witness"]))
        assert main(["verify-witness", str(wfile)]) == 0

    def test_orbit_pair_witness_verifies(self, tmp_path, capsys):
        assert main(["--format", "json", "pair-search", "--f-max", "12", "--mode", "orbit-sets"]) == 0
        payload = json.loads(capsys.readouterr().out)
        entry = payload["conformance"]["extra"][0]
        wfile = tmp_path / "w.json"
        wfile.write_text(json.dumps(entry["witness"]))
        assert main(["verify-witness", str(wfile)]) == 0


class TestDeterminism:
    def test_reports_byte_identical_across_threads(self):
        runs = [
            run_cli("--format", "json", "--threads", str(k), "orders-scan", "--bound", "200").stdout
            for k in (1, 2, 4)
        ]
        assert runs[0] == runs[1] == runs[2]

    def test_env_thread_override(self):
        import os

        env = dict(os.environ, REIDTAI_THREADS="3")
        out = subprocess.run(
            [sys.executable, "-m", "reidtai.cli", "--format", "json", "orders-scan", "--bound", "200"],
            capture_output=True,
            text=True,
            env=env,
        ).stdout
        base = run_cli("--format", "json", "orders-scan", "--bound", "200").stdout
        assert out == base


class TestGolden:
    def test_repository_golden_files_match(self, capsys):
        assert main(["golden", "--dir", str(REPO / "golden")]) == 0

    def test_regeneration_round_trip(self, tmp_path, capsys):
        assert main(["golden", "--dir", str(tmp_path)]) == 1  # nothing there yet
        capsys.readouterr()
        assert main(["golden", "--write", "--dir", str(tmp_path)]) == 0
        capsys.readouterr()
        assert main(["golden", "--dir", str(tmp_path)]) == 0
        for name in ("table1.json", "table2.json", "pairs.json", "orders.json", "multisets.json"):
            assert json.loads((tmp_path / name).read_text())["schema"] == 1


class TestMonomialCommand:
    def test_monomial_check(self, capsys):
        assert main(["--format", "json", "monomial-check", "--m", "2", "--p", "1", "--n", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["group_order"] == payload["expected_order"] == 48
        assert payload["violations"] == []

    def test_imprimitive_cases(self, capsys):
        assert main(["--format", "json", "imprimitive-cases"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["cases"]) == 5
        assert sum(not c["eliminated"] for c in payload["cases"]) == 1


class TestTableRenderers:
    """Every subcommand renders table format without crashing."""

    @pytest.mark.parametrize(
        "args",
        [
            ["age", "--spectrum", "1/6,1/3"],
            ["rt-check", "--spectrum", "1/2,1/2"],
            ["table1"],
            ["orders-scan", "--bound", "30"],
            ["pair-search", "--f-max", "12"],
            ["multisets", "--f-max", "12", "--mode", "orbit-sets"],
            ["same-order-screen", "--n", "6", "--dim", "5"],
            ["simple-av-screen", "--dim", "4"],
            ["monomial-check", "--m", "2", "--p", "2", "--n", "2"],
            ["imprimitive-cases"],
            ["deviation", "--spectrum", "1/6,1/3"],
            ["extraspecial-scan", "--max-dim", "9"],
        ],
    )
    def test_table_format(self, args, capsys):
        assert main(args) == 0
        assert capsys.readouterr().out.strip()

    def test_torus_tables(self, tmp_path, capsys):
        path = tmp_path / "in.json"
        path.write_text(json.dumps({
            "rank": 1,
            "generators": [{"matrix": [[-1]], "translation": ["0"]}],
        }))
        assert main(["av-verdict", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "RationallyConnected"
        assert main(["filtration", str(path)]) == 0
        assert "verdict: RationallyConnected" in capsys.readouterr().out


class TestDeviationCommand:
    def test_spectrum(self, capsys):
        assert main(["--format", "json", "deviation", "--spectrum", "1/6,1/6,1/3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["eigenbasis_deviation"] < payload["arc_bound"]

    def test_matrix_file(self, tmp_path, capsys):
        mfile = tmp_path / "m.json"
        mfile.write_text(json.dumps([[[0, 1]]]))  # 1x1 matrix [i]
        assert main(["--format", "json", "deviation", "--matrix", str(mfile)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["total"] - 2**0.5) < 1e-9

    def test_non_unitary_matrix_exit_2(self, tmp_path):
        mfile = tmp_path / "m.json"
        mfile.write_text(json.dumps([[[2, 0]]]))
        assert main(["deviation", "--matrix", str(mfile)]) == 2

    def test_matrix_with_explicit_basis(self, tmp_path, capsys):
        mfile = tmp_path / "m.json"
        mfile.write_text(json.dumps([[[-1, 0], [0, 0]], [[0, 0], [1, 0]]]))  # diag(-1, 1)
        bfile = tmp_path / "b.json"
        s = 2**-0.5
        bfile.write_text(json.dumps([[[s, 0], [s, 0]], [[s, 0], [-s, 0]]]))
        assert main(["--format", "json", "deviation", "--matrix", str(mfile), "--basis", str(bfile)]) == 0
        payload = json.loads(capsys.readouterr().out)
        # both rotated basis vectors move by sqrt(2)
        assert abs(payload["total"] - 2 * 2**0.5) < 1e-9

    def test_simple_av_screen(self, capsys):
        assert main(["--format", "json", "simple-av-screen", "--dim", "4"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["survivors"] == {"6": "2/3", "10": "4/5"}
        assert payload["extra_survivors"] == {"15": "14/15"}

    def test_rt_check_without_spectra_exit_2(self):
        assert main(["rt-check"]) == 2

    def test_extraspecial_scan(self, capsys):
        assert main(["--format", "json", "extraspecial-scan", "--max-dim", "18"]) == 0
        payload = json.loads(capsys.readouterr().out)
        survivors = {(r["p"], r["n_exp"], r["m"]) for r in payload["records"] if r["survives"]}
        assert (2, 1, 1) in survivors
        assert (2, 4, 1) not in survivors
        assert (3, 2, 2) not in survivors
