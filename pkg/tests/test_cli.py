"""CLI behavior: output schemas, exit codes, config merging, determinism.

Commands run in-process through cli.main so exit codes and streams are
captured cheaply; one test drives the installed module entry point in a
subprocess to check the packaging wiring.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from spinsqueeze import cli, validation
from spinsqueeze.spin import husimi_cp1, ket_mu, load_state_csv


def read_csv_rows(path):
    text = path.read_text()
    assert text.endswith("\n") and "\r" not in text
    lines = text.strip("\n").split("\n")
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


class TestKet:
    def test_row_count_and_raw_top_coefficient(self, tmp_path):
        out = tmp_path / "ket.csv"
        assert cli.main(["ket", "--k", "30", "--mu", "0.75", "--out", str(out)]) == 0
        header, rows = read_csv_rows(out)
        assert header == ["n", "re", "im"]
        assert len(rows) == 31
        assert rows[30] == ["30", "1", "0"]
        meta = json.loads((tmp_path / "ket.csv.json").read_text())
        assert meta == {"k": 30, "normalized": False}

    def test_mu_zero_is_one_hot(self, tmp_path):
        out = tmp_path / "ket.csv"
        assert cli.main(["ket", "--k", "30", "--mu", "0", "--out", str(out)]) == 0
        state, _ = load_state_csv(str(out))
        expect = np.zeros(31)
        expect[30] = 1.0
        assert np.array_equal(state.coeffs, expect)

    def test_normalized_output_sums_to_one(self, tmp_path):
        out = tmp_path / "ket.csv"
        code = cli.main(
            ["ket", "--k", "30", "--mu", "0.6,0.2", "--normalize", "--out", str(out)]
        )
        assert code == 0
        state, meta = load_state_csv(str(out))
        assert meta["normalized"] is True
        assert abs(np.sum(np.abs(state.coeffs) ** 2) - 1.0) <= 1e-12

    def test_mu_outside_disk_exits_2_with_message(self, tmp_path, capsys):
        code = cli.main(["ket", "--k", "5", "--mu", "1.2", "--out", str(tmp_path / "x")])
        assert code == 2
        assert "mu" in capsys.readouterr().err


class TestHusimi:
    def test_mu_zero_peaks_at_origin_and_nonnegative(self, tmp_path):
        out = tmp_path / "h.csv"
        code = cli.main(
            ["husimi", "--k", "8", "--mu", "0", "--grid=-1:1:21", "--out", str(out)]
        )
        assert code == 0
        header, rows = read_csv_rows(out)
        assert header == ["re_zeta", "im_zeta", "value"]
        values = {(r[0], r[1]): float(r[2]) for r in rows}
        assert all(v >= 0.0 for v in values.values())
        assert max(values, key=values.get) == ("0", "0")

    def test_grid_matches_direct_evaluation(self, tmp_path):
        out = tmp_path / "h.csv"
        code = cli.main(
            ["husimi", "--k", "10", "--mu", "0.25,0.5", "--grid=-1:1:7", "--out", str(out)]
        )
        assert code == 0
        _, rows = read_csv_rows(out)
        assert len(rows) == 49
        state = ket_mu(10, 0.25 + 0.5j)
        for re_z, im_z, value in rows:
            direct = husimi_cp1(state, complex(float(re_z), float(im_z)))
            assert float(value) == direct

    def test_two_axis_grid_spec(self, tmp_path):
        out = tmp_path / "h.csv"
        code = cli.main(
            ["husimi", "--k", "4", "--mu", "0", "--grid=-1:1:3,-0.5:0.5:5", "--out", str(out)]
        )
        assert code == 0
        _, rows = read_csv_rows(out)
        assert len(rows) == 15


class TestReduceAndSymbol:
    MATRIX = "[[[0,0],[0,0]],[[0,0],[0.45,0]]]"
    CENTER = "[[1,0],[0,0]]"

    def test_reduce_routes_agree(self, tmp_path):
        values = {}
        for route in ("exact", "quadrature"):
            out = tmp_path / f"{route}.json"
            code = cli.main(
                [
                    "reduce", "--matrix", self.MATRIX, "--center", self.CENTER,
                    "--point", "[[0.9,0.1],[0.2,0]]", "--k", "12",
                    "--route", route, "--out", str(out),
                ]
            )
            assert code == 0
            payload = json.loads(out.read_text())
            assert payload["route"] == route
            values[route] = complex(*payload["value"])
        assert abs(values["exact"] - values["quadrature"]) <= 1e-12

    def test_symbol_closed_matches_integral(self, tmp_path, capsys):
        code = cli.main(
            [
                "symbol", "--matrix", self.MATRIX, "--center", self.CENTER,
                "--eta", "[[0,0],[0.5,0.5]]", "--check-integral",
            ]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        closed = complex(*payload["value"])
        integral = complex(*payload["integral_value"])
        assert abs(closed - integral) <= 1e-10
        assert np.isclose(complex(*payload["matrix"][0][0]), 0.45)

    def test_check_integral_without_eta_exits_2(self, capsys):
        code = cli.main(
            ["symbol", "--matrix", self.MATRIX, "--center", self.CENTER, "--check-integral"]
        )
        assert code == 2


class TestNormScan:
    def test_three_rows(self, capsys):
        code = cli.main(["norm-scan", "--mu", "0.75,0", "--k-list", "50,100,200"])
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "k,norm2,limit,err_times_k"
        assert len(lines) == 4
        assert [line.split(",")[0] for line in lines[1:]] == ["50", "100", "200"]
        limit = (1.0 - 0.75**2) ** -0.5
        assert float(lines[1].split(",")[2]) == pytest.approx(limit, rel=1e-15)


HAM_SQUEEZE = '{"terms":[{"coeff":0.5,"exps":[2,0,0]},{"coeff":-0.5,"exps":[0,2,0]}]}'


class TestPropagate:
    def test_t_zero_returns_input(self, tmp_path):
        out = tmp_path / "p.csv"
        code = cli.main(
            [
                "propagate", "--hamiltonian", HAM_SQUEEZE, "--t", "0",
                "--mu0", "0.3,-0.1", "--out", str(out),
            ]
        )
        assert code == 0
        header, rows = read_csv_rows(out)
        assert header == ["t", "re_mu", "im_mu", "re_nu", "im_nu", "delta"]
        assert len(rows) == 1
        t, re_mu, im_mu, re_nu, im_nu, delta = map(float, rows[0])
        assert (t, re_mu, im_mu) == (0.0, 0.3, -0.1)
        assert (re_nu, im_nu, delta) == (1.0, 0.0, 0.0)

    def test_standard_squeeze_closed_form(self, tmp_path):
        out = tmp_path / "p.csv"
        code = cli.main(
            ["propagate", "--hamiltonian", HAM_SQUEEZE, "--t", "0.5", "--out", str(out)]
        )
        assert code == 0
        _, rows = read_csv_rows(out)
        for row in rows[:: len(rows) // 7]:
            t, re_mu, im_mu, re_nu, im_nu, delta = map(float, row)
            assert abs(complex(re_mu, im_mu) + 1j * math.tanh(0.5 * t)) <= 1e-8
            assert abs(complex(re_nu, im_nu) - math.cosh(0.5 * t) ** -0.5) <= 1e-8
            assert delta == 0.0

    def test_disk_exit_gives_code_3_and_diagnostic(self, tmp_path, capsys):
        strong = '{"terms":[{"coeff":10,"exps":[2,0,0]},{"coeff":-10,"exps":[0,2,0]}]}'
        code = cli.main(
            ["propagate", "--hamiltonian", strong, "--t", "2", "--out", str(tmp_path / "x")]
        )
        assert code == 3
        diag = json.loads(capsys.readouterr().err)
        assert diag["error"] == "DiskExitError"
        assert 0.5 < diag["time"] < 1.2

    def test_hamiltonian_from_file(self, tmp_path):
        ham_path = tmp_path / "h.json"
        ham_path.write_text(HAM_SQUEEZE)
        out = tmp_path / "p.csv"
        code = cli.main(
            ["propagate", "--hamiltonian", str(ham_path), "--t", "0.1", "--out", str(out)]
        )
        assert code == 0


class TestCompare:
    def test_reference_difference_and_state_files(self, tmp_path, capsys):
        out_q = tmp_path / "q.csv"
        out_s = tmp_path / "s.csv"
        code = cli.main(
            [
                "compare", "--k", "30", "--t", "1.2",
                "--out-quantum", str(out_q), "--out-semiclassical", str(out_s),
            ]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["k"] == 30 and payload["t"] == 1.2
        assert payload["l2_difference"] == pytest.approx(1.4719e-2, rel=1e-3)
        for path in (out_q, out_s):
            state, meta = load_state_csv(str(path))
            assert meta["normalized"] is True
            assert abs(np.sum(np.abs(state.coeffs) ** 2) - 1.0) <= 1e-12


class TestConfig:
    def test_config_supplies_and_flags_win(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"k": 10, "mu": [0.25, 0.5], "grid": "-1:1:3"}')
        out = tmp_path / "h.csv"
        assert cli.main(["husimi", "--config", str(cfg), "--out", str(out)]) == 0
        _, rows = read_csv_rows(out)
        assert len(rows) == 9
        assert cli.main(
            ["husimi", "--config", str(cfg), "--grid=-1:1:5", "--out", str(out)]
        ) == 0
        _, rows = read_csv_rows(out)
        assert len(rows) == 25

    def test_unknown_config_key_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"k": 10, "mu": [0, 0], "bogus": 1}')
        code = cli.main(["husimi", "--config", str(cfg), "--out", str(tmp_path / "x")])
        assert code == 2
        assert "bogus" in capsys.readouterr().err

    def test_tolerances_block_fills_step(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"hamiltonian": ' + HAM_SQUEEZE + ', "tolerances": {"step": 0.05}}')
        out = tmp_path / "p.csv"
        code = cli.main(["propagate", "--config", str(cfg), "--t", "0.1", "--out", str(out)])
        assert code == 0
        _, rows = read_csv_rows(out)
        assert len(rows) == 3  # t = 0, 0.05, 0.1

    def test_malformed_inline_json_exits_2(self, tmp_path, capsys):
        code = cli.main(
            [
                "reduce", "--matrix", "[[bad", "--center", "[[1,0],[0,0]]",
                "--point", "[[1,0],[0,0]]", "--k", "3",
            ]
        )
        assert code == 2

    def test_missing_required_option_exits_2(self, capsys):
        code = cli.main(["ket", "--mu", "0.5", "--out", "/tmp/unused.csv"])
        assert code == 2
        assert "--k" in capsys.readouterr().err


class TestDeterminism:
    def test_identical_config_gives_identical_bytes(self, tmp_path):
        args = ["ket", "--k", "25", "--mu", "0.6,0.2", "--normalize"]
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            assert cli.main(args + ["--out", str(out)]) == 0
            outs.append(out.read_bytes() + (tmp_path / (name + ".json")).read_bytes())
        assert outs[0] == outs[1]

    def test_husimi_bytes_stable(self, tmp_path):
        blobs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            code = cli.main(
                ["husimi", "--k", "6", "--mu", "0.3,0.1", "--grid=-1:1:9", "--out", str(out)]
            )
            assert code == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]


class TestValidateCommand:
    @staticmethod
    def _stub_results():
        return [
            validation.CheckResult(
                name="alpha", suite="core", measured=0.5, bound=1.0,
                passed=True, detail="fine",
            ),
            validation.CheckResult(
                name="beta", suite="core", measured=2.0, bound=1.0,
                passed=False, detail="too big",
            ),
        ]

    def test_report_schema_and_failure_exit(self, monkeypatch, capsys):
        monkeypatch.setattr(cli, "run_suite", lambda suite: self._stub_results())
        code = cli.main(["validate", "--suite", "core"])
        assert code == 1
        report = json.loads(capsys.readouterr().out)
        assert report["suite"] == "core"
        assert report["passed"] is False
        assert [c["name"] for c in report["checks"]] == ["alpha", "beta"]
        assert set(report["checks"][0]) == {
            "name", "suite", "measured", "bound", "passed", "detail",
        }

    def test_report_bytes_stable(self, monkeypatch, capsys):
        monkeypatch.setattr(cli, "run_suite", lambda suite: self._stub_results())
        texts = []
        for _ in range(2):
            cli.main(["validate"])
            texts.append(capsys.readouterr().out)
        assert texts[0] == texts[1]

    def test_all_passing_exits_0(self, monkeypatch, capsys):
        monkeypatch.setattr(cli, "run_suite", lambda suite: self._stub_results()[:1])
        assert cli.main(["validate"]) == 0


def test_module_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "spinsqueeze", "norm-scan", "--mu", "0.5", "--k-list", "10"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("k,norm2,limit,err_times_k\n")
