import json

import pytest

from hhres import cli
from hhres.cli import RunConfig, main
from hhres.verify import CheckResult, VerificationReport


class TestRunConfig:
    def test_roundtrip(self):
        cfg = RunConfig("rspe", {"orders": 12, "out_dir": "out"})
        assert RunConfig.from_json_obj(cfg.to_json_obj()) == cfg


class TestRspeCommand:
    def test_writes_exact_coefficients(self, tmp_path):
        assert main(["rspe", "--orders", "4",
                     "--out-dir", str(tmp_path), "--no-plots"]) == 0
        doc = json.loads((tmp_path / "coefficients.json").read_text())
        assert doc["beta_coeffs"][2] == "-1/18"
        assert doc["config"]["params"]["orders"] == 4
        assert "build_id" in doc
        csv_text = (tmp_path / "coefficients.csv").read_text()
        assert "2,-1/18," in csv_text

    def test_order_zero(self, tmp_path):
        main(["rspe", "--orders", "0", "--out-dir", str(tmp_path), "--no-plots"])
        doc = json.loads((tmp_path / "coefficients.json").read_text())
        assert doc["beta_coeffs"] == ["2/1"]

    def test_negative_orders_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["rspe", "--orders", "-1", "--out-dir", str(tmp_path)])
        assert exc.value.code == 2

    def test_figures_rendered(self, tmp_path):
        main(["rspe", "--orders", "14", "--out-dir", str(tmp_path)])
        assert (tmp_path / "coefficients.png").exists()
        assert (tmp_path / "growth.json").exists()

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"orders": 3, "out_dir": str(tmp_path),
                                   "no_plots": True}))
        assert main(["rspe", "--config", str(cfg)]) == 0
        doc = json.loads((tmp_path / "coefficients.json").read_text())
        assert doc["orders"] == 3

    def test_config_unknown_key(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"bogus": 1}))
        with pytest.raises(SystemExit) as exc:
            main(["rspe", "--config", str(cfg)])
        assert exc.value.code == 2

    def test_rerun_bit_identical(self, tmp_path):
        argv = ["rspe", "--orders", "6", "--out-dir", str(tmp_path), "--no-plots"]
        main(argv)
        first = {n: (tmp_path / n).read_bytes()
                 for n in ("coefficients.json", "coefficients.csv")}
        main(argv)
        for name, blob in first.items():
            assert (tmp_path / name).read_bytes() == blob


class TestResonanceCommand:
    def test_beta_zero_row(self, tmp_path):
        assert main(["resonance", "--beta", "0", "--out-dir", str(tmp_path),
                     "--no-plots"]) == 0
        rows = json.loads((tmp_path / "resonances.json").read_text())["rows"]
        assert abs(rows[0]["re_E"] - 2.0) < 1e-10
        assert abs(rows[0]["im_E"]) < 1e-10

    def test_symmetric_pair(self, tmp_path):
        assert main(["resonance", "--beta", "0.1", "--beta", "-0.1",
                     "--tol", "1e-8", "--n-max-cap", "44",
                     "--out-dir", str(tmp_path), "--no-plots"]) == 0
        rows = json.loads((tmp_path / "resonances.json").read_text())["rows"]
        assert abs(rows[0]["re_E"] - rows[1]["re_E"]) < 1e-10
        assert abs(rows[0]["im_E"] + rows[1]["im_E"]) < 1e-10

    def test_continuation_export(self, tmp_path):
        assert main(["resonance", "--track-rho", "0.05", "--track-steps", "16",
                     "--out-dir", str(tmp_path)]) == 0
        assert (tmp_path / "continuation.csv").exists()
        assert (tmp_path / "continuation.png").exists()
        doc = json.loads((tmp_path / "continuation.json").read_text())
        assert doc["endpoint_mismatch"] < 1e-6

    def test_bad_theta_is_usage_error(self, tmp_path):
        assert main(["resonance", "--beta", "0.1", "--theta-im", "0.9",
                     "--out-dir", str(tmp_path), "--no-plots"]) == 2

    def test_too_few_track_steps(self, tmp_path):
        assert main(["resonance", "--track-rho", "0.05", "--track-steps", "2",
                     "--out-dir", str(tmp_path), "--no-plots"]) == 1


class TestResumCommand:
    @pytest.fixture()
    def coeff_file(self, tmp_path):
        main(["rspe", "--orders", "16", "--out-dir", str(tmp_path), "--no-plots"])
        return tmp_path / "coefficients.json"

    def test_constant_series(self, tmp_path):
        path = tmp_path / "const.json"
        path.write_text(json.dumps({"E0": "2/1", "beta_coeffs": ["2/1"],
                                    "g_coeffs": ["2/1"], "orders": 0}))
        assert main(["resum", "--coeffs", str(path), "--beta", "0.1",
                     "--beta", "0.2", "--q", "1", "--out-dir", str(tmp_path),
                     "--no-plots"]) == 0
        rows = json.loads((tmp_path / "resummation.json").read_text())["rows"]
        assert all(abs(r["f"] - 2.0) < 1e-10 for r in rows)

    def test_missing_file(self, tmp_path):
        assert main(["resum", "--coeffs", str(tmp_path / "nope.json"),
                     "--beta", "0.1", "--out-dir", str(tmp_path)]) == 2

    def test_rows_and_poles(self, coeff_file, tmp_path):
        assert main(["resum", "--coeffs", str(coeff_file), "--beta", "0.15",
                     "--q", "half", "--out-dir", str(tmp_path)]) == 0
        text = (tmp_path / "resummation.csv").read_text()
        assert "beta,f,re_phi,im_phi,abs_d,err_quad,err_pade" in text
        assert (tmp_path / "poles.json").exists()
        assert (tmp_path / "borel_poles.png").exists()
        assert (tmp_path / "resummation.png").exists()


class TestVerifyCommand:
    def _fake_report(self, passed):
        checks = [CheckResult("demo", passed, 0.0, 1.0, "src", 0.01)]
        return VerificationReport(suite="quick", checks=checks,
                                  environment={}, seeds={}, runtime_s=0.01)

    def test_exit_codes(self, tmp_path, monkeypatch):
        monkeypatch.setattr("hhres.cli.verify.run_suite",
                            lambda suite: self._fake_report(True))
        assert main(["verify", "--suite", "quick",
                     "--out-dir", str(tmp_path)]) == 0
        monkeypatch.setattr("hhres.cli.verify.run_suite",
                            lambda suite: self._fake_report(False))
        assert main(["verify", "--suite", "quick",
                     "--out-dir", str(tmp_path)]) == 1
        doc = json.loads((tmp_path / "verify_report.json").read_text())
        assert doc["checks"][0]["name"] == "demo"


class TestParallelMap:
    def test_sequential_default(self, monkeypatch):
        monkeypatch.delenv("HHRES_THREADS", raising=False)
        assert cli.parallel_map(lambda x: x * x, [1, 2, 3]) == [1, 4, 9]

    def test_threaded_preserves_order(self, monkeypatch):
        monkeypatch.setenv("HHRES_THREADS", "4")
        assert cli.parallel_map(lambda x: x * x, list(range(8))) == \
            [x * x for x in range(8)]
