import numpy as np
import pytest
from fastapi.testclient import TestClient

from adrckit.service.app import app

client = TestClient(app, raise_server_exceptions=False)

PAPER_TUNING = {"order": 2, "omega_cl": 1.0, "k_eso": 10.0, "b0": 1.0, "mode": "bw"}
PAPER_PLANT = {"num": [1.0], "den": [1.0, 2.0, 1.0]}


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


class TestTuneEndpoint:
    def test_paper_case(self):
        r = client.post("/tune", json=PAPER_TUNING)
        assert r.status_code == 200
        body = r.json()
        assert body["k"] == [1.0, 2.0]
        assert body["l"] == [30.0, 300.0, 1000.0]
        assert body["mode"] == "bw"
        for re_im in body["poles_controller"]:
            assert re_im[0] == pytest.approx(-1.0, abs=1e-6)
        for re_im in body["poles_observer"]:
            assert re_im[0] == pytest.approx(-10.0, abs=1e-3)

    def test_half_kl(self):
        r = client.post("/tune", json={**PAPER_TUNING, "mode": "half-kl"})
        body = r.json()
        assert body["k"] == [0.5, 1.0]
        assert body["l"] == [15.0, 150.0, 500.0]
        for re_im in body["poles_controller"]:
            assert re_im[0] == pytest.approx(-0.5, abs=1e-9)

    def test_invalid_mode_order_combo(self):
        r = client.post("/tune", json={**PAPER_TUNING, "order": 1, "mode": "half-k"})
        assert r.status_code == 422

    def test_unknown_key_rejected(self):
        r = client.post("/tune", json={**PAPER_TUNING, "bogus": 1})
        assert r.status_code == 422

    def test_zero_b0_rejected(self):
        r = client.post("/tune", json={**PAPER_TUNING, "b0": 0.0})
        assert r.status_code == 422


class TestVerifyTheoremEndpoint:
    def test_controller(self):
        r = client.post("/verify-theorem", json={"order": 3, "alpha": 1.0})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"] is True
        assert body["max_rel_deviation"] < 1e-8
        assert body["residual"] < 1e-10
        assert body["gains_riccati"] == pytest.approx([0.5, 1.5, 1.5])

    def test_observer(self):
        r = client.post("/verify-theorem",
                        json={"order": 2, "alpha": 10.0, "design": "observer"})
        body = r.json()
        assert body["passed"] is True
        assert body["gains_half_bandwidth"] == [15.0, 150.0, 500.0]

    def test_first_order(self):
        r = client.post("/verify-theorem", json={"order": 1, "alpha": 1.0})
        body = r.json()
        assert body["passed"] is True
        assert body["gains_riccati"] == pytest.approx([0.5])


class TestBodeEndpoint:
    def test_controller_feedback_table(self):
        r = client.post("/bode", json={
            "plant": PAPER_PLANT, "tuning": PAPER_TUNING,
            "grid": {"omega_min": 0.1, "omega_max": 100.0, "points": 5},
        })
        assert r.status_code == 200
        body = r.json()
        assert body["columns"][0] == "omega"
        assert "cfb_bw_mag" in body["columns"]
        assert "cfb_half-kl_phase_deg" in body["columns"]
        assert len(body["rows"]) == 5

    def test_loop_gain_table(self):
        r = client.post("/bode", json={
            "plant": PAPER_PLANT, "tuning": PAPER_TUNING, "target": "loop-gain",
            "modes": ["bw"], "grid": {"omega_min": 0.1, "omega_max": 10.0, "points": 3},
        })
        assert "g0_bw_mag" in r.json()["columns"]


class TestGangOfSixEndpoint:
    def test_freq_ordering_at_high_frequency(self):
        r = client.post("/gangofsix", json={
            "plant": PAPER_PLANT, "tuning": PAPER_TUNING,
            "grid": {"omega_min": 50.0, "omega_max": 500.0, "points": 3},
        })
        assert r.status_code == 200
        body = r.json()
        cols = body["columns"]
        last = body["rows"][-1]
        mag = {m: last[cols.index(f"g_un_{m}_mag")] for m in ("bw", "half-k", "half-l", "half-kl")}
        assert mag["half-kl"] <= mag["half-l"] < mag["bw"]
        assert mag["half-k"] < mag["bw"]

    def test_step_final_values(self):
        r = client.post("/gangofsix", json={
            "plant": PAPER_PLANT, "tuning": PAPER_TUNING, "output": "step",
            "modes": ["bw", "half-kl"], "t_final": 50.0, "dt": 0.01,
        })
        body = r.json()
        cols = body["columns"]
        last = body["rows"][-1]
        for mode in ("bw", "half-kl"):
            assert last[cols.index(f"g_yr_{mode}")] == pytest.approx(1.0, abs=1e-6)
            assert last[cols.index(f"g_ud_{mode}")] == pytest.approx(-1.0, abs=1e-6)
            assert last[cols.index(f"g_yd_{mode}")] == pytest.approx(0.0, abs=1e-6)


class TestStepEndpoint:
    def test_columns_and_final_values(self):
        r = client.post("/step", json={"order": 2, "omega_cl": 1.0,
                                       "t_final": 30.0, "dt": 0.01})
        body = r.json()
        assert body["columns"] == ["time", "y_bandwidth", "y_half_gain"]
        assert body["rows"][-1][1] == pytest.approx(1.0, abs=1e-6)
        assert body["rows"][-1][2] == pytest.approx(1.0, abs=1e-4)
        y_half = np.array([row[2] for row in body["rows"]])
        assert y_half.max() > 1.005


class TestSimulateEndpoint:
    CASE = {
        "plant": PAPER_PLANT,
        "tuning": PAPER_TUNING,
        "simulation": {
            "ts": 1e-3, "t_final": 2.0,
            "reference": {"kind": "step", "amplitude": 1.0},
            "noise": {"kind": "white-noise", "noise_std": 0.01, "seed": 42},
        },
    }

    def test_metrics_and_trace(self):
        r = client.post("/simulate", json=self.CASE)
        assert r.status_code == 200
        body = r.json()
        assert body["mode"] == "bw"
        assert set(body["metrics"]) == {"rms_u", "rms_y_err", "overshoot_pct",
                                        "settling_time_2pct"}
        assert body["trace"]["columns"] == ["time", "r", "d", "n", "u", "y",
                                            "xhat1", "xhat2", "xhat3"]
        assert len(body["trace"]["rows"]) == 2001

    def test_mode_override_query(self):
        r = client.post("/simulate?mode=half-l", json=self.CASE)
        assert r.json()["mode"] == "half-l"

    def test_zero_signals(self):
        case = {"plant": PAPER_PLANT, "tuning": PAPER_TUNING,
                "simulation": {"ts": 1e-3, "t_final": 0.5,
                               "reference": {"kind": "zero"}}}
        r = client.post("/simulate", json=case)
        rows = np.array(r.json()["trace"]["rows"])
        assert np.all(rows[:, 1:] == 0.0)

    def test_unknown_config_key_rejected(self):
        case = {**self.CASE, "extra_section": {}}
        assert client.post("/simulate", json=case).status_code == 422

    def test_divergence_maps_to_422_with_time(self):
        case = {"plant": {"num": [-1.0], "den": [1.0, 2.0, 1.0]},
                "tuning": PAPER_TUNING,
                "simulation": {"ts": 1e-3, "t_final": 60.0,
                               "reference": {"kind": "step", "amplitude": 1.0}}}
        r = client.post("/simulate", json=case)
        assert r.status_code == 422
        assert "time" in r.json()
