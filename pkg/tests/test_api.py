"""
Tests for the HTTP API
"""

import math

import pytest
from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)

CHANNEL = {"H_E": 0.1}


class TestService:
    def test_root(self):
        response = client.get("/")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_health(self):
        assert client.get("/health").json()["settings"]["solver_tol"] == 1e-12


class TestChannelEndpoint:
    def test_gain(self):
        body = {
            "lambertian": {"m": 1, "A_r": 1e-4, "T_s": 1, "g": 1, "Psi": math.pi / 3},
            "bob": {"D": 2, "phi": 0, "psi": 0},
            "eve": {"D": 4, "phi": 0.3, "psi": 0.3},
        }
        data = client.post("/api/v1/channel/gain", json=body).json()
        assert data["H_B"] == pytest.approx(1e-4 / (4 * math.pi))
        assert data["gain_ratio"] > 1
        assert data["eavesdropper_dominates"] is False

    def test_blind_eavesdropper_ratio_is_null(self):
        body = {
            "lambertian": {"m": 1, "A_r": 1e-4, "T_s": 1, "g": 1, "Psi": 1.0},
            "bob": {"D": 2, "phi": 0, "psi": 0},
            "eve": {"D": 2, "phi": 0, "psi": 1.2},
        }
        data = client.post("/api/v1/channel/gain", json=body).json()
        assert data["gain_ratio"] is None
        assert data["degenerate_eavesdropper"] is True

    def test_bob_outside_field_of_view(self):
        body = {
            "lambertian": {"m": 1, "A_r": 1e-4, "T_s": 1, "g": 1, "Psi": 1.0},
            "bob": {"D": 2, "phi": 0, "psi": 1.2},
            "eve": {"D": 2, "phi": 0, "psi": 0},
        }
        response = client.post("/api/v1/channel/gain", json=body)
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "scenario"


class TestBoundsEndpoints:
    def test_average(self):
        data = client.post("/api/v1/bounds/avg", json={"channel": CHANNEL, "xi": 0.3, "P": 10.0}).json()
        assert data["lower"] <= data["upper"] + 1e-9
        assert data["branch_upper"] in ("cond_holds", "cond_fails")
        assert data["gap"] == pytest.approx(data["upper_raw"] - data["lower_raw"])

    def test_average_signal_independent(self):
        response = client.post(
            "/api/v1/bounds/avg", params={"signal_independent": True}, json={"channel": CHANNEL, "xi": 0.3, "P": 10.0}
        )
        assert response.status_code == 200

    def test_invalid_constraint(self):
        response = client.post("/api/v1/bounds/avg", json={"channel": CHANNEL, "xi": 2.0, "P": 10.0})
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "invalid_parameter"

    def test_invalid_channel(self):
        response = client.post("/api/v1/bounds/avg", json={"channel": {"H_E": -1.0}, "xi": 0.3, "P": 10.0})
        assert response.status_code == 422

    def test_peak(self):
        data = client.post("/api/v1/bounds/peak", json={"channel": CHANNEL, "xi": 0.3, "P": 10.0, "A": 15.0}).json()
        assert data["lower"] <= data["upper"] + 1e-9
        assert data["branch_upper"] is None

    def test_peak_requires_nominal_below_peak(self):
        response = client.post("/api/v1/bounds/peak", json={"channel": CHANNEL, "xi": 0.3, "P": 20.0, "A": 15.0})
        assert response.status_code == 422

    def test_asymptotic_average(self):
        data = client.post("/api/v1/bounds/asymptotic", json={"channel": CHANNEL}).json()
        assert data["gap"] == pytest.approx(0.5 * math.log(8 / math.pi))

    def test_asymptotic_peak(self):
        data = client.post("/api/v1/bounds/asymptotic", json={"channel": CHANNEL, "constraint": "peak", "alpha": 0.2}).json()
        assert data["lower_inf"] is None
        response = client.post("/api/v1/bounds/asymptotic", json={"channel": CHANNEL, "constraint": "peak"})
        assert response.status_code == 422


class TestDistributionEndpoint:
    def test_uniform(self):
        data = client.get("/api/v1/distributions/maxent", params={"alpha": 0.5, "A": 1e6, "points": 3}).json()
        assert data["x"] == [0.0, 5e5, 1e6]
        assert data["f"] == pytest.approx([1e-6] * 3)
        assert data["c"] == 0.0

    def test_shaped(self):
        data = client.get("/api/v1/distributions/maxent", params={"alpha": 0.2, "A": 10.0}).json()
        assert len(data["x"]) == 101
        assert data["mean"] == pytest.approx(2.0)
        assert data["c"] < 0

    def test_unbounded(self):
        response = client.get("/api/v1/distributions/maxent", params={"alpha": 1.0, "A": 10.0})
        assert response.status_code == 422
        assert response.json()["detail"]["error"] == "unbounded"
