"""HTTP endpoints: payloads, validation failures, structured engine errors."""

import math

import pytest
from fastapi.testclient import TestClient

from shehu import __version__
from shehu.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def newton_config(**overrides):
    config = {
        "kind": "newton_cooling",
        "params": {"h": 2.0, "M": 0.25, "rho": 1.0, "Lambda": 0.5, "c_p": 2.0, "beta0": 100.0},
        "grid": {"t_min": 0.0, "t_max": 2.0, "t_steps": 5},
        "output": {"path": "out.csv", "format": "csv"},
    }
    config.update(overrides)
    return config


class TestHealth:
    def test_reports_version(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "version": __version__}


class TestTransformEndpoint:
    def test_symbolic(self, client):
        resp = client.post(
            "/transform",
            json={"expression": "sin(3*t)", "s": 1.0, "u": 1.0},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["image"] == "3u^2/(s^2+9u^2)"
        assert body["numeric_value"] is None

    def test_numeric_agrees_with_table(self, client):
        resp = client.post(
            "/transform",
            json={"expression": "sin(3*t)", "s": 2.0, "u": 1.0, "mode": "numeric"},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["numeric_value"] == pytest.approx(3.0 / 13.0, rel=1e-10)
        assert body["table_value"] == pytest.approx(3.0 / 13.0, rel=1e-14)
        assert abs(body["difference"]) < 1e-10

    def test_numeric_tolerates_missing_closed_form(self, client):
        resp = client.post(
            "/transform",
            json={"expression": "sin(t)*cos(t)", "s": 2.0, "u": 1.0, "mode": "numeric"},
        )
        assert resp.status_code == 200
        body = resp.json()
        # sin cos = sin(2t)/2, so the half-line integral is 1/(p^2+4)
        assert body["numeric_value"] == pytest.approx(0.125, rel=1e-8)
        assert body["image"] is None
        assert body["table_value"] is None

    def test_symbolic_outside_grammar_is_structured_error(self, client):
        resp = client.post(
            "/transform",
            json={"expression": "sin(t)*cos(t)", "s": 2.0, "u": 1.0},
        )
        assert resp.status_code == 400
        assert resp.json()["kind"] == "OutsideGrammarError"

    def test_divergent_input_is_structured_error(self, client):
        resp = client.post(
            "/transform",
            json={"expression": "exp(2*t)", "s": 1.0, "u": 1.0, "mode": "numeric"},
        )
        assert resp.status_code == 400
        body = resp.json()
        assert body["kind"] == "DivergenceError"
        assert body["offset"] is None

    def test_parse_error_carries_offset(self, client):
        resp = client.post(
            "/transform",
            json={"expression": "3*((t", "s": 1.0, "u": 1.0},
        )
        assert resp.status_code == 400
        body = resp.json()
        assert body["kind"] == "ExpressionParseError"
        assert isinstance(body["offset"], int)

    def test_request_validation(self, client):
        bad_bodies = [
            {"expression": "t", "s": -1.0, "u": 1.0},
            {"expression": "", "s": 1.0, "u": 1.0},
            {"expression": "t", "s": 1.0, "u": 1.0, "mode": "sideways"},
            {"expression": "t", "s": 1.0, "u": 1.0, "extra": True},
        ]
        for body in bad_bodies:
            assert client.post("/transform", json=body).status_code == 422


class TestInvertEndpoint:
    def test_symbolic(self, client):
        resp = client.post(
            "/invert",
            json={"image": "3u^2/(s^2+9u^2)", "times": [0.5, 1.0]},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["expression"] == "sin(3*t)"
        assert body["times"] == [0.5, 1.0]
        assert body["values"][0] == pytest.approx(math.sin(1.5), rel=1e-12)
        assert body["values"][1] == pytest.approx(math.sin(3.0), rel=1e-12)

    def test_contour_method(self, client):
        resp = client.post(
            "/invert",
            json={"image": "u/(s+u)", "times": [1.0], "method": "talbot"},
        )
        assert resp.status_code == 200
        assert resp.json()["values"][0] == pytest.approx(math.exp(-1.0), rel=1e-8)

    def test_image_parse_error(self, client):
        resp = client.post("/invert", json={"image": "3u^2/("})
        assert resp.status_code == 400
        body = resp.json()
        assert body["kind"] == "ImageParseError"
        assert isinstance(body["offset"], int)

    def test_improper_image_rejected(self, client):
        resp = client.post("/invert", json={"image": "s/(s+u)"})
        assert resp.status_code == 400
        assert resp.json()["kind"] == "ImproperImageError"


class TestSolveEndpoint:
    def test_newton(self, client):
        resp = client.post("/solve", json={"config": newton_config()})
        assert resp.status_code == 200
        body = resp.json()
        assert body["solution"] == "100*exp(-0.5*t)"
        table = body["table"]
        assert table["columns"] == ["t", "v"]
        assert len(table["rows"]) == 5
        t, v = table["rows"][2]
        assert t == 1.0
        assert v == pytest.approx(100.0 * math.exp(-0.5), rel=1e-12)
        assert table["metadata"]["version"] == __version__
        assert table["metadata"]["config"]["kind"] == "newton_cooling"

    def test_heat_rows_cover_grid(self, client):
        config = {
            "kind": "heat_1d",
            "params": {
                "k": 2.0,
                "L": 5.0,
                "modes": [{"amplitude": 10.0, "frequency": 4.0 * math.pi}],
            },
            "grid": {
                "t_min": 0.0, "t_max": 0.05, "t_steps": 3,
                "x_min": 0.0, "x_max": 5.0, "x_steps": 4,
            },
            "output": {"path": "heat.json", "format": "json"},
        }
        resp = client.post("/solve", json={"config": config})
        assert resp.status_code == 200
        table = resp.json()["table"]
        assert table["columns"] == ["t", "x", "v"]
        assert len(table["rows"]) == 12

    def test_kind_params_mismatch_rejected(self, client):
        config = newton_config(kind="heat_1d")
        assert client.post("/solve", json={"config": config}).status_code == 422

    def test_pde_kind_needs_spatial_grid(self, client):
        config = {
            "kind": "pme_hpm",
            "params": {"alpha": 0.5, "initial": "x", "n_terms": 3},
            "grid": {"t_min": 0.0, "t_max": 1.0, "t_steps": 3},
            "output": {"path": "pme.csv", "format": "csv"},
        }
        assert client.post("/solve", json={"config": config}).status_code == 422

    def test_pme_negative_time_grid_is_engine_error(self, client):
        config = {
            "kind": "pme_hpm",
            "params": {"alpha": 0.5, "initial": "x", "n_terms": 3},
            "grid": {
                "t_min": -1.0, "t_max": 1.0, "t_steps": 3,
                "x_min": 0.0, "x_max": 1.0, "x_steps": 3,
            },
            "output": {"path": "pme.csv", "format": "csv"},
        }
        resp = client.post("/solve", json={"config": config})
        assert resp.status_code == 400
        assert resp.json()["kind"] == "ConfigError"

    def test_unknown_config_keys_rejected(self, client):
        config = newton_config(plot=True)
        assert client.post("/solve", json={"config": config}).status_code == 422


class TestSelftestEndpoint:
    def test_all_cases_pass(self, client):
        resp = client.get("/selftest")
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is True
        assert len(body["cases"]) >= 8
        assert all(case["passed"] for case in body["cases"])
