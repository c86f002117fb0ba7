import math

import pytest
from fastapi.testclient import TestClient

from superres import __version__
from superres.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


class TestHealth:
    def test_health(self, client):
        payload = client.get("/health").json()
        assert payload == {"status": "ok", "version": __version__}


class TestBoundsEndpoint:
    def test_clump2(self, client):
        r = client.post(
            "/bounds",
            json={"theorem": "clump2", "m": 100, "a": 1, "lam": 2, "alpha": 0.25},
        )
        assert r.status_code == 200
        report = r.json()["reports"][0]
        assert report["name"] == "clump2_lower"
        assert report["hypotheses_satisfied"]
        assert report["value"] > 0

    def test_clump1_with_nodes(self, client):
        r = client.post(
            "/bounds", json={"theorem": "clump1", "m": 128, "nodes": [0.4]}
        )
        assert r.status_code == 200
        value = r.json()["reports"][0]["value"]
        assert value == pytest.approx(math.sqrt(128) * 19 / (20 * math.sqrt(2)))

    def test_minmax_returns_pair(self, client):
        r = client.post(
            "/bounds",
            json={"theorem": "minmax", "m": 16, "n": 2048, "s": 1, "delta": 1.0},
        )
        names = [rep["name"] for rep in r.json()["reports"]]
        assert names == ["minmax_lower", "minmax_upper"]

    def test_hankel_noise_extras(self, client):
        r = client.post(
            "/bounds",
            json={
                "theorem": "hankel-noise", "m": 100, "pencil": 50,
                "sigma": 1.0, "tail_at": [30.0],
            },
        )
        extras = r.json()["extras"]
        assert extras["mean_bound"] == pytest.approx(math.sqrt(2 * 51 * math.log(102)))
        assert "30" in extras["tail"]

    def test_missing_field_422(self, client):
        r = client.post("/bounds", json={"theorem": "clump2", "m": 100})
        assert r.status_code == 422

    def test_domain_error_422(self, client):
        # lam > M violates the constant's hard hypothesis
        r = client.post(
            "/bounds", json={"theorem": "upper", "m": 100, "lam": 2, "alpha": 0.01}
        )
        assert r.status_code == 200
        r = client.post(
            "/bounds",
            json={"theorem": "clump2", "m": 2, "a": 1, "lam": 5, "alpha": 0.2},
        )
        assert r.status_code == 422

    def test_music_tolerance_odd_m_422(self, client):
        r = client.post(
            "/bounds",
            json={
                "theorem": "music-tolerance", "m": 101, "a": 1, "lam": 2,
                "alpha": 0.25, "nu": 2.0, "eps": 0.1,
            },
        )
        assert r.status_code == 422


class TestSweepEndpoints:
    def test_sigma_min_sweep(self, client):
        r = client.post(
            "/sweeps/sigma-min",
            json={"a_values": [1], "lambda_values": [2], "m": 256, "srf_points": 5},
        )
        body = r.json()
        assert len(body["rows"]) == 5
        assert set(body["columns"]) == set(body["rows"][0])
        assert body["summary"]["slopes"][0]["slope_zeta"] == pytest.approx(-1, abs=0.2)

    def test_theta_sweep(self, client):
        r = client.post("/sweeps/theta", json={"s_values": [2], "m": 50, "srf_points": 5})
        assert len(r.json()["rows"]) == 5

    def test_phase_transition(self, client):
        r = client.post(
            "/sweeps/phase-transition",
            json={
                "a": 1, "lam": 2, "m": 50, "srf_points": 3, "srf_max": 3.0,
                "sigma_lo": 1e-3, "sigma_hi": 1e-2, "sigma_per_decade": 2,
                "trials": 2, "seed": 4,
            },
        )
        body = r.json()
        assert len(body["rows"]) == 9
        assert "q" in body["summary"]

    def test_music_demo(self, client):
        r = client.post(
            "/music/demo",
            json={"a": 1, "lam": 3, "alpha": 0.5, "m": 100, "sigma": 0.001, "seed": 3},
        )
        body = r.json()
        assert len(body["rows"]) == 1600
        assert body["summary"]["dist_b"] < body["summary"]["delta"]

    def test_scene_overflow_422(self, client):
        r = client.post(
            "/sweeps/phase-transition",
            json={"a": 4, "lam": 5, "m": 10, "trials": 1, "srf_points": 2,
                  "sigma_per_decade": 1, "sigma_lo": 0.1, "sigma_hi": 1.0},
        )
        assert r.status_code == 422


class TestCertifyAndSelftest:
    def test_certify_scene(self, client):
        r = client.post("/certify", json={"m": 2000, "a": 2, "lam": 2, "alpha": 0.3})
        body = r.json()
        assert body["summary"]["all_checks_ok"]
        assert body["summary"]["duality_sound"]

    def test_certify_explicit_nodes(self, client):
        r = client.post("/certify", json={"m": 200, "nodes": [0.1, 0.45, 0.8]})
        assert r.status_code == 200
        assert r.json()["summary"]["all_checks_ok"]

    def test_certify_needs_scene(self, client):
        r = client.post("/certify", json={"m": 100})
        assert r.status_code == 422

    def test_selftest(self, client):
        r = client.post("/selftest", json={"seed": 0})
        assert r.json()["summary"]["all_passed"]
