import json

import numpy as np
import pytest

import bohrmod


def random_psd(n, seed):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return g.conj().T @ g


def test_version():
    assert bohrmod.__version__ == "0.1.0"


def test_sqrt_psd_round_trip():
    for seed in range(10):
        a = random_psd(5, seed)
        s = bohrmod.sqrt_psd(a)
        assert np.linalg.norm(s @ s - a) <= 1e-10 * max(1.0, np.linalg.norm(a))
        assert np.linalg.norm(s - s.conj().T) <= 1e-10
        assert np.linalg.eigvalsh(s).min() >= -1e-10


def test_inv_sqrt_matches_numpy():
    a = random_psd(4, 3) + 5.0 * np.eye(4)
    r = bohrmod.inv_sqrt_pd(a, 0.01)
    assert np.linalg.norm(r @ a @ r - np.eye(4)) <= 1e-10


def test_eig_hermitian_agrees_with_numpy():
    a = random_psd(6, 11)
    vals, vecs = bohrmod.eig_hermitian(a)
    assert np.allclose(vals, np.linalg.eigvalsh(a), atol=1e-10)
    assert np.linalg.norm(vecs @ np.diag(vals) @ vecs.conj().T - a) <= 1e-9


def test_loewner_slack_sign():
    a = np.diag([1.0, 2.0]).astype(complex)
    b = np.diag([2.0, 4.0]).astype(complex)
    assert bohrmod.loewner_slack(a, b) == pytest.approx(1.0)
    assert bohrmod.loewner_slack(b, a) == pytest.approx(-2.0)


def test_random_unitary_is_unitary_and_seeded():
    u = bohrmod.random_unitary(5, 123)
    assert np.linalg.norm(u.conj().T @ u - np.eye(5)) <= 1e-12
    assert np.array_equal(u, bohrmod.random_unitary(5, 123))


def test_small_suite_passes():
    report = bohrmod.run(trials=5, seed=7)
    assert report["pass"] is True
    assert len(report["per_theorem"]) == 11
    for row in report["per_theorem"]:
        assert row["trials"] == 5
        assert row["failures"] == []
        if row["max_identity_residual"] is not None:
            assert row["max_identity_residual"] <= 1e-8


def test_report_json_is_byte_stable_and_parseable():
    a = bohrmod.run_report_json(theorems=["op-pair", "amqm"], trials=4, seed=9)
    b = bohrmod.run_report_json(theorems=["op-pair", "amqm"], trials=4, seed=9)
    assert a == b
    doc = json.loads(a)
    assert doc["config"]["seed"] == 9
    assert [row["id"] for row in doc["per_theorem"]] == ["op-pair", "amqm"]


def test_witness_behaviour():
    w = bohrmod.witness(3.0, seed=5)
    assert w is not None
    assert w["clause"] == "upper"
    assert w["violation"] > 0
    assert abs(w["violation"] - w["predicted"]) <= 1e-8
    assert bohrmod.witness(2.0) is None


def test_module_axioms_small_defects():
    for kind in ("self", "direct-sum", "seq", "rect", "bundle"):
        rep = bohrmod.module_axioms(kind=kind, blocks="2", components=2,
                                    trials=25, seed=3)
        assert rep["trials"] == 25
        assert rep["max_defect"] <= 1e-10
