import math

import numpy as np
import pytest

import c0model as c0


def test_jordan_block_and_annihilation():
    theta = c0.BlaschkeProduct([(0.3 + 0.2j, 2), (-0.5, 1)])
    s = c0.jordan_block(theta)
    assert s.shape == (3, 3)
    assert np.allclose(np.triu(s, 1), 0)
    assert np.linalg.norm(c0.apply(theta, s), 2) < 1e-9
    assert sorted(np.round(np.linalg.eigvals(s), 6), key=abs) == sorted(
        np.round(theta.flattened(), 6), key=abs
    )


def test_sarason_and_hankel():
    z = c0.BlaschkeProduct.from_roots([0.0])
    assert abs(c0.sarason_norm([0.5, 0.5], [1.0], z) - 0.5) < 1e-15
    assert abs(c0.hankel_distance([0.5, 0.5], [1.0], z) - 0.5) < 1e-12


def test_bezout_example():
    z = c0.BlaschkeProduct.from_roots([0.0])
    b = c0.BlaschkeProduct.from_roots([0.5])
    sol = c0.bezout_solve(z, b)
    assert sol["residual"] < 1e-12
    assert abs(sol["norm1"] - 2.0) < 1e-9


def test_unitary_recovery():
    theta = c0.BlaschkeProduct.from_roots([0.1, -0.4 + 0.3j, 0.6j])
    s = c0.jordan_block(theta)
    rng = np.random.default_rng(1)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    t = q @ s @ q.conj().T
    rec = c0.unitary_from_maximality(t)
    w = rec["W"]
    assert np.linalg.norm(w.conj().T @ w - np.eye(3), 2) < 1e-8
    assert np.linalg.norm(w @ t - s @ w, 2) < 1e-8


def test_similarity_identity():
    theta = c0.BlaschkeProduct.from_roots([0.1, -0.3 + 0.5j, 0.6])
    s = c0.jordan_block(theta)
    cert = c0.similarity_synthesize(s, s, 0.995, 0.998)
    assert cert["residual"] < 1e-12
    assert cert["X"].shape == (3, 3)


def test_irreducibility():
    assert c0.irreducibility_check(np.diag([0.3, -0.2]).astype(complex))["irreducible"] is False
    theta = c0.BlaschkeProduct([(0.4, 3)])
    assert c0.irreducibility_check(c0.jordan_block(theta))["irreducible"] is True


def test_errors():
    with pytest.raises(c0.C0Error, match="NotMultiplicityFree"):
        c0.maximality_report(np.diag([0.4, 0.4]).astype(complex))
    with pytest.raises(c0.C0Error):
        c0.BlaschkeProduct([(1.5, 1)])


def test_verify_small():
    report = c0.verify(seed=3, trials=2, ids=["C1", "C10"])
    assert report["passed"] is True
    assert [r["id"] for r in report["results"]] == ["C1", "C10"]
    assert math.isfinite(report["results"][0]["metrics"][0]["worst"])
