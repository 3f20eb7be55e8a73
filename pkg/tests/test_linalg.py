import numpy as np
import pytest

from dysonmpo.linalg import (RankDeficientError, contract, qr_column_pivoted,
                             solve_least_squares, svd_truncate)


def test_contract_identity_passthrough():
    v = np.array([1.5, -2.0j])
    out = contract(np.eye(2), v, [(1, 0)])
    np.testing.assert_allclose(out, v)


def test_contract_matches_triple_loop():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    out = contract(a, b, [(1, 0)])
    ref = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                ref[i, j] += a[i, k] * b[k, j]
    np.testing.assert_allclose(out, ref, atol=1e-14)


def test_contract_full_pairing_is_norm():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(2, 3, 2)) + 1j * rng.normal(size=(2, 3, 2))
    out = contract(a, a.conj(), [(0, 0), (1, 1), (2, 2)])
    assert out.shape == ()
    assert abs(out.imag) < 1e-14
    assert out.real >= 0
    np.testing.assert_allclose(out.real, np.sum(np.abs(a) ** 2))


def test_contract_dimension_mismatch():
    with pytest.raises(ValueError):
        contract(np.zeros((2, 3)), np.zeros((2, 2)), [(1, 0)])


def test_contract_bilinear():
    rng = np.random.default_rng(2)
    a, b, c = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
               for _ in range(3))
    alpha = 0.3 - 1.7j
    lhs = contract(alpha * a + b, c, [(1, 0)])
    rhs = alpha * contract(a, c, [(1, 0)]) + contract(b, c, [(1, 0)])
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_svd_identity():
    u, s, v, w = svd_truncate(np.eye(4), max_rank=4, tol=0.0)
    np.testing.assert_allclose(s, np.ones(4))
    assert w == 0.0


def test_svd_rank_one():
    rng = np.random.default_rng(3)
    u0 = rng.normal(size=5)
    v0 = rng.normal(size=4)
    m = np.outer(u0, v0)
    u, s, v, w = svd_truncate(m, max_rank=1)
    np.testing.assert_allclose(u @ np.diag(s) @ v, m, atol=1e-12)


def test_svd_full_rank_reconstruction():
    rng = np.random.default_rng(4)
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    u, s, v, w = svd_truncate(m, max_rank=8, tol=0.0)
    assert np.linalg.norm(u @ np.diag(s) @ v - m) < 1e-12
    assert w == 0.0


def test_svd_discarded_weight():
    m = np.diag([3.0, 2.0, 1.0])
    u, s, v, w = svd_truncate(m, max_rank=1)
    np.testing.assert_allclose(w, 4.0 + 1.0)


def test_qr_zero_matrix():
    rank, piv, q, r = qr_column_pivoted(np.zeros((3, 3)))
    assert rank == 0 and piv == []


def test_qr_identity():
    rank, piv, q, r = qr_column_pivoted(np.eye(3), tol=1e-12)
    assert rank == 3


def test_qr_duplicate_column():
    rng = np.random.default_rng(5)
    col = rng.normal(size=4)
    other = rng.normal(size=4)
    m = np.column_stack([col, col, other])
    rank, piv, q, r = qr_column_pivoted(m, tol=1e-12)
    assert rank == np.linalg.matrix_rank(m)
    assert rank == 2
    # the two duplicates contribute a single pivot
    assert not {0, 1} <= set(piv)


def test_qr_rank_matches_svd_on_random_low_rank():
    rng = np.random.default_rng(6)
    for _ in range(100):
        m, n = rng.integers(2, 7, size=2)
        r = int(rng.integers(1, min(m, n) + 1))
        mat = (rng.normal(size=(m, r)) @ rng.normal(size=(r, n))).astype(complex)
        rank = qr_column_pivoted(mat, tol=1e-10)[0]
        svd_rank = int(np.sum(np.linalg.svd(mat, compute_uv=False)
                              > 1e-10 * np.linalg.svd(mat, compute_uv=False)[0]))
        assert rank == svd_rank


def test_lstsq_identity():
    b = np.arange(6.0).reshape(3, 2)
    x, res = solve_least_squares(np.eye(3), b)
    np.testing.assert_allclose(x, b)
    assert res < 1e-13


def test_lstsq_consistent_system():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(3, 2))
    x0 = rng.normal(size=(2, 1))
    x, res = solve_least_squares(a, a @ x0)
    assert res < 1e-12
    np.testing.assert_allclose(x, x0, atol=1e-10)


def test_lstsq_inconsistent_residual_matches_projector():
    rng = np.random.default_rng(8)
    a = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    b = rng.normal(size=(4, 1)) + 1j * rng.normal(size=(4, 1))
    x, res = solve_least_squares(a, b)
    p = a @ np.linalg.inv(a.conj().T @ a) @ a.conj().T
    expected = np.linalg.norm(b - p @ b)
    np.testing.assert_allclose(res, expected, atol=1e-12)


def test_lstsq_rank_deficient_raises():
    a = np.column_stack([np.ones(3), np.ones(3)])
    with pytest.raises(RankDeficientError):
        solve_least_squares(a, np.ones((3, 1)))
