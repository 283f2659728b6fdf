import random
from fractions import Fraction

import numpy as np
import pytest

from compalg.algebra import beta_product, check_all_identities, sample_poly
from compalg.errors import DimMismatch, NonSymplecticW
from compalg.hilbert import (
    build_kahler,
    cstar_check,
    hermitian_eig,
    hermitian_eigenvalues,
    hermitean_property_check,
    inner_product,
    lie_bracket_fields,
    matrix_carrier,
    nijenhuis_constant_J,
    normalization_constraint_check,
    op_alpha,
    op_sigma,
    sample_compatible_symplectic,
    sample_hermitian,
    spectral_norm,
)
from compalg.phasepoly import PhasePoly

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]])
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_pauli_bracket_frozen_value():
    # alpha(X, Y) at hbar = 2 is [X, Y]/(2i) = Z
    assert np.allclose(op_alpha(PAULI_X, PAULI_Y, 2.0), PAULI_Z, atol=1e-14)
    assert np.allclose(op_sigma(PAULI_X, PAULI_Y), np.zeros((2, 2)), atol=1e-14)


def test_op_shape_checks():
    with pytest.raises(DimMismatch):
        op_alpha(np.eye(2), np.eye(3))
    with pytest.raises(DimMismatch):
        op_sigma(np.ones((2, 3)), np.ones((2, 3)))


@pytest.mark.parametrize("dim", [2, 3, 5, 8])
def test_eigensolver_against_numpy_oracle(dim):
    rng = random.Random(dim)
    for _ in range(5):
        a = sample_hermitian(rng, dim)
        w, v = hermitian_eig(a)
        scale = max(1.0, float(np.max(np.abs(a))))
        # residual contract
        for k in range(dim):
            assert np.linalg.norm(a @ v[:, k] - w[k] * v[:, k]) <= 1e-11 * scale
        # orthonormality
        assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) <= 1e-10
        # eigenvalue agreement with the library oracle
        assert np.max(np.abs(np.sort(w) - np.sort(np.linalg.eigvalsh(a)))) <= 1e-10 * scale


def test_spectral_norm_against_numpy_oracle():
    rng = random.Random(99)
    for dim in (2, 4, 6):
        for _ in range(10):
            t = sample_hermitian(rng, dim) + 1j * sample_hermitian(rng, dim)
            assert spectral_norm(t) == pytest.approx(np.linalg.norm(t, 2), rel=1e-10)


def test_cstar_identity_sweep():
    rng = random.Random(7)
    for _ in range(50):
        t = sample_hermitian(rng, 8) + 1j * sample_hermitian(rng, 8)
        assert cstar_check(t, rtol=1e-10)


def test_matrix_carrier_identities():
    for dim in (4, 6):
        carrier = matrix_carrier(dim)
        for rep in check_all_identities(carrier, count=8, seed=3):
            assert rep.passed, (dim, rep.identity)
            assert rep.max_residual <= 1e-12


def test_beta_minus_is_matrix_product():
    carrier = matrix_carrier(5)
    beta = beta_product(carrier, sign=-1)
    rng = random.Random(1)
    for _ in range(10):
        a, b = carrier.sample(rng), carrier.sample(rng)
        assert np.max(np.abs(beta(a, b) - a @ b)) <= 1e-14 * max(
            1.0, float(np.max(np.abs(a @ b)))
        )


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_kahler_triple_relations(n):
    tr = build_kahler(n)
    eye = np.eye(2 * n, dtype=np.int64)
    assert np.array_equal(tr.Omega @ tr.J, tr.g)
    assert np.array_equal(tr.J.T @ tr.g, tr.Omega)
    assert np.array_equal(tr.J @ tr.J, -eye)
    rng = random.Random(n)
    for _ in range(20):
        x = np.array([rng.randint(-9, 9) for _ in range(2 * n)])
        y = np.array([rng.randint(-9, 9) for _ in range(2 * n)])
        assert hermitean_property_check(tr, x, y)


def test_inner_product_frozen_value():
    tr = build_kahler(3)
    e1 = np.zeros(6, dtype=np.int64)
    e1[0] = 1
    e4 = np.zeros(6, dtype=np.int64)
    e4[3] = 1
    assert inner_product(tr, e1, e4) == 1j  # <e_1, e_{n+1}> = i
    assert inner_product(tr, e1, e1) == 1 + 0j


def test_inner_product_real_part_is_metric():
    tr = build_kahler(2)
    rng = random.Random(5)
    for _ in range(20):
        x = np.array([rng.randint(-5, 5) for _ in range(4)])
        assert inner_product(tr, x, x).real == x @ tr.g @ x
        assert inner_product(tr, x, x).imag == 0


def test_nijenhuis_vanishes_for_constant_J():
    tr = build_kahler(1)
    rng = random.Random(9)
    for _ in range(50):
        r = tuple(sample_poly(rng, 1, 1) for _ in range(2))  # linear fields
        s = tuple(sample_poly(rng, 1, 1) for _ in range(2))
        n = nijenhuis_constant_J(tr, r, s)
        assert all(not comp for comp in n)


def test_lie_bracket_fields_oracle():
    # R = p d_q and S = q d_p give [R, S] = -q d_q + p d_p
    q, p = PhasePoly.q(), PhasePoly.p()
    zero = PhasePoly(1)
    br = lie_bracket_fields((p, zero), (zero, q))
    assert br[0] == -q and br[1] == p


def test_normalization_preserved_under_compatible_symplectic():
    tr = build_kahler(2)
    rng = random.Random(11)
    for _ in range(100):
        w = sample_compatible_symplectic(rng, 2)
        x = np.array([rng.gauss(0, 1) for _ in range(4)])
        x = x / np.sqrt(x @ tr.g.astype(float) @ x)
        assert normalization_constraint_check(tr, x, w, tol=1e-10)


def test_non_symplectic_rejected():
    tr = build_kahler(1)
    x = np.array([1.0, 0.0])
    with pytest.raises(NonSymplecticW):
        normalization_constraint_check(tr, x, np.diag([2.0, 0.5]))


def test_eigenvalues_of_known_matrix():
    a = np.array([[2, 1], [1, 2]], dtype=complex)
    w = hermitian_eigenvalues(a)
    assert np.allclose(np.sort(w), [1.0, 3.0], atol=1e-12)
