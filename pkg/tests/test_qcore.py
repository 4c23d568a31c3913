import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from xyswap import qcore

from helpers import random_density, random_ket, random_unitary


def test_pauli_matrices():
    assert_allclose(qcore.pauli(0), np.eye(2))
    assert_allclose(qcore.pauli(3), np.diag([1.0, -1.0]))
    assert_allclose(qcore.pauli(1), np.array([[0, 1], [1, 0]]))
    assert_allclose(qcore.pauli(2), np.array([[0, -1j], [1j, 0]]))
    for i in range(4):
        assert_allclose(qcore.pauli(i) @ qcore.pauli(i), np.eye(2), atol=1e-15)
    with pytest.raises(ValueError):
        qcore.pauli(4)
    with pytest.raises(ValueError):
        qcore.pauli(-1)


def test_bell_kets():
    s = 1.0 / math.sqrt(2.0)
    assert_allclose(qcore.bell_ket(0), [s, 0, 0, s])
    assert_allclose(qcore.bell_ket(1), [0, s, s, 0])
    assert_allclose(qcore.bell_ket(2), [0, s, -s, 0])
    assert_allclose(qcore.bell_ket(3), [s, 0, 0, -s])
    gram = np.array([[np.vdot(qcore.bell_ket(a), qcore.bell_ket(b)) for b in range(4)] for a in range(4)])
    assert_allclose(gram, np.eye(4), atol=1e-15)
    with pytest.raises(ValueError):
        qcore.bell_ket(4)


def test_ghz_kets():
    s = 1.0 / math.sqrt(2.0)
    assert_allclose(qcore.ghz_ket(0), [s, 0, 0, 0, 0, 0, 0, s])
    assert_allclose(qcore.ghz_ket(4), [0, 0, 0, s, -s, 0, 0, 0])
    basis = np.stack([qcore.ghz_ket(i) for i in range(8)])
    assert_allclose(basis @ basis.conj().T, np.eye(8), atol=1e-15)
    with pytest.raises(ValueError):
        qcore.ghz_ket(8)


def test_bloch_ket_poles_and_equator():
    assert_allclose(qcore.bloch_ket(0.0, 1.7), [1, 0], atol=1e-15)
    assert_allclose(qcore.bloch_ket(math.pi, 0.0), [0, 1], atol=1e-15)
    s = 1.0 / math.sqrt(2.0)
    assert_allclose(qcore.bloch_ket(math.pi / 2, 0.0), [s, s], atol=1e-15)


def test_bloch_ket_angle_reduction():
    rng = np.random.default_rng(3)
    for _ in range(20):
        th, ph = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        rho_a = qcore.ket_density(qcore.bloch_ket(th, ph))
        rho_b = qcore.ket_density(qcore.bloch_ket(th + 2 * math.pi, ph))
        # crossing the pole: (-theta, phi) points along (theta, phi + pi)
        rho_c = qcore.ket_density(qcore.bloch_ket(-th, ph))
        rho_d = qcore.ket_density(qcore.bloch_ket(th, ph + math.pi))
        assert_allclose(rho_b, rho_a, atol=1e-12)
        assert_allclose(rho_c, rho_d, atol=1e-12)


def test_tensor():
    zero = np.array([1.0, 0.0], dtype=complex)
    one = np.array([0.0, 1.0], dtype=complex)
    assert_allclose(qcore.tensor(zero, one), [0, 1, 0, 0])
    assert_allclose(qcore.tensor(np.eye(2) / 2, np.eye(2) / 2), np.eye(4) / 4)
    rho = qcore.tensor(qcore.ket_density(qcore.bell_ket(0)), qcore.pauli(0) / 2)
    assert abs(np.trace(rho) - 1.0) < 1e-14


def test_partial_trace_bell_marginal():
    rho = qcore.ket_density(qcore.bell_ket(0))
    assert_allclose(qcore.partial_trace(rho, (0,)), np.eye(2) / 2, atol=1e-14)


def test_partial_trace_product_recovery():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = random_density(rng, 2)
        b = random_density(rng, 4)
        prod = qcore.tensor(a, b)
        assert_allclose(qcore.partial_trace(prod, (1, 2)), b, atol=1e-12)
        assert_allclose(qcore.partial_trace(prod, (0,)), a, atol=1e-12)


def test_partial_trace_ghz_single_qubit_marginals():
    rho = qcore.ket_density(qcore.ghz_ket(0))
    for q in range(3):
        assert_allclose(qcore.partial_trace(rho, (q,)), np.eye(2) / 2, atol=1e-14)


def test_partial_trace_rejects_bad_subsets():
    rho = np.eye(4, dtype=complex) / 4
    with pytest.raises(ValueError):
        qcore.partial_trace(rho, ())
    with pytest.raises(ValueError):
        qcore.partial_trace(rho, (0, 0))
    with pytest.raises(ValueError):
        qcore.partial_trace(rho, (2,))


def test_measure_basics():
    proj0 = np.array([[1, 0], [0, 0]], dtype=complex)
    prob, post = qcore.measure(np.eye(4, dtype=complex) / 4, proj0, (0,))
    assert abs(prob - 0.5) < 1e-14
    assert_allclose(post, qcore.tensor(proj0, np.eye(2, dtype=complex) / 2), atol=1e-14)

    ghz0 = qcore.ket_density(qcore.ghz_ket(0))
    prob, post = qcore.measure(ghz0, ghz0, (0, 1, 2))
    assert abs(prob - 1.0) < 1e-12
    assert_allclose(post, ghz0, atol=1e-12)

    proj7 = qcore.ket_density(qcore.ghz_ket(7))
    prob, post = qcore.measure(ghz0, proj7, (0, 1, 2))
    assert prob <= qcore.ZERO_PROB_THRESHOLD
    assert post is None


def test_measure_completeness():
    rng = np.random.default_rng(5)
    for _ in range(10):
        rho = random_density(rng, 8)
        total = sum(
            qcore.measure(rho, qcore.ket_density(qcore.ghz_ket(i)), (0, 1, 2))[0]
            for i in range(8)
        )
        assert abs(total - 1.0) < 1e-10
        total = sum(
            qcore.measure(rho, qcore.ket_density(qcore.bell_ket(j)), (0, 2))[0]
            for j in range(4)
        )
        assert abs(total - 1.0) < 1e-10


def test_measure_rejects_bad_subset():
    with pytest.raises(ValueError):
        qcore.measure(np.eye(4, dtype=complex) / 4, np.eye(4, dtype=complex), (0,))


def test_hermitian_eigensystem_random():
    rng = np.random.default_rng(17)
    for dim in (2, 4, 8):
        for _ in range(20):
            g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            h = g + g.conj().T
            w, v = qcore.hermitian_eigensystem(h)
            assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-12 * max(1.0, np.abs(h).max()))
            assert_allclose(v.conj().T @ v, np.eye(dim), atol=1e-12)
            assert np.max(np.abs(h @ v - v * w)) < 1e-11 * max(1.0, np.abs(h).max())


def test_hermitian_eigensystem_degenerate_block():
    # degenerate diagonal with one coupled block; regression for a stalled
    # convergence test
    h = np.array(
        [
            [0.0536, 0, 0, 0],
            [0, 0.0827575507209675, -0.063, 0],
            [0, -0.063, 0.08275755072096748, 0],
            [0, 0, 0, 0.0536],
        ],
        dtype=complex,
    )
    w, v = qcore.hermitian_eigensystem(h)
    assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-14)


def test_hermitian_eigensystem_rejects_nonsquare():
    with pytest.raises(ValueError):
        qcore.hermitian_eigensystem(np.zeros((2, 3)))


def test_wootters_concurrence_pure_states():
    assert abs(qcore.wootters_concurrence(qcore.ket_density(qcore.bell_ket(2))) - 1.0) < 1e-12
    ket00 = np.zeros(4, dtype=complex)
    ket00[0] = 1.0
    assert qcore.wootters_concurrence(qcore.ket_density(ket00)) < 1e-12


def test_wootters_concurrence_werner():
    # p*Bell + (1-p)*I/4 has concurrence max(0, (3p-1)/2)
    bell = qcore.ket_density(qcore.bell_ket(0))
    for p in (0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0):
        rho = p * bell + (1.0 - p) * np.eye(4) / 4.0
        expect = max(0.0, (3.0 * p - 1.0) / 2.0)
        assert abs(qcore.wootters_concurrence(rho) - expect) < 1e-10


def test_wootters_concurrence_local_unitary_invariance():
    rng = np.random.default_rng(23)
    for _ in range(15):
        rho = random_density(rng, 4)
        c0 = qcore.wootters_concurrence(rho)
        u = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        c1 = qcore.wootters_concurrence(u @ rho @ u.conj().T)
        assert abs(c0 - c1) < 1e-8


def test_bell_fraction():
    assert abs(qcore.bell_fraction(np.eye(4, dtype=complex) / 4) - 0.25) < 1e-14
    assert abs(qcore.bell_fraction(qcore.ket_density(qcore.bell_ket(1))) - 1.0) < 1e-14


def test_bell_fraction_product_states_bounded():
    rng = np.random.default_rng(29)
    for _ in range(30):
        rho = qcore.ket_density(qcore.tensor(random_ket(rng, 2), random_ket(rng, 2)))
        f = qcore.bell_fraction(rho)
        assert 0.0 <= f <= 0.5 + 1e-12


def test_bloch_average_normalization_and_symmetry():
    assert abs(qcore.bloch_average(lambda k: 1.0) - 1.0) < 1e-13
    assert abs(qcore.bloch_average(lambda k: abs(k[0]) ** 2) - 0.5) < 1e-13


def test_bloch_average_fourth_moment():
    # Haar second moment of the squared overlap in dimension 2 is 1/3
    phi0 = qcore.bloch_ket(1.1, 2.3)
    val = qcore.bloch_average(lambda k: abs(np.vdot(phi0, k)) ** 4)
    assert abs(val - 1.0 / 3.0) < 1e-13


def test_bloch_average_matches_monte_carlo():
    rng = np.random.default_rng(31)
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = g + g.conj().T
    f = lambda k: float(np.real(np.vdot(k, m @ k)) ** 2)
    quad = qcore.bloch_average(f)
    n = 1_000_000
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    samples = np.einsum("ni,ij,nj->n", z.conj(), m, z).real ** 2
    assert abs(quad - samples.mean()) < 3.0 * samples.std() / math.sqrt(n)


def test_validators():
    qcore.validate_ket(qcore.bell_ket(0), dim=4)
    with pytest.raises(ValueError):
        qcore.validate_ket(np.array([1.0, 1.0], dtype=complex), dim=2)
    with pytest.raises(ValueError):
        qcore.validate_ket(qcore.bell_ket(0), dim=2)

    qcore.validate_density(np.eye(4, dtype=complex) / 4, dim=4)
    with pytest.raises(ValueError):
        qcore.validate_density(np.eye(4, dtype=complex), dim=4)  # trace 4
    with pytest.raises(ValueError):
        qcore.validate_density(np.diag([1.5, -0.5, 0, 0]).astype(complex), dim=4)

    qcore.validate_projector(qcore.ket_density(qcore.ghz_ket(3)))
    with pytest.raises(ValueError):
        qcore.validate_projector(0.5 * qcore.ket_density(qcore.ghz_ket(3)))


def test_operations_return_valid_densities():
    rng = np.random.default_rng(37)
    for _ in range(10):
        rho = random_density(rng, 8)
        qcore.validate_density(qcore.partial_trace(rho, (0, 2)), dim=4)
        prob, post = qcore.measure(rho, qcore.ket_density(qcore.bell_ket(1)), (1, 2))
        if post is not None:
            qcore.validate_density(post, dim=8)


def test_spin_flip_lambdas():
    lam = qcore.spin_flip_lambdas(qcore.ket_density(qcore.bell_ket(0)))
    assert_allclose(lam, [1.0, 0.0, 0.0, 0.0], atol=1e-7)
    ket01 = np.zeros(4, dtype=complex)
    ket01[1] = 1.0
    lam = qcore.spin_flip_lambdas(qcore.ket_density(ket01))
    assert np.all(lam < 1e-7)
