"""Dense complex linear algebra and quantum-state primitives for small
qubit registers.

State vectors and operators are plain numpy arrays in the computational
basis, leftmost qubit label most significant.  Besides constructors and
tensor / partial-trace / measurement plumbing, the module carries
model-independent implementations of the two-qubit entanglement metrics
(spin-flip concurrence, maximal Bell-state overlap) and a fixed spherical
quadrature.  These generic routines double as oracles for the closed
forms implemented in the model modules.
"""

import numpy as np

__all__ = [
    "ZERO_PROB_THRESHOLD",
    "EIGENVALUE_CLAMP",
    "EigensolverError",
    "pauli",
    "bell_ket",
    "ghz_ket",
    "bloch_ket",
    "ket_density",
    "tensor",
    "num_qubits",
    "validate_ket",
    "validate_density",
    "validate_projector",
    "embed_operator",
    "partial_trace",
    "measure",
    "hermitian_eigensystem",
    "sqrtm_psd",
    "spin_flip_lambdas",
    "wootters_concurrence",
    "bell_fraction",
    "bloch_grid",
    "bloch_average",
]

# Measurement branches at or below this probability are reported as
# impossible (post-state None) instead of being renormalized.
ZERO_PROB_THRESHOLD = 1e-14

# Eigenvalues in [-EIGENVALUE_CLAMP, 0) are treated as round-off drift of a
# positive-semidefinite matrix and clamped to zero.
EIGENVALUE_CLAMP = 1e-9


class EigensolverError(RuntimeError):
    """Jacobi iteration failed to reach its off-diagonal tolerance."""


_SIGMA = np.array(
    [
        [[1.0, 0.0], [0.0, 1.0]],
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)

# (basis index of the first branch, sign of the flipped partner)
_BELL_TABLE = ((0, 1.0), (1, 1.0), (1, -1.0), (0, -1.0))


def pauli(i):
    """Pauli matrix sigma^i, i in 0..3 (identity, x, y, z)."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"pauli index must be in 0..3, got {i!r}")
    return _SIGMA[i].copy()


def bell_ket(i):
    """Two-qubit Bell basis ket number i.

    0: (|00>+|11>)/sqrt2   1: (|01>+|10>)/sqrt2
    2: (|01>-|10>)/sqrt2   3: (|00>-|11>)/sqrt2
    """
    if i not in (0, 1, 2, 3):
        raise ValueError(f"bell index must be in 0..3, got {i!r}")
    b, sign = _BELL_TABLE[i]
    ket = np.zeros(4, dtype=complex)
    ket[b] = 1.0 / np.sqrt(2.0)
    ket[3 - b] = sign / np.sqrt(2.0)
    return ket


def ghz_ket(i):
    """Three-qubit GHZ basis ket number i.

    Indices 0..3 are (|b> + |b_flipped>)/sqrt2 for b = 000, 001, 010, 011;
    indices 4..7 mirror 3..0 with a minus sign on the flipped branch:
    4: (|011>-|100>)/sqrt2 ... 7: (|000>-|111>)/sqrt2.
    """
    if i not in range(8):
        raise ValueError(f"ghz index must be in 0..7, got {i!r}")
    b = i if i <= 3 else 7 - i
    sign = 1.0 if i <= 3 else -1.0
    ket = np.zeros(8, dtype=complex)
    ket[b] = 1.0 / np.sqrt(2.0)
    ket[7 - b] = sign / np.sqrt(2.0)
    return ket


def bloch_ket(theta, phi):
    """Single-qubit ket cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.

    Angles outside [0, pi] x [0, 2 pi) are folded back onto the sphere
    (same direction, canonical coordinates).
    """
    theta = float(theta) % (2.0 * np.pi)
    phi = float(phi)
    if theta > np.pi:
        theta = 2.0 * np.pi - theta
        phi += np.pi
    phi %= 2.0 * np.pi
    return np.array(
        [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)],
        dtype=complex,
    )


def ket_density(ket):
    """Rank-one density operator |ket><ket|."""
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def tensor(*factors):
    """Kronecker product of kets or operators, left factor most significant."""
    if not factors:
        raise ValueError("tensor requires at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def num_qubits(dim):
    """Number of qubits for a Hilbert-space dimension (must be 2**n, n >= 1)."""
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


def validate_ket(ket, dim=None):
    """Raise ValueError unless ket is a normalized state vector."""
    ket = np.asarray(ket)
    if ket.ndim != 1:
        raise ValueError("ket must be one-dimensional")
    num_qubits(ket.shape[0])
    if dim is not None and ket.shape[0] != dim:
        raise ValueError(f"ket dimension {ket.shape[0]} != expected {dim}")
    norm = float(np.vdot(ket, ket).real)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"ket is not normalized: |ket|^2 = {norm!r}")


def validate_density(rho, dim=None):
    """Raise ValueError unless rho is a valid density operator.

    Checks: square power-of-two shape, Hermitian within 1e-10 entrywise,
    unit trace within 1e-10, eigenvalues >= -1e-9.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density operator must be a square matrix")
    num_qubits(rho.shape[0])
    if dim is not None and rho.shape[0] != dim:
        raise ValueError(f"density dimension {rho.shape[0]} != expected {dim}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("density operator is not Hermitian")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"density operator trace {tr!r} != 1")
    wmin = float(np.linalg.eigvalsh(rho).min())
    if wmin < -EIGENVALUE_CLAMP:
        raise ValueError(f"density operator has eigenvalue {wmin} < -{EIGENVALUE_CLAMP}")


def validate_projector(proj, dim=None):
    """Raise ValueError unless proj is an orthogonal projector."""
    proj = np.asarray(proj)
    if proj.ndim != 2 or proj.shape[0] != proj.shape[1]:
        raise ValueError("projector must be a square matrix")
    num_qubits(proj.shape[0])
    if dim is not None and proj.shape[0] != dim:
        raise ValueError(f"projector dimension {proj.shape[0]} != expected {dim}")
    if np.max(np.abs(proj - proj.conj().T)) > 1e-10:
        raise ValueError("projector is not Hermitian")
    if np.max(np.abs(proj @ proj - proj)) > 1e-10:
        raise ValueError("projector is not idempotent")
    tr = float(np.trace(proj).real)
    if abs(tr - round(tr)) > 1e-9:
        raise ValueError(f"projector trace {tr} is not an integer")


def embed_operator(op, subset, n):
    """Extend an operator acting on the qubits listed in `subset` (in that
    order) to the full n-qubit register, identity elsewhere."""
    op = np.asarray(op, dtype=complex)
    subset = tuple(int(q) for q in subset)
    if len(set(subset)) != len(subset):
        raise ValueError(f"subset has duplicate qubits: {subset}")
    if any(q < 0 or q >= n for q in subset):
        raise ValueError(f"subset {subset} out of range for {n} qubits")
    if op.shape != (2 ** len(subset), 2 ** len(subset)):
        raise ValueError(
            f"operator shape {op.shape} does not act on {len(subset)} qubits"
        )
    rest = [q for q in range(n) if q not in subset]
    full = np.kron(op, np.eye(2 ** len(rest), dtype=complex))
    order = list(subset) + rest  # qubit owned by each tensor axis of `full`
    perm = [order.index(q) for q in range(n)]
    t = full.reshape((2,) * (2 * n))
    t = t.transpose(perm + [n + p for p in perm])
    return t.reshape(2**n, 2**n)


def partial_trace(rho, keep):
    """Reduced state on the qubits in `keep`, returned in the given order."""
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho.shape[0])
    keep = tuple(int(q) for q in keep)
    if not keep:
        raise ValueError("keep must list at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"keep has duplicate qubits: {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError(f"keep {keep} out of range for {n} qubits")
    rest = [q for q in range(n) if q not in keep]
    perm = list(keep) + rest
    axes = perm + [n + p for p in perm]
    t = rho.reshape((2,) * (2 * n)).transpose(axes)
    dk, dr = 2 ** len(keep), 2 ** len(rest)
    return np.einsum("arbr->ab", t.reshape(dk, dr, dk, dr))


def measure(rho, proj, subset):
    """Projective measurement branch.

    Applies the projector `proj` (acting on the qubits in `subset`) to the
    state `rho` and returns (probability, post_state) with the post-state
    renormalized and still on the full register.  Branches of probability
    <= ZERO_PROB_THRESHOLD return (probability, None).
    """
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho.shape[0])
    full = embed_operator(proj, subset, n)
    prob = float(np.trace(full @ rho).real)
    if prob <= ZERO_PROB_THRESHOLD:
        return prob, None
    post = full @ rho @ full / prob
    post = 0.5 * (post + post.conj().T)
    return prob, post


def hermitian_eigensystem(matrix, tol=1e-14, max_sweeps=100):
    """Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
    rotations.

    Each pivot applies the exact 2x2 unitary that diagonalizes the
    corresponding principal block, so the off-diagonal mass shrinks
    quadratically.  Returns (values ascending, column eigenvectors).
    Raises EigensolverError if `max_sweeps` sweeps do not converge.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(float(np.max(np.abs(a))), 1e-300)
    for _ in range(max_sweeps):
        # sum only off-diagonal entries: subtracting diagonal mass from the
        # total would round away anything below sqrt(eps) * scale
        strict = a - np.diag(np.diag(a))
        off = float(np.linalg.norm(strict))
        if off <= tol * scale:
            w = np.diag(a).real.copy()
            order = np.argsort(w, kind="stable")
            return w[order], v[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                ab = abs(apq)
                if ab == 0.0:
                    continue
                phase = apq / ab
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                # tangent root of t^2 - 2 tau t - 1 = 0 with |t| <= 1: keeps
                # the rotation angle within pi/4, which the cyclic sweep
                # needs to converge (the other root acts as a near-swap and
                # can shuffle the diagonal forever)
                if tau >= 0.0:
                    t = -1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = 1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                u0 = c * phase
                u1 = t * c  # real
                # unitary columns (u0, u1) and (-u1, conj(u0))
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = col_p * u0 + col_q * u1
                a[:, q] = -col_p * u1 + col_q * np.conj(u0)
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = np.conj(u0) * row_p + u1 * row_q
                a[q, :] = -u1 * row_p + u0 * row_q
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = vp * u0 + vq * u1
                v[:, q] = -vp * u1 + vq * np.conj(u0)
    raise EigensolverError(
        f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})"
    )


def _clamped_nonnegative(w, what):
    if float(w.min()) < -EIGENVALUE_CLAMP:
        raise ValueError(f"{what} has eigenvalue {float(w.min())} < -{EIGENVALUE_CLAMP}")
    return np.clip(w, 0.0, None)


def sqrtm_psd(matrix):
    """Hermitian square root of a positive-semidefinite matrix."""
    w, v = hermitian_eigensystem(matrix)
    w = _clamped_nonnegative(w, "matrix")
    return (v * np.sqrt(w)) @ v.conj().T


def spin_flip_lambdas(rho):
    """Square roots of the spin-flip spectrum of a two-qubit state,
    descending.

    These are the eigenvalue square roots of rho (sigma_y x sigma_y)
    rho* (sigma_y x sigma_y), computed as the singular values of
    K = sqrt(rho_flipped) sqrt(rho) through the Hermitian dilation
    [[0, K], [K^H, 0]] (eigenvalues +-sigma_i).  Working on K instead of
    K^H K keeps roots near zero at full absolute precision; squaring first
    would bury anything below sqrt(machine epsilon) in roundoff.
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density(rho, dim=4)
    yy = np.kron(_SIGMA[2], _SIGMA[2])
    flipped = yy @ rho.conj() @ yy
    k = sqrtm_psd(flipped) @ sqrtm_psd(rho)
    dil = np.zeros((8, 8), dtype=complex)
    dil[:4, 4:] = k
    dil[4:, :4] = k.conj().T
    w, _ = hermitian_eigensystem(dil)
    return np.clip(w[:3:-1], 0.0, None)


def wootters_concurrence(rho):
    """Concurrence of a two-qubit density operator (0 for separable, 1 for
    maximally entangled)."""
    lam = spin_flip_lambdas(rho)
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def bell_fraction(rho):
    """Largest overlap of a two-qubit state with the four Bell kets."""
    rho = np.asarray(rho, dtype=complex)
    validate_density(rho, dim=4)
    return float(
        max(np.vdot(bell_ket(i), rho @ bell_ket(i)).real for i in range(4))
    )


def _build_bloch_grid():
    # Gauss-Legendre in cos(theta) x uniform periodic trapezoid in phi;
    # exact for integrands of polynomial degree <= 2 in the Bloch vector.
    x, wx = np.polynomial.legendre.leggauss(16)
    theta = np.arccos(x)
    phi = 2.0 * np.pi * np.arange(32) / 32.0
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.broadcast_to((wx / 2.0)[:, None] / 32.0, tt.shape)
    kets = np.stack(
        [np.cos(tt / 2.0), np.exp(1j * pp) * np.sin(tt / 2.0)], axis=-1
    ).reshape(-1, 2)
    return kets, ww.reshape(-1).copy()


_BLOCH_KETS, _BLOCH_WEIGHTS = _build_bloch_grid()


def bloch_grid():
    """Quadrature kets (512, 2) and weights (512,) for uniform averages over
    pure single-qubit states; weights sum to one."""
    return _BLOCH_KETS.copy(), _BLOCH_WEIGHTS.copy()


def bloch_average(f):
    """Average of f(ket) over the Bloch sphere using the fixed grid."""
    return float(sum(w * f(k) for k, w in zip(_BLOCH_KETS, _BLOCH_WEIGHTS)))
