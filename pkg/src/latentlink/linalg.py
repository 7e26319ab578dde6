"""Dense complex matrix kernel for the small dimensions used in this package.

Everything here operates on plain ``numpy.ndarray`` values (complex, row-major).
Dimensions never exceed 8 in practice (message dim 2, message x control dim 4,
Choi matrices up to 8), so all paths are dense.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NonHermitianError, NonSquareError

HERMITIAN_ATOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X, Y, Z)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)

for _m in (I2, X, Y, Z, KET0, KET1, KET_PLUS, KET_MINUS):
    _m.flags.writeable = False


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def projector(vec: np.ndarray) -> np.ndarray:
    """Rank-one projector |v><v| of a (not necessarily normalized) vector."""
    v = np.asarray(vec, dtype=complex).ravel()
    return np.outer(v, v.conj())


def as_matrix(m: np.ndarray) -> np.ndarray:
    """Coerce to a 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def require_square(m: np.ndarray) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_eigenvalues(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, descending.

    The input is symmetrized as (m + m^dagger)/2 before decomposition; a
    deviation from Hermiticity larger than ``atol`` raises NonHermitianError.
    """
    vals, _ = hermitian_eigensystem(m, atol=atol)
    return vals


def hermitian_eigensystem(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> tuple[np.ndarray, np.ndarray]:
    """(eigenvalues descending, eigenvectors as columns) of a Hermitian matrix."""
    a = require_square(m)
    defect = float(np.abs(a - dagger(a)).max())
    if defect > atol:
        raise NonHermitianError(f"matrix deviates from Hermiticity by {defect:.3e} > {atol:.1e}")
    sym = (a + dagger(a)) / 2
    vals, vecs = np.linalg.eigh(sym)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def eigvalsh_2x2(m: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a 2x2 Hermitian matrix, descending.

    Independent of the LAPACK solver; used as an oracle and fast path.
    """
    a = require_square(m)
    if a.shape != (2, 2):
        raise DimensionMismatchError(f"expected a 2x2 matrix, got shape {a.shape}")
    sym = (a + dagger(a)) / 2
    mean = (sym[0, 0].real + sym[1, 1].real) / 2
    half = (sym[0, 0].real - sym[1, 1].real) / 2
    radius = np.hypot(half, abs(sym[0, 1]))
    return np.array([mean + radius, mean - radius])


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values, nonnegative and descending; the first is the operator norm."""
    a = require_square(m)
    return np.linalg.svd(a, compute_uv=False)


def operator_norm(m: np.ndarray) -> float:
    """Largest singular value."""
    return float(singular_values(m)[0])


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product (first factor varies slowest, matching index i_a*d_b + i_b)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _split_dims(m: np.ndarray, dims: tuple[int, int]) -> tuple[np.ndarray, int, int]:
    a = require_square(m)
    da, db = dims
    if da < 1 or db < 1 or a.shape[0] != da * db:
        raise DimensionMismatchError(f"matrix of size {a.shape[0]} does not match subsystem dims {dims}")
    return a, da, db


def partial_trace(m: np.ndarray, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Trace out one tensor factor of a matrix on A (x) B; ``keep`` is "A" or "B"."""
    a, da, db = _split_dims(m, dims)
    t = a.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ibjb->ij", t)
    if keep == "B":
        return np.einsum("aiaj->ij", t)
    raise DimensionMismatchError(f'keep must be "A" or "B", got {keep!r}')


def partial_transpose(m: np.ndarray, dims: tuple[int, int], subsystem: str) -> np.ndarray:
    """Transpose one tensor factor of a matrix on A (x) B; an exact involution."""
    a, da, db = _split_dims(m, dims)
    t = a.reshape(da, db, da, db)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise DimensionMismatchError(f'subsystem must be "A" or "B", got {subsystem!r}')
    return t.reshape(da * db, da * db)


def max_entangled_ket(d: int) -> np.ndarray:
    """Normalized |Phi+> = sum_k |k>|k> / sqrt(d)."""
    return np.eye(d, dtype=complex).ravel() / np.sqrt(d)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_pure_state(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, d: int) -> np.ndarray:
    """Random full-rank density matrix (normalized Wishart)."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real
