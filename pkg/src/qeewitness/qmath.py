"""Small dense complex matrix helpers for qubit (2x2) and qubit-pair (4x4) operators.

Matrices are plain ``numpy.ndarray`` objects with complex dtype. Two-qubit
operators use the ordering |00>, |01>, |10>, |11> with the qubit as the slow
(first) index and the environment as the fast (second) index.
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10

QUBIT = "qubit"
ENVIRONMENT = "environment"

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)


class InvariantError(RuntimeError):
    """A computed quantity violated a numerical invariant (Hermiticity, unitarity, ...)."""


def cmatrix(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Build a complex matrix, optionally from flat row-major entries."""
    m = np.asarray(entries, dtype=complex)
    if rows is not None or cols is not None:
        if rows is None or cols is None or rows <= 0 or cols <= 0:
            raise ValueError("rows and cols must both be positive")
        if m.size != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {m.size}")
        m = m.reshape(rows, cols)
    if m.ndim != 2 or 0 in m.shape:
        raise ValueError(f"not a matrix: shape {m.shape}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conjugate(m).T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _as_two_qubit(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2)


def partial_trace(rho, subsystem: str) -> np.ndarray:
    """Trace out ``subsystem`` ("qubit" or "environment") of a 4x4 operator.

    Returns the 2x2 reduced operator of the *other* subsystem.
    """
    t = _as_two_qubit(rho)  # indices (q, e, q', e')
    if subsystem == ENVIRONMENT:
        return np.einsum("ijkj->ik", t)
    if subsystem == QUBIT:
        return np.einsum("ijil->jl", t)
    raise ValueError(f"unknown subsystem {subsystem!r}")


def partial_transpose(rho, subsystem: str) -> np.ndarray:
    t = _as_two_qubit(rho)
    if subsystem == QUBIT:
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == ENVIRONMENT:
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"unknown subsystem {subsystem!r}")
    return t.reshape(4, 4)


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def is_unitary(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m @ dagger(m) - np.eye(m.shape[0]))) <= tol)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    The 2x2 case is solved in closed form; larger matrices go through LAPACK.

    Raises
    ------
    ValueError
        If ``m`` is not square.
    InvariantError
        If ``m`` deviates from Hermiticity by more than ``HERMITIAN_TOL``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not is_hermitian(m):
        raise InvariantError("matrix is not Hermitian within tolerance")
    if m.shape == (1, 1):
        return np.array([m[0, 0].real])
    if m.shape == (2, 2):
        a, d = m[0, 0].real, m[1, 1].real
        mean = 0.5 * (a + d)
        radius = np.hypot(0.5 * (a - d), abs(m[0, 1]))
        return np.array([mean - radius, mean + radius])
    return np.linalg.eigvalsh(0.5 * (m + dagger(m)))


def trace_norm_half_distance(a, b) -> float:
    """Half the trace norm of ``a - b``.

    Singular values are the square roots of the eigenvalues of D^dag D with
    D = a - b. For 2x2 inputs their sum has the closed form
    sqrt(||D||_F^2 + 2 |det D|), which avoids square roots of tiny eigenvalues.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    delta = a - b
    if delta.shape == (2, 2):
        frob2 = float(np.sum(np.abs(delta) ** 2))
        det = delta[0, 0] * delta[1, 1] - delta[0, 1] * delta[1, 0]
        return 0.5 * float(np.sqrt(frob2 + 2.0 * abs(det)))
    gram = dagger(delta) @ delta
    eig = np.clip(hermitian_eigenvalues(gram), 0.0, None)
    return 0.5 * float(np.sum(np.sqrt(eig)))
