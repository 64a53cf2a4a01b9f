"""States and gates of the qubit (Q) + environment qubit (E) system.

The simulator works in the logical basis throughout; polarisation encodings of
the optical experiment only enter in :mod:`qeewitness.photonics`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .qmath import (
    ENVIRONMENT,
    HADAMARD,
    HERMITIAN_TOL,
    I2,
    P0,
    P1,
    QUBIT,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    InvariantError,
    dagger,
    hermitian_eigenvalues,
    is_hermitian,
    is_unitary,
    kron,
    partial_trace,
)

STATE_TOL = 1e-12
POSITIVITY_TOL = 1e-9

IH = np.array([[1, -1j], [1j, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class EnvState:
    """Environment qubit density matrix [[c0, d], [conj(d), c1]]."""

    c0: float
    c1: float
    d: complex = 0j

    def __post_init__(self):
        c0, c1 = float(self.c0), float(self.c1)
        d = complex(self.d)
        if not (math.isfinite(c0) and math.isfinite(c1) and np.isfinite(d)):
            raise ValueError("environment parameters must be finite")
        if c0 < -STATE_TOL or c1 < -STATE_TOL:
            raise ValueError(f"negative population: c0={c0}, c1={c1}")
        if abs(c0 + c1 - 1.0) > STATE_TOL:
            raise ValueError(f"populations must sum to 1, got {c0 + c1}")
        if abs(d) ** 2 > c0 * c1 + STATE_TOL:
            raise ValueError(f"|d|^2 = {abs(d) ** 2} exceeds c0*c1 = {c0 * c1}")
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "d", d)

    @property
    def delta_c(self) -> float:
        return self.c0 - self.c1

    @property
    def e(self) -> float:
        return 2.0 * self.d.imag

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.c0, self.d], [self.d.conjugate(), self.c1]], dtype=complex)


@dataclass(frozen=True)
class QubitPure:
    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha, beta = complex(self.alpha), complex(self.beta)
        if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > STATE_TOL:
            raise ValueError("qubit amplitudes are not normalised")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def zero(cls) -> "QubitPure":
        return cls(1, 0)

    @classmethod
    def one(cls) -> "QubitPure":
        return cls(0, 1)

    @classmethod
    def pointer(cls, i: int) -> "QubitPure":
        if i not in (0, 1):
            raise ValueError(f"pointer state index must be 0 or 1, got {i!r}")
        return cls.zero() if i == 0 else cls.one()

    @classmethod
    def plus(cls) -> "QubitPure":
        return cls(1 / math.sqrt(2), 1 / math.sqrt(2))

    @classmethod
    def minus(cls) -> "QubitPure":
        return cls(1 / math.sqrt(2), -1 / math.sqrt(2))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    @property
    def projector(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())


@dataclass(frozen=True, eq=False)
class JointState:
    """4x4 density matrix of Q (slow index) and E (fast index)."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"joint state must be 4x4, got {rho.shape}")
        if not is_hermitian(rho):
            raise InvariantError("joint state is not Hermitian")
        if abs(np.trace(rho) - 1.0) > HERMITIAN_TOL:
            raise InvariantError(f"joint state trace is {np.trace(rho).real}")
        if hermitian_eigenvalues(rho)[0] < -POSITIVITY_TOL:
            raise InvariantError("joint state has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    def reduced_qubit(self) -> np.ndarray:
        return partial_trace(self.rho, ENVIRONMENT)

    def reduced_environment(self) -> np.ndarray:
        return partial_trace(self.rho, QUBIT)


@dataclass(frozen=True, eq=False)
class ConditionalGate:
    """U = |0><0| (x) w0 + |1><1| (x) w1 acting on Q (x) E."""

    w0: np.ndarray
    w1: np.ndarray

    def __post_init__(self):
        for name in ("w0", "w1"):
            w = np.array(getattr(self, name), dtype=complex)
            if w.shape != (2, 2) or not is_unitary(w):
                raise ValueError(f"{name} must be a 2x2 unitary")
            w.setflags(write=False)
            object.__setattr__(self, name, w)

    @classmethod
    def cnot(cls) -> "ConditionalGate":
        return cls(I2, SIGMA_X)

    @classmethod
    def cz(cls) -> "ConditionalGate":
        return cls(I2, SIGMA_Z)

    @classmethod
    def cy(cls) -> "ConditionalGate":
        return cls(I2, SIGMA_Y)


class Gate(enum.Enum):
    CNOT = "cnot"
    HADAMARD_Q = "hadamard_q"
    CZ = "cz"
    CY = "cy"
    IH_E = "ih_e"
    SIGMA_X_Q = "sigma_x_q"
    SIGMA_Z_Q = "sigma_z_q"


def env_from_theta(theta: float) -> EnvState:
    """Pure environment cos(theta/2)|0> + sin(theta/2)|1>."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return EnvState(c * c, s * s, c * s)


def env_mixed(c0: float) -> EnvState:
    """Incoherent mixture c0|0><0| + (1 - c0)|1><1|."""
    if not 0.0 <= c0 <= 1.0:
        raise ValueError(f"c0 must lie in [0, 1], got {c0}")
    return EnvState(c0, 1.0 - c0, 0j)


def make_joint(q: QubitPure, env: EnvState) -> JointState:
    return JointState(kron(q.projector, env.matrix))


def conditional_gate_matrix(g: ConditionalGate) -> np.ndarray:
    return kron(P0, g.w0) + kron(P1, g.w1)


_GATES = {
    Gate.CNOT: conditional_gate_matrix(ConditionalGate.cnot()),
    Gate.CZ: conditional_gate_matrix(ConditionalGate.cz()),
    Gate.CY: conditional_gate_matrix(ConditionalGate.cy()),
    Gate.HADAMARD_Q: kron(HADAMARD, I2),
    Gate.IH_E: kron(I2, IH),
    Gate.SIGMA_X_Q: kron(SIGMA_X, I2),
    Gate.SIGMA_Z_Q: kron(SIGMA_Z, I2),
}


def gate_matrix(g: Gate) -> np.ndarray:
    """4x4 matrix of a protocol gate on Q (x) E."""
    return _GATES[Gate(g)].copy()


def apply(u, s: JointState) -> JointState:
    """Unitary evolution rho -> U rho U^dag."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 unitary, got shape {u.shape}")
    if not is_unitary(u):
        raise InvariantError("evolution operator is not unitary")
    return JointState(u @ s.rho @ dagger(u))
