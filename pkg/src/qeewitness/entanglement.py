"""Separability criterion and entanglement measures for conditional-gate evolutions.

A state produced by a conditional gate from a pure qubit is entangled exactly
when the conditional environment states R00 and R11 differ. The trace-norm
distance between them quantifies that, and the PPT negativity of the evolved
4x4 state provides an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ConditionalGate,
    EnvState,
    JointState,
    QubitPure,
    apply,
    conditional_gate_matrix,
    make_joint,
)
from .qmath import (
    ENVIRONMENT,
    HERMITIAN_TOL,
    InvariantError,
    dagger,
    hermitian_eigenvalues,
    is_hermitian,
    partial_transpose,
    trace_norm_half_distance,
)

ENTANGLING_TOL = 1e-10


def _check_density(m: np.ndarray, name: str) -> None:
    if m.shape != (2, 2) or not is_hermitian(m):
        raise InvariantError(f"{name} is not a Hermitian 2x2 matrix")
    if abs(np.trace(m) - 1.0) > HERMITIAN_TOL:
        raise InvariantError(f"{name} does not have unit trace")
    if hermitian_eigenvalues(m)[0] < -HERMITIAN_TOL:
        raise InvariantError(f"{name} is not positive semidefinite")


@dataclass(frozen=True, eq=False)
class ConditionalPair:
    r00: np.ndarray
    r11: np.ndarray

    def __post_init__(self):
        for name in ("r00", "r11"):
            m = np.array(getattr(self, name), dtype=complex)
            _check_density(m, name)
            m.setflags(write=False)
            object.__setattr__(self, name, m)


def conditional_pair(env: EnvState, g: ConditionalGate) -> ConditionalPair:
    r = env.matrix
    return ConditionalPair(g.w0 @ r @ dagger(g.w0), g.w1 @ r @ dagger(g.w1))


def entanglement_trace_norm(env: EnvState) -> float:
    """Trace-norm distance T(R00, R11) for the CNOT; equals sqrt(dc^2 + e^2)."""
    pair = conditional_pair(env, ConditionalGate.cnot())
    return trace_norm_half_distance(pair.r00, pair.r11)


def is_entangling(env: EnvState, g: ConditionalGate) -> bool:
    pair = conditional_pair(env, g)
    return bool(np.max(np.abs(pair.r00 - pair.r11)) > ENTANGLING_TOL)


def negativity(s: JointState) -> float:
    """Sum of |negative eigenvalues| of the partial transpose."""
    eig = hermitian_eigenvalues(partial_transpose(s.rho, ENVIRONMENT))
    return float(-np.sum(eig[eig < 0]))


def negativity_oracle(q: QubitPure, env: EnvState, g: ConditionalGate) -> float:
    return negativity(apply(conditional_gate_matrix(g), make_joint(q, env)))
