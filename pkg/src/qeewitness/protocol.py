"""Two-step QEE detection protocol and its witness.

Step 1 lets the environment decohere a pointer state of the qubit through a
CNOT. Step 2 applies a Hadamard on the qubit followed by a controlled-Z (or
controlled-Y) gate; the witness is the average of the qubit's <sigma_x> over
the two pointer-state preparations.

Every witness value here comes out of full 4x4 density-matrix evolution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    EnvState,
    Gate,
    JointState,
    QubitPure,
    apply,
    env_from_theta,
    env_mixed,
    gate_matrix,
    make_joint,
)
from .qmath import HERMITIAN_TOL, P0, P1, SIGMA_X, SIGMA_Z, I2, InvariantError, kron, partial_trace

ENV_OUTCOMES = (P0, P1)


class SecondStep(enum.Enum):
    CZ = "cz"
    CY = "cy"


_STEP2_GATE = {SecondStep.CZ: Gate.CZ, SecondStep.CY: Gate.CY}


@dataclass(frozen=True)
class WitnessResult:
    sx0: float
    sx1: float
    w: float

    @classmethod
    def from_branches(cls, sx0: float, sx1: float) -> "WitnessResult":
        return cls(float(sx0), float(sx1), (float(sx0) + float(sx1)) / 2)

    def as_dict(self) -> dict:
        return {"sx0": self.sx0, "sx1": self.sx1, "w": self.w}


def _check_branch(i) -> int:
    if i not in (0, 1) or isinstance(i, bool):
        raise ValueError(f"branch index must be 0 or 1, got {i!r}")
    return int(i)


def prepare_branch(i: int, env: EnvState) -> JointState:
    """|i><i| (x) R_E after the CNOT and the Hadamard on the qubit."""
    s = make_joint(QubitPure.pointer(_check_branch(i)), env)
    s = apply(gate_matrix(Gate.CNOT), s)
    return apply(gate_matrix(Gate.HADAMARD_Q), s)


def run_branch(i: int, env: EnvState, step2: SecondStep = SecondStep.CZ) -> JointState:
    """Joint state at the end of the protocol for the pointer preparation ``i``."""
    s = prepare_branch(i, env)
    return apply(gate_matrix(_STEP2_GATE[SecondStep(step2)]), s)


def qubit_coherence(s: JointState) -> complex:
    return complex(s.reduced_qubit()[0, 1])


def sigma_x_from_qubit(rho_q: np.ndarray) -> float:
    """<sigma_x> = 2 Re(rho_01), insisting that the coherence is real."""
    rho01 = rho_q[0, 1]
    if abs(rho01.imag) > HERMITIAN_TOL:
        raise InvariantError(f"qubit coherence has imaginary part {rho01.imag:.3e}")
    return 2.0 * float(rho01.real)


def branch_sigma_x(i: int, env: EnvState, step2: SecondStep = SecondStep.CZ) -> float:
    return sigma_x_from_qubit(run_branch(i, env, step2).reduced_qubit())


def witness(env: EnvState, step2: SecondStep = SecondStep.CZ) -> WitnessResult:
    """Run both pointer branches and combine W = (<sx>_0 + <sx>_1) / 2."""
    return WitnessResult.from_branches(
        branch_sigma_x(0, env, step2), branch_sigma_x(1, env, step2)
    )


def witness_pure_theta(theta: float) -> float:
    return witness(env_from_theta(theta), SecondStep.CZ).w


def pure_theta_reduced_output(theta: float) -> np.ndarray:
    """Reduced qubit state at the output for the pure environment family.

    Identical for both pointer preparations; the off-diagonal is cos(theta)/2.
    """
    return run_branch(0, env_from_theta(theta), SecondStep.CZ).reduced_qubit()


def witness_mixed_c0(c0: float) -> float:
    return witness(env_mixed(c0), SecondStep.CZ).w


# -- feed-forward variants ---------------------------------------------------


def feed_forward_outcomes(i: int, env: EnvState, step2: SecondStep = SecondStep.CZ):
    """Enumerate the environment measurement of the feed-forward scheme.

    The controlled gate of step 2 is replaced by a computational-basis
    measurement of E (preceded by the IH rotation for the C-Y variant) and a
    sigma_z on the qubit whenever E yields 1.

    Returns a list of ``(outcome, probability, rho_q)`` with ``rho_q`` the
    normalised, corrected qubit state (``None`` for zero-probability outcomes).
    """
    s = prepare_branch(i, env)
    if SecondStep(step2) is SecondStep.CY:
        s = apply(gate_matrix(Gate.IH_E), s)
    out = []
    for k, proj in enumerate(ENV_OUTCOMES):
        m = kron(I2, proj)
        rho_q = partial_trace(m @ s.rho @ m, "environment")
        prob = float(np.trace(rho_q).real)
        if k == 1:
            rho_q = SIGMA_Z @ rho_q @ SIGMA_Z
        out.append((k, prob, rho_q / prob if prob > 0 else None))
    return out


def _ff_sigma_x(i: int, env: EnvState, step2: SecondStep) -> float:
    # ensemble average of the corrected qubit states
    rho_q = sum(p * r for _, p, r in feed_forward_outcomes(i, env, step2) if r is not None)
    return float(np.trace(rho_q @ SIGMA_X).real)


def feed_forward_cz(i: int, env: EnvState) -> float:
    return _ff_sigma_x(_check_branch(i), env, SecondStep.CZ)


def feed_forward_cy(i: int, env: EnvState) -> float:
    return _ff_sigma_x(_check_branch(i), env, SecondStep.CY)


def feed_forward_witness(env: EnvState, step2: SecondStep = SecondStep.CZ) -> WitnessResult:
    f = feed_forward_cz if SecondStep(step2) is SecondStep.CZ else feed_forward_cy
    return WitnessResult.from_branches(f(0, env), f(1, env))
