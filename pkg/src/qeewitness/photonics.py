"""Photonic gate model with PPBS transmittivities and partial distinguishability.

Encoding
--------
Both logical qubits live in photon polarisation. The qubit photon uses
|0>_Q = H, |1>_Q = V. The environment photon uses |0>_E = D and |1>_E = A, so
its logical |+>_E / |->_E are H / V. A conditional sign on the V-V component
(a CZ in the polarisation basis) is therefore the logical CNOT of step 1.

The qubit photon enters the PPBS in port Q, the environment photon in port E.
Single-photon routing, with eps = sqrt(1 - V / V_id)::

    Q, H -> sqrt(Th) Q
    Q, V -> sqrt(Tv) Q + sqrt(1 - Tv) E
    E, H -> sqrt(1 - eps^2) sqrt(Th) E + eps sqrt(Th) E'
    E, V -> sqrt(1 - eps^2) (sqrt(Tv) E + sqrt(1 - Tv) Q) + eps (... same, primed)

Primed amplitudes belong to an environment photon that is distinguishable from
the qubit photon. In the interfering sector the two-photon V-V component
picks up the conditional sign; paths that end in the same detection
configuration add coherently. Primed paths carry no conditional sign, and
direct/exchanged primed configurations are orthogonal, so they add as
probabilities. Only one-photon-per-port configurations are detected.

The Hadamard on the qubit and all analysers are ideal. The step-2 controlled
gate is realised by feed-forward: the E-port photon is analysed in D/A and a
sigma_z on the qubit for outcome A is applied as a relabelling of the Q-port
outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import EnvState
from .protocol import WitnessResult
from .qmath import HADAMARD, dagger, kron

H, V = 0, 1
PORT_Q, PORT_E = "Q", "E"
INTERFERING, PRIMED = "interfering", "primed"

MEASURED_T_H = 0.983
MEASURED_T_V = 0.324
MEASURED_VISIBILITY = 0.75
IDEAL_VISIBILITY = 0.8

# D and A written in the H/V basis
ENV_LOGICAL_TO_HV = HADAMARD.copy()

# detection configurations in branch order used throughout: (qubit sign, env outcome)
OUTCOMES = ((+1, 0), (-1, 0), (+1, 1), (-1, 1))


@dataclass(frozen=True)
class ImperfectionParams:
    t_h: float
    t_v: float
    v: float
    v_id: float = IDEAL_VISIBILITY

    def __post_init__(self):
        for name in ("t_h", "t_v", "v", "v_id"):
            x = float(getattr(self, name))
            if not math.isfinite(x):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, x)
        if not (0.0 <= self.t_h <= 1.0 and 0.0 <= self.t_v <= 1.0):
            raise ValueError("transmittivities must lie in [0, 1]")
        if not 0.0 < self.v_id <= 1.0:
            raise ValueError("ideal visibility must lie in (0, 1]")
        if self.v < 0.0:
            raise ValueError("visibility must be non-negative")
        if self.v > self.v_id:
            raise ValueError(
                f"visibility {self.v} exceeds ideal visibility {self.v_id}; epsilon undefined"
            )

    @classmethod
    def ideal(cls, v_id: float = IDEAL_VISIBILITY) -> "ImperfectionParams":
        return cls(1.0, 1.0, v_id, v_id)

    @classmethod
    def measured(cls) -> "ImperfectionParams":
        return cls(MEASURED_T_H, MEASURED_T_V, MEASURED_VISIBILITY, IDEAL_VISIBILITY)

    @property
    def epsilon(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.v / self.v_id))

    @property
    def is_ideal(self) -> bool:
        return self.t_h == 1.0 and self.t_v == 1.0 and self.epsilon == 0.0


class PathKey(NamedTuple):
    q_mode: str
    q_pol: int
    e_mode: str
    e_pol: int
    tag: str


@dataclass(frozen=True)
class TwoPhotonAmplitudes:
    """Unnormalised output amplitudes of one two-photon polarisation input."""

    amplitudes: dict

    def sector(self, tag: str) -> dict:
        return {k: a for k, a in self.amplitudes.items() if k.tag == tag}

    @property
    def interfering(self) -> dict:
        return self.sector(INTERFERING)

    @property
    def primed(self) -> dict:
        return self.sector(PRIMED)


def _qubit_photon_paths(pol: int, p: ImperfectionParams):
    if pol == H:
        routes = [(PORT_Q, H, math.sqrt(p.t_h))]
    else:
        routes = [(PORT_Q, V, math.sqrt(p.t_v)), (PORT_E, V, math.sqrt(1.0 - p.t_v))]
    return [r for r in routes if r[2] != 0.0]


def _env_photon_paths(pol: int, p: ImperfectionParams):
    eps = p.epsilon
    weights = ((INTERFERING, math.sqrt(1.0 - eps * eps)), (PRIMED, eps))
    if pol == H:
        routes = [(PORT_E, H, math.sqrt(p.t_h))]
    else:
        routes = [(PORT_E, V, math.sqrt(p.t_v)), (PORT_Q, V, math.sqrt(1.0 - p.t_v))]
    return [
        (mode, pol_, tag, w * a)
        for tag, w in weights
        for mode, pol_, a in routes
        if w * a != 0.0
    ]


def ppbs_transform(q_pol: int, e_pol: int, p: ImperfectionParams) -> TwoPhotonAmplitudes:
    """Route a two-photon polarisation basis input through the gate.

    Every non-vanishing path is kept, including both photons leaving through
    one port; losses show up as missing norm.
    """
    if q_pol not in (H, V) or e_pol not in (H, V):
        raise ValueError("polarisations must be H (0) or V (1)")
    sign = -1.0 if (q_pol, e_pol) == (V, V) else 1.0
    amps = {}
    for qm, qp, qa in _qubit_photon_paths(q_pol, p):
        for em, ep, tag, ea in _env_photon_paths(e_pol, p):
            amp = qa * ea * (sign if tag == INTERFERING else 1.0)
            key = PathKey(qm, qp, em, ep, tag)
            amps[key] = amps.get(key, 0.0) + amp
    return TwoPhotonAmplitudes(amps)


def _detection_label(key: PathKey):
    """Map a path to (distinguishability label, pol in port Q, pol in port E), or None."""
    if key.q_mode == key.e_mode:
        return None
    if key.q_mode == PORT_Q:
        pols = (key.q_pol, key.e_pol)
        order = "direct"
    else:
        pols = (key.e_pol, key.q_pol)
        order = "exchange"
    # indistinguishable photons: which photon sits in which port is not observable
    label = INTERFERING if key.tag == INTERFERING else f"{PRIMED}:{order}"
    return label, pols


def coincidence_maps(p: ImperfectionParams) -> dict:
    """Linear maps from input polarisations to coincidence configurations.

    Returns ``{label: K}`` with ``K`` a 4x4 matrix: columns index the input
    (q_pol, e_pol), rows index (pol in port Q, pol in port E). Different labels
    never interfere.
    """
    maps = {}
    for q_pol in (H, V):
        for e_pol in (H, V):
            col = 2 * q_pol + e_pol
            for key, amp in ppbs_transform(q_pol, e_pol, p).amplitudes.items():
                det = _detection_label(key)
                if det is None:
                    continue
                label, (pq, pe) = det
                k = maps.setdefault(label, np.zeros((4, 4), dtype=complex))
                k[2 * pq + pe, col] += amp
    return maps


def _as_density(state) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape == (4,):
        return np.outer(state, state.conj())
    if state.shape == (4, 4):
        return state
    raise ValueError(f"two-photon state must be a 4-vector or 4x4 matrix, got {state.shape}")


def sector_probabilities(state, projection, p: ImperfectionParams) -> dict:
    """Coincidence probability split into interfering and primed contributions."""
    rho = _as_density(state)
    u_q, u_e = (np.asarray(x, dtype=complex) for x in projection)
    u = kron(u_q.reshape(2, 1), u_e.reshape(2, 1))
    out = {INTERFERING: 0.0, PRIMED: 0.0}
    for label, k in coincidence_maps(p).items():
        val = float((dagger(u) @ k @ rho @ dagger(k) @ u).real[0, 0])
        # a PSD quadratic form; only roundoff can push it below zero
        out[INTERFERING if label == INTERFERING else PRIMED] += max(val, 0.0)
    return out


def coincidence_probability(state, projection, p: ImperfectionParams) -> float:
    """Probability of one detection per port with the given analyser projections.

    ``state`` is a 4-vector or 4x4 density matrix over (q_pol, e_pol) in the
    H/V basis; ``projection`` is ``(u_q, u_e)``, the Jones vectors selected by
    the analysers behind ports Q and E.
    """
    return sum(sector_probabilities(state, projection, p).values())


def qubit_analyzer(sign: int) -> np.ndarray:
    """Q-port projection for the sigma_x outcome ``sign`` after the ideal Hadamard."""
    target = np.array([1, sign], dtype=complex) / math.sqrt(2)
    return HADAMARD @ target


def environment_analyzer(k: int) -> np.ndarray:
    """E-port projection onto logical |k>_E (D for 0, A for 1)."""
    return ENV_LOGICAL_TO_HV[:, k].copy()


def branch_input(i: int, env: EnvState) -> np.ndarray:
    if i not in (0, 1):
        raise ValueError(f"branch index must be 0 or 1, got {i!r}")
    q = np.zeros((2, 2), dtype=complex)
    q[i, i] = 1.0
    rho_e = ENV_LOGICAL_TO_HV @ env.matrix @ dagger(ENV_LOGICAL_TO_HV)
    return kron(q, rho_e)


def branch_probabilities(i: int, env: EnvState, p: ImperfectionParams) -> np.ndarray:
    """Coincidence probabilities of the four analyser settings, in ``OUTCOMES`` order."""
    rho = branch_input(i, env)
    return np.array(
        [
            coincidence_probability(rho, (qubit_analyzer(s), environment_analyzer(k)), p)
            for s, k in OUTCOMES
        ]
    )


def sigma_x_from_probabilities(probs) -> float:
    """Feed-forward corrected <sigma_x> from (+,0), (-,0), (+,1), (-,1) rates."""
    probs = np.asarray(probs, dtype=float)
    signs = np.array([s * (1 - 2 * k) for s, k in OUTCOMES], dtype=float)
    total = probs.sum()
    if total <= 0:
        return float("nan")
    return float(signs @ probs / total)


def witness_probabilities(env: EnvState, p: ImperfectionParams) -> np.ndarray:
    """Eight coincidence probabilities: branch 0 outcomes followed by branch 1."""
    return np.concatenate([branch_probabilities(0, env, p), branch_probabilities(1, env, p)])


def witness_from_probabilities(probs) -> WitnessResult:
    probs = np.asarray(probs, dtype=float)
    return WitnessResult.from_branches(
        sigma_x_from_probabilities(probs[:4]), sigma_x_from_probabilities(probs[4:])
    )


def noisy_witness(env: EnvState, p: ImperfectionParams) -> WitnessResult:
    return witness_from_probabilities(witness_probabilities(env, p))


def waveplate_bias(theta: float) -> float:
    """Half-waveplate angle alpha with tan(theta/2) = tan(2 alpha) / sqrt(3)."""
    if not -math.pi < theta < math.pi:
        raise ValueError("theta must lie in the open interval (-pi, pi)")
    return 0.5 * math.atan(math.sqrt(3.0) * math.tan(theta / 2))


def waveplate_target(alpha: float) -> float:
    """Inverse of :func:`waveplate_bias`."""
    return 2.0 * math.atan(math.tan(2 * alpha) / math.sqrt(3.0))
