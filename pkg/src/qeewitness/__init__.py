"""Qubit-environment entanglement witness simulator for pure-dephasing evolutions."""

from .core import (
    ConditionalGate,
    EnvState,
    Gate,
    JointState,
    QubitPure,
    apply,
    conditional_gate_matrix,
    env_from_theta,
    env_mixed,
    gate_matrix,
    make_joint,
)
from .entanglement import (
    ConditionalPair,
    conditional_pair,
    entanglement_trace_norm,
    is_entangling,
    negativity_oracle,
)
from .harness import SweepConfig, SweepRecord, run_sweep
from .photonics import ImperfectionParams, noisy_witness, waveplate_bias
from .protocol import (
    SecondStep,
    WitnessResult,
    feed_forward_cy,
    feed_forward_cz,
    run_branch,
    witness,
    witness_mixed_c0,
    witness_pure_theta,
)
from .qmath import InvariantError

__version__ = "0.1.0"
