import math

import numpy as np
import pytest

from qeewitness.core import ConditionalGate, EnvState, JointState, QubitPure, env_from_theta, env_mixed
from qeewitness.entanglement import (
    ConditionalPair,
    conditional_pair,
    entanglement_trace_norm,
    is_entangling,
    negativity,
    negativity_oracle,
)
from qeewitness.protocol import SecondStep, witness, witness_mixed_c0, witness_pure_theta
from qeewitness.qmath import I2, SIGMA_Z, InvariantError

from support import brute_partial_transpose_env, random_envs

CNOT = ConditionalGate.cnot()
PLUS = QubitPure.plus()


class TestConditionalPair:
    def test_cnot_swaps_populations(self):
        pair = conditional_pair(env_mixed(0.7), CNOT)
        np.testing.assert_allclose(pair.r00, np.diag([0.7, 0.3]), atol=1e-15)
        np.testing.assert_allclose(pair.r11, np.diag([0.3, 0.7]), atol=1e-15)

    def test_cnot_maximally_mixed(self):
        pair = conditional_pair(env_mixed(0.5), CNOT)
        np.testing.assert_array_equal(pair.r00, I2 / 2)
        np.testing.assert_array_equal(pair.r11, I2 / 2)

    def test_sigma_z_flips_coherence(self):
        pair = conditional_pair(EnvState(0.5, 0.5, 0.5), ConditionalGate(I2, SIGMA_Z))
        assert pair.r00[0, 1] == 0.5
        assert pair.r11[0, 1] == -0.5

    def test_rejects_non_density_matrix(self):
        with pytest.raises(InvariantError):
            ConditionalPair(np.diag([1.2, -0.2]), I2 / 2)
        with pytest.raises(InvariantError):
            ConditionalPair(I2, I2 / 2)


class TestTraceNorm:
    def test_examples(self):
        assert entanglement_trace_norm(env_mixed(0.7)) == pytest.approx(0.4, abs=1e-15)
        assert entanglement_trace_norm(EnvState(0.5, 0.5, 0.5j)) == pytest.approx(1.0, abs=1e-15)

    def test_pure_family_is_abs_cos(self):
        for theta in np.linspace(-math.pi, math.pi, 73):
            assert entanglement_trace_norm(env_from_theta(theta)) == pytest.approx(
                abs(math.cos(theta)), abs=1e-12
            )

    def test_closed_form_random(self):
        for env in random_envs(300, seed=2):
            assert entanglement_trace_norm(env) == pytest.approx(math.hypot(env.delta_c, env.e), abs=1e-12)

    def test_zero_iff_not_entangling(self):
        envs = random_envs(200, seed=3) + [env_mixed(0.5), env_from_theta(math.pi / 2), EnvState(0.5, 0.5, 0.2)]
        for env in envs:
            assert (entanglement_trace_norm(env) <= 1e-10) == (not is_entangling(env, CNOT))


class TestIsEntangling:
    def test_examples(self):
        assert not is_entangling(env_mixed(0.5), CNOT)
        assert not is_entangling(env_from_theta(math.pi / 2), CNOT)
        assert is_entangling(env_mixed(0.7), CNOT)

    def test_commuting_blocks_never_entangle(self):
        assert not is_entangling(env_mixed(0.9), ConditionalGate(SIGMA_Z, SIGMA_Z))


class TestNegativity:
    def test_bell_state(self):
        assert negativity_oracle(PLUS, env_mixed(1.0), CNOT) == pytest.approx(0.5, abs=1e-12)

    def test_maximally_mixed_env_is_separable(self):
        # evolved state 1/2 (|Phi+><Phi+| + |Psi+><Psi+|); its partial transpose, built by
        # explicit index loops, has spectrum [0, 0, 1/2, 1/2]
        phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        psi = np.array([0, 1, 1, 0]) / np.sqrt(2)
        rho = 0.5 * (np.outer(phi, phi) + np.outer(psi, psi))
        np.testing.assert_allclose(
            np.linalg.eigvalsh(brute_partial_transpose_env(rho)), [0, 0, 0.5, 0.5], atol=1e-15
        )
        assert negativity(JointState(rho)) == pytest.approx(0.0, abs=1e-15)
        assert negativity_oracle(PLUS, env_mixed(0.5), CNOT) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("gate", [CNOT, ConditionalGate.cy(), ConditionalGate(SIGMA_Z, I2)])
    def test_pointer_state_stays_product(self, gate):
        for env in random_envs(20, seed=4):
            assert negativity_oracle(QubitPure.zero(), env, gate) == pytest.approx(0.0, abs=1e-12)

    def test_pure_family_consistency(self):
        for theta in (-math.pi / 2, math.pi / 2):
            assert abs(witness_pure_theta(theta)) <= 1e-12
            assert negativity_oracle(PLUS, env_from_theta(theta), CNOT) <= 1e-12
        for theta in np.linspace(-math.pi, math.pi, 100):
            assert abs(witness_pure_theta(theta)) > 1e-10
            assert negativity_oracle(PLUS, env_from_theta(theta), CNOT) > 1e-10

    def test_mixed_family_consistency(self):
        for c0 in np.linspace(0, 1, 101):
            w_zero = abs(witness_mixed_c0(c0)) <= 1e-10
            n_zero = negativity_oracle(PLUS, env_mixed(c0), CNOT) <= 1e-10
            assert w_zero == n_zero == bool(abs(c0 - 0.5) < 1e-12)

    def test_cz_witness_is_one_sided(self):
        env = EnvState(0.5, 0.5, 0.5j)
        assert witness(env, SecondStep.CZ).w == pytest.approx(0.0, abs=1e-12)
        assert negativity_oracle(PLUS, env, CNOT) > 0.1
        assert witness(env, SecondStep.CY).w == pytest.approx(-1.0, abs=1e-12)
