"""Independent oracles and samplers shared by the test modules."""

import cmath
import math

import numpy as np

from qeewitness.core import EnvState


def random_env(rng) -> EnvState:
    """Uniform-ish sample of valid environment states, including the boundary |d|^2 = c0 c1."""
    c0 = rng.uniform()
    r = math.sqrt(c0 * (1 - c0)) * math.sqrt(rng.uniform()) * (1 - 1e-15)
    if rng.uniform() < 0.1:
        r = math.sqrt(c0 * (1 - c0)) * (1 - 1e-15)
    return EnvState(c0, 1 - c0, r * cmath.exp(1j * rng.uniform(0, 2 * math.pi)))


def random_envs(n, seed=1234):
    rng = np.random.default_rng(seed)
    return [random_env(rng) for _ in range(n)]


def brute_partial_transpose_env(rho):
    """Partial transpose on the second factor by explicit index bookkeeping."""
    out = np.zeros((4, 4), dtype=complex)
    for q in range(2):
        for e in range(2):
            for qq in range(2):
                for ee in range(2):
                    out[2 * q + ee, 2 * qq + e] = rho[2 * q + e, 2 * qq + ee]
    return out


# ---------------------------------------------------------------------------
# Path-enumeration oracle for the photonic gate.
#
# Written from the routing table alone: it walks every (qubit path, env path)
# pair of every pure input component, keeps one-photon-per-port events, and
# sums amplitudes per detection event. It shares no code with the linear-map
# implementation in qeewitness.photonics.
# ---------------------------------------------------------------------------

H, V = 0, 1
SQ2 = math.sqrt(2)


def _routes(photon, pol, th, tv, eps):
    """(port, pol, distinguishable?, amplitude) for one photon."""
    if photon == "q":
        if pol == H:
            return [("Q", H, False, math.sqrt(th))]
        return [("Q", V, False, math.sqrt(tv)), ("E", V, False, math.sqrt(1 - tv))]
    base = (
        [("E", H, math.sqrt(th))]
        if pol == H
        else [("E", V, math.sqrt(tv)), ("Q", V, math.sqrt(1 - tv))]
    )
    good = math.sqrt(1 - eps**2)
    return [(m, p, False, good * a) for m, p, a in base] + [(m, p, True, eps * a) for m, p, a in base]


def oracle_probability(psi, u_q, u_e, th, tv, vis, vid):
    """Coincidence probability for a pure two-photon input psi[q_pol, e_pol]."""
    eps = math.sqrt(1 - vis / vid)
    events = {}
    for qp in (H, V):
        for ep in (H, V):
            c = psi[qp][ep]
            if c == 0:
                continue
            for qm, qpol, _, qa in _routes("q", qp, th, tv, eps):
                for em, epol, primed, ea in _routes("e", ep, th, tv, eps):
                    if qm == em:
                        continue
                    amp = c * qa * ea
                    if not primed and qp == V and ep == V:
                        amp = -amp
                    pol_in_q = qpol if qm == "Q" else epol
                    pol_in_e = epol if em == "E" else qpol
                    if primed:
                        label = ("primed", "q-photon-in-Q" if qm == "Q" else "q-photon-in-E")
                    else:
                        label = ("interfering",)
                    proj = np.conj(u_q[pol_in_q]) * np.conj(u_e[pol_in_e])
                    events[label] = events.get(label, 0) + amp * proj
    return sum(abs(a) ** 2 for a in events.values())


def _env_hv_components(env: EnvState):
    """Pure-state decomposition of the environment in the H/V basis, as (weight, vector)."""
    w, vecs = np.linalg.eigh(env.matrix)
    out = []
    for k in range(2):
        if w[k] <= 0:
            continue
        a0, a1 = vecs[:, k]
        # |0>_E = D = (H + V)/sqrt2, |1>_E = A = (H - V)/sqrt2
        out.append((w[k], np.array([(a0 + a1) / SQ2, (a0 - a1) / SQ2])))
    return out


Q_ANALYZER = {+1: np.array([1, 0]), -1: np.array([0, 1])}  # Hadamard folded in
E_ANALYZER = {0: np.array([1, 1]) / SQ2, 1: np.array([1, -1]) / SQ2}
OUTCOMES = ((+1, 0), (-1, 0), (+1, 1), (-1, 1))


def oracle_branch_probabilities(i, env, th, tv, vis, vid):
    probs = np.zeros(4)
    for weight, e_vec in _env_hv_components(env):
        psi = np.zeros((2, 2), dtype=complex)
        psi[i] = e_vec
        for n, (s, k) in enumerate(OUTCOMES):
            probs[n] += weight * oracle_probability(psi, Q_ANALYZER[s], E_ANALYZER[k], th, tv, vis, vid)
    return probs


def oracle_noisy_witness(env, th, tv, vis, vid):
    sx = []
    for i in (0, 1):
        p = oracle_branch_probabilities(i, env, th, tv, vis, vid)
        sx.append((p[0] - p[1] - p[2] + p[3]) / p.sum())
    return 0.5 * (sx[0] + sx[1])
