"""Witness sweeps with Poisson Monte Carlo error bars.

Each grid point gets the ideal witness, the imperfection-model witness, and a
Monte Carlo mean/std obtained by Poisson-resampling the expected coincidence
counts of all eight analyser settings (four per pointer branch).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import env_from_theta, env_mixed
from .photonics import (
    ImperfectionParams,
    noisy_witness,
    witness_from_probabilities,
    witness_probabilities,
)
from .protocol import witness_mixed_c0, witness_pure_theta

PURE_THETA = "pure_theta"
MIXED_C0 = "mixed_c0"
FAMILIES = (PURE_THETA, MIXED_C0)

DEFAULT_MC_SAMPLES = 200
CSV_COLUMNS = ("param", "w_ideal", "w_model", "w_mc_mean", "w_mc_std")


@dataclass(frozen=True)
class SweepConfig:
    family: str
    grid: tuple
    params: ImperfectionParams = field(default_factory=ImperfectionParams.ideal)
    shots: float = 1e4
    mc_samples: int = DEFAULT_MC_SAMPLES
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        grid = tuple(float(x) for x in self.grid)
        if not grid:
            raise ValueError("grid must not be empty")
        object.__setattr__(self, "grid", grid)
        if not self.shots > 0:
            raise ValueError("shots must be positive")
        if self.mc_samples < 2:
            raise ValueError("mc_samples must be at least 2")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass(frozen=True)
class SweepRecord:
    param: float
    w_ideal: float
    w_model: float
    w_mc_mean: float
    w_mc_std: float


def simulate_counts(probabilities: Sequence[float], shots: float) -> np.ndarray:
    """Expected counts probability * shots; no rounding."""
    probs = np.asarray(probabilities, dtype=float)
    if np.any(probs < 0):
        raise ValueError("probabilities must be non-negative")
    return probs * float(shots)


def mix_counts(counts_env0, counts_env1, c0: float) -> np.ndarray:
    """Weight two count vectors as if integrated for fractions c0 and 1 - c0."""
    a = np.asarray(counts_env0, dtype=float)
    b = np.asarray(counts_env1, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"count vectors differ in length: {a.shape} vs {b.shape}")
    if not 0.0 <= c0 <= 1.0:
        raise ValueError(f"c0 must lie in [0, 1], got {c0}")
    return c0 * a + (1.0 - c0) * b


def witness_from_counts(counts) -> float:
    """Witness estimate from eight counts (branch 0 settings, then branch 1)."""
    return witness_from_probabilities(counts).w


def poisson_mc_std(
    counts,
    mc_samples: int,
    seed,
    estimator: Callable[[np.ndarray], float] = witness_from_counts,
) -> tuple[float, float]:
    """Mean and sample standard deviation of ``estimator`` over Poisson resamples.

    Parameters
    ----------
    counts : sequence of float
        Expected count of every outcome.
    mc_samples : int
        Number of resampled count vectors.
    seed : int or numpy.random.SeedSequence
        Source of randomness; equal seeds give equal results.
    estimator : callable
        Maps one count vector to a real number.
    """
    counts = np.asarray(counts, dtype=float)
    if counts.size == 0:
        raise ValueError("counts must not be empty")
    if np.any(counts < 0):
        raise ValueError("counts must be non-negative")
    if mc_samples < 2:
        raise ValueError("mc_samples must be at least 2")
    rng = np.random.default_rng(seed)
    draws = rng.poisson(counts, size=(mc_samples, counts.size))
    values = np.array([estimator(row) for row in draws], dtype=float)
    return float(values.mean()), float(values.std(ddof=1))


def _expected_counts(env, cfg: SweepConfig) -> np.ndarray:
    return simulate_counts(witness_probabilities(env, cfg.params), cfg.shots)


def sweep_point(cfg: SweepConfig, index: int) -> SweepRecord:
    x = cfg.grid[index]
    if cfg.family == PURE_THETA:
        w_ideal = witness_pure_theta(x)
        env = env_from_theta(x)
        counts = _expected_counts(env, cfg)
    else:
        w_ideal = witness_mixed_c0(x)
        env = env_mixed(x)
        # mixing happens on expected counts of the two pointer-environment runs
        counts = mix_counts(
            _expected_counts(env_mixed(1.0), cfg), _expected_counts(env_mixed(0.0), cfg), x
        )
    w_model = noisy_witness(env, cfg.params).w
    stream = np.random.SeedSequence(cfg.seed, spawn_key=(index,))
    mean, std = poisson_mc_std(counts, cfg.mc_samples, stream)
    return SweepRecord(x, w_ideal, w_model, mean, std)


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    # every point owns its RNG stream, so evaluation order does not matter
    return [sweep_point(cfg, i) for i in range(len(cfg.grid))]


def _fmt(x: float) -> str:
    return format(x, ".12g")


def write_csv(records, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])


def write_json(records, fh) -> None:
    rows = [
        {k: (v if math.isfinite(v) else None) for k, v in asdict(r).items()} for r in records
    ]
    json.dump(rows, fh, indent=2)
    fh.write("\n")
