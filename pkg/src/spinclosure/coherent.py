"""Coherent-state statistics: many equally prepared spins as a classical field.

The projection statistics of N spins prepared at polar angle theta follow a
binomial law over outcomes m in {-N/2, ..., N/2}. All summary values here
are the exact binomial ones: mean (N/2) cos(theta) and standard deviation
(sqrt(N)/2) |sin(theta)|. Log-space binomial coefficients keep the pmf
stable up to N ~ 10^6.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .states import BlochVector, _coerce, _require_unit


@dataclass(frozen=True)
class CoherentSpec:
    """N spins equally prepared along a unit direction, with per-spin couplings."""

    direction: BlochVector
    count: int
    theta: float = 0.0
    couplings: np.ndarray | None = None

    def __init__(self, direction, count: int, theta: float = 0.0, couplings=None):
        d = _coerce(direction)
        _require_unit(d, "coherent direction")
        if count < 1:
            raise ValueError("count must be >= 1")
        if couplings is None:
            couplings = np.ones(count)
        couplings = np.asarray(couplings, dtype=float)
        if couplings.shape != (count,):
            raise ValueError("couplings must have one entry per constituent")
        couplings.setflags(write=False)
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "count", int(count))
        object.__setattr__(self, "theta", float(theta))
        object.__setattr__(self, "couplings", couplings)

    def bath(self) -> list[BlochVector]:
        return [self.direction] * self.count


@dataclass(frozen=True)
class CoherentStatistics:
    """Outcome distribution of a coherent state: outcomes, probabilities, mean, std."""

    outcomes: np.ndarray
    probabilities: np.ndarray
    mean: float
    std: float

    def __post_init__(self):
        if self.outcomes.shape != self.probabilities.shape:
            raise ValueError("outcomes and probabilities must align")
        if np.any(self.probabilities < -1e-15):
            raise ValueError("negative probability in pmf")
        if abs(self.probabilities.sum() - 1.0) > 1e-12:
            raise ValueError("pmf does not sum to 1")

    @property
    def pmf(self) -> list[tuple[float, float]]:
        return list(zip(self.outcomes.tolist(), self.probabilities.tolist()))


def coherent_overlap(n1, n2, N: int) -> float:
    """Overlap ((1 + n1.n2)/2)^N between two coherent states of N spins."""
    v1, v2 = _coerce(n1), _coerce(n2)
    if v1.dim != v2.dim:
        raise ValueError(f"dimension mismatch: {v1.dim} vs {v2.dim}")
    _require_unit(v1, "first direction")
    _require_unit(v2, "second direction")
    if N < 1:
        raise ValueError("N must be >= 1")
    base = 0.5 * (1.0 + float(v1.components @ v2.components))
    if base <= 0.0:
        return 0.0
    return float(base ** N)


def coherent_outcome_distribution(theta: float, N: int) -> CoherentStatistics:
    """Binomial pmf of projection outcomes m = k - N/2, k ~ Binom(N, cos^2(theta/2))."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if not 0.0 <= theta <= np.pi:
        raise ValueError("theta must lie in [0, pi]")
    k = np.arange(N + 1)
    outcomes = k - N / 2.0
    c2 = np.cos(theta / 2.0) ** 2
    s2 = np.sin(theta / 2.0) ** 2
    if s2 == 0.0:  # theta = 0: all spins up
        probs = np.zeros(N + 1)
        probs[N] = 1.0
    elif c2 == 0.0:  # theta = pi: all spins down
        probs = np.zeros(N + 1)
        probs[0] = 1.0
    else:
        logp = (gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1)
                + k * np.log(c2) + (N - k) * np.log(s2))
        probs = np.exp(logp)
        probs /= probs.sum()
    mean = 0.5 * N * np.cos(theta)
    std = 0.5 * np.sqrt(N) * abs(np.sin(theta))
    return CoherentStatistics(outcomes, probs, float(mean), float(std))


def coarse_grain(stats: CoherentStatistics, slot_size: int) -> CoherentStatistics:
    """Merge consecutive outcomes into slots of slot_size, summing probabilities.

    Slots are filled from the lowest outcome; the slot outcome is the plain
    average of its members. Normalization is preserved exactly.
    """
    if slot_size < 1:
        raise ValueError("slot_size must be >= 1")
    if slot_size == 1:
        return CoherentStatistics(stats.outcomes.copy(), stats.probabilities.copy(),
                                  stats.mean, stats.std)
    n = stats.outcomes.shape[0]
    n_slots = (n + slot_size - 1) // slot_size
    outcomes = np.empty(n_slots)
    probs = np.empty(n_slots)
    for s in range(n_slots):
        sl = slice(s * slot_size, min((s + 1) * slot_size, n))
        outcomes[s] = stats.outcomes[sl].mean()
        probs[s] = stats.probabilities[sl].sum()
    mean = float(outcomes @ probs)
    var = float(((outcomes - mean) ** 2) @ probs)
    return CoherentStatistics(outcomes, probs, mean, float(np.sqrt(max(var, 0.0))))
