"""Randomized-term estimator, Hoeffding p-value bounds, and sample planning.

The estimator averages outcomes of L uniformly sampled terms (with
replacement), each measured K times, and rescales by the term count M.  The
probability that a local model produces an excess t over the classical bound
is at most exp(-t^2 K L / 2 M^2), which inverts into the sample-size rules
used by the planners.  Confidence levels are quoted as two-sided Gaussian
k-sigma masses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, NoViolationMarginError

__all__ = [
    "SamplingPlan",
    "EstimateResult",
    "sigma_to_confidence",
    "confidence_to_sigma",
    "required_L",
    "required_K",
    "required_L_from_alpha",
    "sample_indices",
    "estimate",
    "p_value_bound",
    "sigma_equivalent",
]

_NORMAL = NormalDist()
_MIN_P = 1e-300  # reporting floor; smaller bounds underflow double precision


def sigma_to_confidence(k_sigma: float) -> float:
    """Two-sided Gaussian mass within k standard deviations."""
    if k_sigma <= 0:
        raise InvalidInputError("k_sigma must be positive")
    return math.erf(k_sigma / math.sqrt(2.0))


def confidence_to_sigma(gamma: float) -> float:
    """Inverse of sigma_to_confidence."""
    if not 0.0 < gamma < 1.0:
        raise InvalidInputError("gamma must be in (0, 1)")
    return _NORMAL.inv_cdf((1.0 + gamma) / 2.0)


def _ln_one_minus(gamma: float) -> float:
    if not 0.0 < gamma < 1.0:
        raise InvalidInputError("gamma must be in (0, 1)")
    return math.log1p(-gamma)


def required_L(M: int, t: float, gamma: float) -> int:
    """Sampled-term count needed for margin t at confidence gamma."""
    if t <= 0:
        raise NoViolationMarginError("no violation margin; cannot plan")
    if t > 2 * M:
        raise InvalidInputError("margin exceeds the operator range 2M")
    ratio = float(M) / float(t)
    return max(1, math.ceil(-2.0 * ratio * ratio * _ln_one_minus(gamma)))


def required_K(L: int, M: int, t: float, gamma: float) -> int:
    """Repetitions per term needed when only L terms are sampled."""
    if L < 1:
        raise InvalidInputError("L must be at least 1")
    needed = required_L(M, t, gamma)
    return max(1, -(-needed // L))


def required_L_from_alpha(alpha: float, D: float, gamma: float) -> int:
    """Scale-free planning form: margin expressed as alpha - 1/D."""
    margin = alpha - 1.0 / float(D)
    if margin <= 0:
        raise NoViolationMarginError("target below the violation threshold 1/D")
    return max(1, math.ceil(-2.0 * _ln_one_minus(gamma) / (margin * margin)))


def sample_indices(M: int, L: int, rng: np.random.Generator) -> list[int]:
    """L i.i.d. uniform term indices in [0, M), with replacement."""
    if M < 1 or L < 1:
        raise InvalidInputError("M and L must be positive")
    if M <= (1 << 62):
        return [int(i) for i in rng.integers(0, M, size=L)]
    # M exceeds the integer range of the generator: assemble 32-bit words
    # and reject draws >= M (never triggers for the power-of-two M here).
    bits = M.bit_length() if M & (M - 1) else (M - 1).bit_length()
    words = -(-bits // 32)
    out: list[int] = []
    while len(out) < L:
        value = 0
        for w in range(words):
            value |= int(rng.integers(0, 1 << 32)) << (32 * w)
        value &= (1 << bits) - 1
        if value < M:
            out.append(value)
    return out


@dataclass(frozen=True)
class SamplingPlan:
    """A resolved measurement budget for one experiment."""

    M: int
    L: int
    K: int
    gamma: float
    t: float


@dataclass(frozen=True)
class EstimateResult:
    """Estimator value plus the data that produced it."""

    estimate: float
    outcomes: tuple[int, ...]
    sampled_indices: tuple[int, ...] | None = None
    p_value_bound: float | None = None
    sigma_equivalent: float | None = None


def estimate(
    M: int,
    K: int,
    outcomes: Sequence[int],
    sampled_indices: Sequence[int] | None = None,
) -> EstimateResult:
    """Estimator (M / K L) * sum of +-1 outcomes; outcomes are term-major (L groups of K)."""
    flat = tuple(int(b) for b in outcomes)
    if not flat:
        raise InvalidInputError("no outcomes")
    if any(b not in (-1, 1) for b in flat):
        raise InvalidInputError("outcomes must be +-1")
    if K < 1 or len(flat) % K:
        raise InvalidInputError("outcome count is not a multiple of K")
    value = float(M) * sum(flat) / len(flat)
    return EstimateResult(
        estimate=value,
        outcomes=flat,
        sampled_indices=tuple(int(i) for i in sampled_indices) if sampled_indices is not None else None,
    )


def p_value_bound(estimate_value: float, C: float, M: int, K: int, L: int) -> float:
    """Hoeffding bound on the p value of an observed estimate against C."""
    t = estimate_value - float(C)
    if t <= 0:
        return 1.0
    ratio = t / float(M)
    return max(math.exp(-0.5 * ratio * ratio * K * L), _MIN_P)


def sigma_equivalent(p: float) -> float:
    """Two-sided Gaussian sigma level matching confidence 1 - p."""
    if not 0.0 < p <= 1.0:
        raise InvalidInputError("p must be in (0, 1]")
    # symmetric-tail form stays accurate where 1 - p/2 would round to 1.0
    return -_NORMAL.inv_cdf(max(p, _MIN_P) / 2.0)
