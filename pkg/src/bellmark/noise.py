"""Depolarization-model predictions, error-rate presets, and scaling fits.

The model treats any gate or readout error as total depolarization, so the
prepared state is ``alpha |G><G| + (1 - alpha) I / 2^n`` with alpha the
probability that no error occurred:
``alpha = (1 - p1)^N1 * (1 - p2)^N2 * (1 - pr)^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import bell_bounds
from .circuits import GateCounts, gate_counts, prep_ghz_line, prep_lc_path
from .errors import InvalidInputError, NoViolationMarginError
from .estimation import required_L_from_alpha

__all__ = [
    "NoiseParams",
    "NOISE_PRESETS",
    "ScalingModel",
    "ViolationPrediction",
    "alpha_depolarization",
    "predict_required_L",
    "violation_window_ghz",
    "fit_scaling",
    "extrapolate_L",
]


@dataclass(frozen=True)
class NoiseParams:
    """Average error rates: single-qubit gates, two-qubit gates, readout."""

    p1: float
    p2: float
    pr: float

    def __post_init__(self) -> None:
        for name, value in (("p1", self.p1), ("p2", self.p2), ("pr", self.pr)):
            if not 0.0 <= value <= 1.0:
                raise InvalidInputError(f"{name} must be a probability, got {value}")

    @property
    def is_zero(self) -> bool:
        return self.p1 == self.p2 == self.pr == 0.0


# Published average rates for the two processors used as anchors.
NOISE_PRESETS = {
    "ibm-eagle": NoiseParams(4.322e-4, 1.019e-2, 2.434e-2),
    "sycamore-isolated": NoiseParams(1.5e-3, 3.6e-3, 3.1e-2),
    "sycamore-simultaneous": NoiseParams(1.6e-3, 6.2e-3, 3.8e-2),
}


def alpha_depolarization(counts: GateCounts, n_measured: int, params: NoiseParams) -> float:
    """Probability that a preparation plus readout is entirely error free."""
    if n_measured < 0:
        raise InvalidInputError("n_measured must be nonnegative")
    return (
        (1.0 - params.p1) ** counts.n1
        * (1.0 - params.p2) ** counts.n2
        * (1.0 - params.pr) ** n_measured
    )


@dataclass(frozen=True)
class ViolationPrediction:
    """Depolarization-model prediction for one (family, n, rates) choice."""

    family: str
    n: int
    alpha: float
    Q: int
    C: int
    D: int
    L: int

    @property
    def violation_fraction(self) -> float:
        """Predicted Bell value as a multiple of the classical bound."""
        return self.alpha * self.D


def _reference_counts(family: str, n: int) -> GateCounts:
    if family == "ghz":
        return gate_counts(prep_ghz_line(n))
    return gate_counts(prep_lc_path(range(n)))


def predict_required_L(family: str, n: int, params: NoiseParams, gamma: float) -> ViolationPrediction:
    """Compose gate counts -> alpha -> required sample size at confidence gamma."""
    bounds = bell_bounds(family, n)
    alpha = alpha_depolarization(_reference_counts(family, n), n, params)
    if alpha <= 1.0 / bounds.D:
        raise NoViolationMarginError(
            f"predicted alpha {alpha:.3e} at or below threshold 1/D = {1.0 / bounds.D:.3e}"
        )
    L = required_L_from_alpha(alpha, bounds.D, gamma)
    return ViolationPrediction(family, n, alpha, bounds.Q, bounds.C, bounds.D, L)


def violation_window_ghz(a: float) -> int:
    """Largest n for which exp(-a n^2) still beats the GHZ threshold 1/D.

    Uses the even-n bound D = 2^((n-2)/2), the tighter of the two parities.
    """
    if a <= 0:
        raise InvalidInputError("coefficient a must be positive")
    half = math.log(2.0) / (4.0 * a)
    disc = half * half - math.log(2.0) / a
    if disc < 0:
        raise NoViolationMarginError("no violation window for this decay rate")
    return math.floor(half + math.sqrt(disc))


@dataclass(frozen=True)
class ScalingModel:
    """Fitted decay of the violation fraction: alpha(n) = exp(-a n^2 - b n + c)."""

    form: str  # "log-linear" (a = 0) or "log-quadratic"
    a: float
    b: float
    c: float
    residuals: tuple[float, ...] = ()

    def alpha(self, n: float) -> float:
        return math.exp(-self.a * n * n - self.b * n + self.c)


def fit_scaling(points, form: str) -> ScalingModel:
    """Ordinary least squares on ln(alpha) over (n, alpha) points."""
    if form not in ("log-linear", "log-quadratic"):
        raise InvalidInputError(f"unknown form {form!r}")
    degree = 1 if form == "log-linear" else 2
    ns = np.asarray([float(n) for n, _ in points])
    alphas = np.asarray([float(a) for _, a in points])
    if len(ns) < degree + 1:
        raise InvalidInputError(f"{form} fit needs at least {degree + 1} points")
    if np.any(alphas <= 0):
        raise InvalidInputError("all alpha values must be positive for a log-domain fit")
    coeffs = np.polyfit(ns, np.log(alphas), degree)
    if degree == 1:
        model = ScalingModel("log-linear", 0.0, -float(coeffs[0]), float(coeffs[1]))
    else:
        model = ScalingModel(
            "log-quadratic", -float(coeffs[0]), -float(coeffs[1]), float(coeffs[2])
        )
    residuals = tuple(
        float(math.log(alpha) - math.log(model.alpha(n))) for n, alpha in zip(ns, alphas)
    )
    return ScalingModel(model.form, model.a, model.b, model.c, residuals)


def extrapolate_L(model: ScalingModel, n: int, D: int, gamma: float) -> int:
    """Sample size needed at size n if the fitted decay continues."""
    alpha = model.alpha(n)
    if alpha <= 1.0 / float(D):
        raise NoViolationMarginError(
            f"extrapolated alpha {alpha:.3e} at or below threshold 1/D"
        )
    return required_L_from_alpha(alpha, D, gamma)
