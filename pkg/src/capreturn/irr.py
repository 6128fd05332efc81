"""Internal rates of return on growth cycles and cash-flow schedules.

Two routes are provided. For an investment-free growth cycle the IRR has
a closed form: the discount rate that zeroes the discounted terminal
gain is exactly the time-average spot rate over the rotation
(:func:`growth_cycle_irr`). For an arbitrary dated cash-flow schedule,
discounting each event continuously and substituting
``x = exp(-rate * step)`` turns the zero-value condition into a
polynomial in ``x``, whose full complex root set is found by
simultaneous iteration (:func:`general_irr`). Most of those roots carry
no financial meaning, but all of them exist and all are reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DiscretizationError,
    NoRootError,
    RootConvergenceError,
    UnsupportedScheduleError,
)
from .growth import GrowthScenario
from .quadrature import DEFAULT_INTERVALS

#: Event times must sit on the common grid within this many years.
TIME_TOLERANCE = 1e-9

#: Reported real roots must satisfy |sum(C_k * exp(-rate*t_k))| below
#: this fraction of sum(|C_k|).
RESIDUAL_TOLERANCE = 1e-8

_MAX_ITERATIONS = 500
_MOVEMENT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CashEvent:
    """Dated cash amount; sign carries direction (outflow negative)."""

    time: float
    amount: float


@dataclass(frozen=True)
class CashFlowSchedule:
    """Dated cash events for cash-basis rate-of-return analysis.

    Needs at least two events with nondecreasing, nonnegative times, and
    both signs present — an all-one-sign schedule has no internal rate of
    return at all, so it is rejected at construction.
    """

    events: tuple[CashEvent, ...]

    def __post_init__(self):
        if len(self.events) < 2:
            raise ValueError("schedule needs at least two events")
        times = [e.time for e in self.events]
        if any(t < 0.0 for t in times):
            raise ValueError("event times must be nonnegative")
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("event times must be nondecreasing")
        amounts = [e.amount for e in self.events]
        if not (any(a > 0.0 for a in amounts) and any(a < 0.0 for a in amounts)):
            raise NoRootError(
                "schedule has no sign change, so no internal rate of return exists"
            )


@dataclass(frozen=True)
class IrrResult:
    """All rates solving the zero-discounted-value condition.

    ``all_real_roots`` holds the real per-year rates in increasing
    order, with ``residuals`` aligned. ``principal_root`` is the real
    root of smallest magnitude (ties to the positive one), or ``None``
    when every root is complex. ``complex_root_count`` counts the
    remaining roots, so real plus complex equals ``degree``, the degree
    of the discretized polynomial after common factors of ``x`` are
    removed. ``base_step`` is the grid step (years) used for the
    substitution ``x = exp(-rate * base_step)``.
    """

    principal_root: float | None
    all_real_roots: tuple[float, ...]
    complex_root_count: int
    residuals: tuple[float, ...]
    base_step: float
    degree: int


def growth_cycle_irr(
    scenario: GrowthScenario,
    rotation_length: float | None = None,
    *,
    intervals: int = DEFAULT_INTERVALS,
) -> float:
    """IRR of an investment-free growth cycle, per year.

    Buying the cycle at its starting capital and selling at its terminal
    capital breaks even under continuous discounting exactly at the
    time-average spot rate, which this returns.

    Raises:
        UnsupportedScheduleError: if the scenario has intermediate
            investment events (convert those to a cash-flow schedule and
            use :func:`general_irr` instead).
    """
    if scenario.investments:
        raise UnsupportedScheduleError(
            "growth-cycle IRR needs an investment-free scenario"
        )
    tau = scenario.rotation_length if rotation_length is None else rotation_length
    return scenario.path.time_average_rate(tau, intervals=intervals)


def _common_step(times: list[float]) -> float:
    """Greatest step placing every time on an integer grid point."""
    if not times:
        raise NoRootError("all events occur at a single instant")
    step = 0.0
    for t in times:
        t = abs(t)
        while t > TIME_TOLERANCE:
            step, t = t, math.fmod(step, t)
    if step <= TIME_TOLERANCE:
        # Euclid collapsed without reaching a usable step: the times are
        # incommensurable at the stated tolerance.
        raise DiscretizationError(
            "event times share no common grid step within tolerance"
        )
    for t in times:
        if abs(t - round(t / step) * step) > TIME_TOLERANCE:
            raise DiscretizationError(
                f"event time {t:g} is not a multiple of the base step {step:g}"
            )
    return step


def _durand_kerner(coeffs: np.ndarray, seed: int) -> np.ndarray:
    """All complex roots of a polynomial by simultaneous iteration.

    ``coeffs`` are ascending powers. Starts from a randomized ring
    (deterministic via ``seed``) and updates every root estimate at once;
    stops when estimates stop moving or the polynomial values are at
    rounding level relative to their own magnitude scale.
    """
    monic = np.asarray(coeffs, dtype=complex) / coeffs[-1]
    degree = len(monic) - 1
    descending = monic[::-1]
    magnitude_scale = np.abs(descending)

    rng = np.random.default_rng(seed)
    radius = 1.0 + float(np.max(np.abs(monic[:-1])))
    angles = 2.0 * np.pi * (np.arange(degree) + rng.uniform(0.1, 0.9)) / degree
    roots = radius * np.exp(1j * angles)

    for _ in range(_MAX_ITERATIONS):
        values = np.polyval(descending, roots)
        scale = np.polyval(magnitude_scale, np.abs(roots))
        if np.all(np.abs(values) <= 1e-14 * scale):
            return roots
        diffs = roots[:, None] - roots[None, :]
        np.fill_diagonal(diffs, 1.0)
        steps = values / np.prod(diffs, axis=1)
        roots = roots - steps
        if float(np.max(np.abs(steps))) < _MOVEMENT_TOLERANCE:
            return roots
    worst = float(np.max(np.abs(np.polyval(descending, roots))))
    raise RootConvergenceError("root iteration did not converge", worst)


def _polish_rate(times: np.ndarray, amounts: np.ndarray, rate: float) -> tuple[float, float]:
    """Newton-refine a candidate rate on the discounted-value function;
    returns the refined rate and its absolute residual."""
    for _ in range(50):
        weights = amounts * np.exp(-rate * times)
        value = float(np.sum(weights))
        slope = float(np.sum(-times * weights))
        if slope == 0.0:
            break
        step = value / slope
        rate -= step
        if abs(step) <= 1e-16 * max(1.0, abs(rate)):
            break
    residual = abs(float(np.sum(amounts * np.exp(-rate * times))))
    return rate, residual


def general_irr(
    schedule: CashFlowSchedule,
    *,
    max_degree: int = 4096,
    seed: int = 0,
) -> IrrResult:
    """Every rate zeroing the schedule's discounted value.

    The event times are placed on their greatest common grid step, the
    discounted-value condition becomes a polynomial via
    ``x = exp(-rate * step)``, and all of its complex roots are located
    simultaneously. Real positive ``x`` roots map back to real per-year
    rates; each is Newton-polished on the original exponential form and
    reported with its residual.

    Raises:
        DiscretizationError: times share no common step within tolerance,
            or the resulting polynomial degree exceeds ``max_degree``.
        NoRootError: the schedule degenerates (single instant, or all
            amounts cancel) and no rate is defined.
        RootConvergenceError: the simultaneous iteration stalled.
    """
    times = np.array([e.time for e in schedule.events], dtype=float)
    amounts = np.array([e.amount for e in schedule.events], dtype=float)

    step = _common_step([t for t in times if t > TIME_TOLERANCE])
    exponents = np.rint(times / step).astype(int)
    degree_span = int(exponents.max())
    if degree_span > max_degree:
        raise DiscretizationError(
            f"discretized polynomial degree {degree_span} exceeds {max_degree}; "
            "event times are too finely incommensurate"
        )

    coeffs = np.zeros(degree_span + 1)
    np.add.at(coeffs, exponents, amounts)
    nonzero = np.nonzero(coeffs)[0]
    if len(nonzero) == 0:
        raise NoRootError("all amounts cancel; every rate is a root")
    coeffs = coeffs[nonzero[0] : nonzero[-1] + 1]  # factor out powers of x
    degree = len(coeffs) - 1
    if degree == 0:
        raise NoRootError("events collapse to a single grid instant")

    roots = _durand_kerner(coeffs, seed)

    amount_scale = float(np.sum(np.abs(amounts)))
    rates: list[float] = []
    residuals: list[float] = []
    for x in roots:
        if abs(x.imag) > 1e-8 * (1.0 + abs(x)) or x.real <= 0.0:
            continue
        rate, residual = _polish_rate(times, amounts, -math.log(x.real) / step)
        if residual < RESIDUAL_TOLERANCE * amount_scale:
            rates.append(rate)
            residuals.append(residual)

    order = sorted(range(len(rates)), key=lambda i: rates[i])
    rates = [rates[i] for i in order]
    residuals = [residuals[i] for i in order]
    principal = None
    if rates:
        principal = min(rates, key=lambda r: (abs(r), 0 if r > 0 else 1))
    return IrrResult(
        principal_root=principal,
        all_real_roots=tuple(rates),
        complex_root_count=degree - len(rates),
        residuals=tuple(residuals),
        base_step=step,
        degree=degree,
    )
