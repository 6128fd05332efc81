"""Capital trajectories and expected return on capital over one rotation.

Capital compounds continuously at the spot rate between discrete
investment or divestment events, where it jumps by the event amount:
``K(t) = K(t_k) * exp(R(t) - R(t_k))`` on each event-free stretch, with
``R`` the cumulative return of the path. Expected values weight time
uniformly over the rotation.

Profit is recognized on an accrual basis: growth counts as it occurs,
and investment events are not profit themselves — they only change the
capital base that later growth compounds on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCapitalError, DomainError
from .paths import ReturnPath
from .quadrature import (
    DEFAULT_INTERVALS,
    _even_intervals,
    cumulative_simpson_nodes,
    simpson_nodes,
)


@dataclass(frozen=True)
class InvestmentEvent:
    """Dated capital injection (positive) or withdrawal (negative)."""

    time: float
    amount: float


@dataclass(frozen=True)
class GrowthScenario:
    """One production site's rotation: starting capital, rotation length,
    spot-rate path, and optional intermediate investment events.

    Event times must be strictly inside the rotation and strictly
    increasing. The rotation must fit inside the path's domain.
    """

    initial_capital: float
    rotation_length: float
    path: ReturnPath
    investments: tuple[InvestmentEvent, ...] = ()

    def __post_init__(self):
        if self.initial_capital <= 0.0:
            raise ValueError("initial_capital must be > 0")
        if self.rotation_length <= 0.0:
            raise ValueError("rotation_length must be > 0")
        lo, hi = self.path.domain()
        if 0.0 < lo or self.rotation_length > hi * (1.0 + 1e-12):
            raise DomainError(
                f"rotation [0, {self.rotation_length:g}] exceeds path domain "
                f"[{lo:g}, {hi:g}]"
            )
        times = [e.time for e in self.investments]
        if any(not 0.0 < t < self.rotation_length for t in times):
            raise ValueError("event times must lie strictly inside the rotation")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("event times must be strictly increasing")


@dataclass(frozen=True)
class ExpectedValues:
    """Rotation-averaged profit rate, capitalization, and their ratio.

    ``rroc`` is ``profit_rate / capitalization`` by construction.
    """

    profit_rate: float
    capitalization: float
    rroc: float


def with_rotation(scenario: GrowthScenario, rotation_length: float) -> GrowthScenario:
    """Rescope a scenario to a different rotation length.

    Events at or beyond the new terminal time are dropped (the terminal
    divestment is never an intermediate event).
    """
    kept = tuple(e for e in scenario.investments if e.time < rotation_length)
    return GrowthScenario(
        initial_capital=scenario.initial_capital,
        rotation_length=rotation_length,
        path=scenario.path,
        investments=kept,
    )


def _segments(
    scenario: GrowthScenario,
    breakpoints: tuple[float, ...],
    intervals: int,
) -> list[tuple[float, np.ndarray, np.ndarray, np.ndarray]]:
    """Node grids for each event-free stretch of the rotation.

    ``breakpoints`` must cover ``[0, rotation_length]`` and include every
    event time; extra cut points (e.g. density knots) are allowed. Returns
    one ``(step, times, rates, capital)`` tuple per stretch. Capital is
    continuous except across event boundaries, where the event amount is
    added before the next stretch starts.
    """
    tau = scenario.rotation_length
    cuts = sorted({0.0, tau, *breakpoints, *(e.time for e in scenario.investments)})
    jump_at = {e.time: e.amount for e in scenario.investments}

    out = []
    return_at_start = 0.0
    # K(t) = scaled_base * exp(R(t)); events shift scaled_base by the
    # event amount discounted back to time 0.
    scaled_base = scenario.initial_capital
    for a, b in zip(cuts, cuts[1:]):
        if a in jump_at:
            scaled_base += jump_at[a] * math.exp(-return_at_start)
            if scaled_base <= 0.0:
                raise DegenerateCapitalError(
                    f"capital nonpositive just after event at t={a:g}"
                )
        n = max(8, _even_intervals(math.ceil(intervals * (b - a) / tau)))
        ts = np.linspace(a, b, n + 1)
        rates = scenario.path._rates(ts)
        returns = return_at_start + cumulative_simpson_nodes(rates, (b - a) / n)
        out.append(((b - a) / n, ts, rates, scaled_base * np.exp(returns)))
        return_at_start = float(returns[-1])
    return out


def capital_at(
    scenario: GrowthScenario, t: float, *, intervals: int = DEFAULT_INTERVALS
) -> float:
    """Capital at time ``t`` within the rotation (currency).

    At an event time the post-jump value is returned (the trajectory is
    right-continuous).

    Raises:
        DomainError: if ``t`` is outside ``[0, rotation_length]``.
        DegenerateCapitalError: if capital is nonpositive at or before ``t``.
    """
    if not 0.0 <= t <= scenario.rotation_length:
        raise DomainError(
            f"time {t:g} outside rotation [0, {scenario.rotation_length:g}]"
        )
    cumulative = 0.0
    scaled_base = scenario.initial_capital  # K(t) = scaled_base * exp(R(t))
    prev = 0.0
    for event in scenario.investments:
        if event.time > t:
            break
        cumulative += _span_return(scenario.path, prev, event.time, intervals)
        scaled_base += event.amount * math.exp(-cumulative)
        if scaled_base <= 0.0:
            raise DegenerateCapitalError(
                f"capital nonpositive just after event at t={event.time:g}"
            )
        prev = event.time
    cumulative += _span_return(scenario.path, prev, t, intervals)
    return scaled_base * math.exp(cumulative)


def _span_return(path: ReturnPath, a: float, b: float, intervals: int) -> float:
    """Cumulative return over ``[a, b]`` by Simpson quadrature."""
    if b <= a:
        return 0.0
    lo, hi = path.domain()

    def f(xs: np.ndarray) -> np.ndarray:
        return path._rates(np.clip(xs, lo, hi))

    n = _even_intervals(intervals)
    ts = np.linspace(a, b, n + 1)
    return simpson_nodes(f(ts), (b - a) / n)


def expected_values(
    scenario: GrowthScenario, *, intervals: int = DEFAULT_INTERVALS
) -> ExpectedValues:
    """Expected profit rate, expected capitalization, and their ratio.

    Both expectations integrate over the rotation with uniform time
    weighting: profit rate as the average of ``K(t) * r(t)`` and
    capitalization as the average of ``K(t)``. Integration runs piecewise
    between events so the capital jumps never cross a quadrature panel.
    """
    tau = scenario.rotation_length
    profit = 0.0
    capitalization = 0.0
    for step, _, rates, capital in _segments(scenario, (), intervals):
        profit += simpson_nodes(capital * rates, step)
        capitalization += simpson_nodes(capital, step)
    profit /= tau
    capitalization /= tau
    if capitalization <= 0.0:
        raise DegenerateCapitalError("expected capitalization is nonpositive")
    return ExpectedValues(
        profit_rate=profit,
        capitalization=capitalization,
        rroc=profit / capitalization,
    )


def expected_profit_rate(
    scenario: GrowthScenario, *, intervals: int = DEFAULT_INTERVALS
) -> float:
    """Rotation-average accrual profit rate (currency per year).

    Path-independent for investment-free scenarios: it equals
    ``K(0) * (exp(tau * avg_rate) - 1) / tau`` no matter how the spot
    rate is sequenced within the rotation.
    """
    return expected_values(scenario, intervals=intervals).profit_rate


def expected_capitalization(
    scenario: GrowthScenario, *, intervals: int = DEFAULT_INTERVALS
) -> float:
    """Rotation-average capitalization (currency). Path-dependent:
    front-loaded return paths hold more capital for longer and average
    higher than back-loaded paths with the same overall return."""
    return expected_values(scenario, intervals=intervals).capitalization


def rroc(scenario: GrowthScenario, *, intervals: int = DEFAULT_INTERVALS) -> float:
    """Expected rate of return on capital over the rotation, per year:
    expected profit rate divided by expected capitalization."""
    return expected_values(scenario, intervals=intervals).rroc
