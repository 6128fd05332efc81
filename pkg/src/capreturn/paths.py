"""Spot return-rate paths over a growth cycle.

A path gives the instantaneous relative growth rate of capital, per
year, as a function of time. Four variants are provided:

* :class:`ConstantPath` — a flat rate, defined for all times;
* :class:`SinSquaredPath` — a smooth single-hump cycle shape, lowest at
  the cycle boundaries and peaking mid-cycle;
* :class:`TabulatedPath` — piecewise-linear interpolation between knots,
  with no extrapolation;
* :class:`ReversedPath` — another path played backwards from a horizon.

Paths are frozen dataclasses: immutable after construction, safe to
evaluate concurrently, and usable as dict keys. Negative rates are
allowed everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_INTERVALS, simpson

# Slack applied to domain checks so grid endpoints produced by float
# arithmetic (e.g. linspace hitting the upper bound) are not rejected.
_DOMAIN_SLACK = 1e-9


class ReturnPath:
    """Base class for spot return-rate paths."""

    def domain(self) -> tuple[float, float]:
        """Closed interval of times where the path is defined."""
        raise NotImplementedError

    def _rates(self, ts: np.ndarray) -> np.ndarray:
        """Vectorized evaluation without domain checks."""
        raise NotImplementedError

    def _require_in_domain(self, ts: np.ndarray) -> None:
        lo, hi = self.domain()
        scale = max(
            1.0,
            abs(lo) if math.isfinite(lo) else 1.0,
            abs(hi) if math.isfinite(hi) else 1.0,
        )
        slack = _DOMAIN_SLACK * scale
        if np.any(ts < lo - slack) or np.any(ts > hi + slack):
            raise DomainError(
                f"time outside path domain [{lo:g}, {hi:g}]: "
                f"{float(np.min(ts)):g}..{float(np.max(ts)):g}"
            )

    def evaluate(self, t):
        """Spot return rate at time ``t`` (scalar or ndarray), per year.

        Raises:
            DomainError: if any requested time lies outside the domain.
        """
        ts = np.asarray(t, dtype=float)
        self._require_in_domain(ts)
        lo, hi = self.domain()
        clipped = np.clip(ts, lo, hi)
        out = self._rates(clipped)
        if ts.ndim == 0:
            return float(out)
        return out

    def cumulative_return(self, t: float, *, intervals: int = DEFAULT_INTERVALS) -> float:
        """Integral of the spot rate from time 0 to ``t`` (dimensionless).

        Computed by composite Simpson quadrature on a uniform grid of
        ``intervals`` subintervals spanning ``[0, t]``.
        """
        ts = np.asarray([0.0, t], dtype=float)
        self._require_in_domain(ts)
        if t < 0.0:
            raise DomainError("cumulative return runs forward from time 0")
        lo, hi = self.domain()
        upper = min(float(t), hi)  # strip domain slack before integrating

        def f(xs: np.ndarray) -> np.ndarray:
            return self._rates(np.clip(xs, lo, hi))

        return simpson(f, 0.0, upper, intervals)

    def time_average_rate(self, horizon: float, *, intervals: int = DEFAULT_INTERVALS) -> float:
        """Average spot rate over ``[0, horizon]``, per year.

        Raises:
            ValueError: if ``horizon`` is not strictly positive.
            DomainError: if ``horizon`` exceeds the path domain.
        """
        if horizon <= 0.0:
            raise ValueError("averaging horizon must be > 0")
        return self.cumulative_return(horizon, intervals=intervals) / horizon


@dataclass(frozen=True)
class ConstantPath(ReturnPath):
    """Flat spot rate, defined for every time."""

    rate: float

    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def _rates(self, ts: np.ndarray) -> np.ndarray:
        return np.full_like(ts, self.rate, dtype=float)


@dataclass(frozen=True)
class SinSquaredPath(ReturnPath):
    """Single-hump cycle shape with a pinned full-cycle average.

    The rate is ``mean_rate * (shape + 2*(1-shape)*sin^2(pi*t/full_cycle))``.
    The squared-sine term averages to 1/2 over a full cycle, so the factor
    of 2 makes the full-cycle time average equal ``mean_rate`` exactly for
    any ``shape``. ``shape`` = 1 collapses to a constant; ``shape`` = 0
    puts the whole cycle's return into the mid-cycle hump.

    Defined on ``[0, full_cycle]`` only.
    """

    mean_rate: float
    shape: float
    full_cycle: float

    def __post_init__(self):
        if self.full_cycle <= 0.0:
            raise ValueError("full_cycle must be > 0")

    def domain(self) -> tuple[float, float]:
        return (0.0, self.full_cycle)

    def _rates(self, ts: np.ndarray) -> np.ndarray:
        hump = np.sin(np.pi * ts / self.full_cycle) ** 2
        return self.mean_rate * (self.shape + 2.0 * (1.0 - self.shape) * hump)


@dataclass(frozen=True)
class TabulatedPath(ReturnPath):
    """Piecewise-linear rate through ``(time, rate)`` knots.

    Knot times must be strictly increasing; evaluation outside the knot
    range is an error (no extrapolation).
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.knots) < 2:
            raise ValueError("tabulated path needs at least two knots")
        times = [t for t, _ in self.knots]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("knot times must be strictly increasing")

    def domain(self) -> tuple[float, float]:
        return (self.knots[0][0], self.knots[-1][0])

    def _rates(self, ts: np.ndarray) -> np.ndarray:
        times = np.array([t for t, _ in self.knots])
        rates = np.array([r for _, r in self.knots])
        return np.interp(ts, times, rates)


@dataclass(frozen=True)
class ReversedPath(ReturnPath):
    """Another path played backwards: rate at ``t`` is the inner path's
    rate at ``horizon - t``."""

    inner: ReturnPath
    horizon: float

    def domain(self) -> tuple[float, float]:
        lo, hi = self.inner.domain()
        return (self.horizon - hi, self.horizon - lo)

    def _rates(self, ts: np.ndarray) -> np.ndarray:
        ilo, ihi = self.inner.domain()
        return self.inner._rates(np.clip(self.horizon - ts, ilo, ihi))
