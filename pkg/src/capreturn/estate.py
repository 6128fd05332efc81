"""Facility-level aggregation over production sites at different ages.

An estate runs many sites through the same rotation, staggered in age.
With a stationary age density the facility's expected capitalization is
the age-weighted average of the single-site capital trajectory, and its
return on capital weights each site's spot rate by the capital it
carries — which generally differs from the plain area-average of spot
rates across the estate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCapitalError
from .growth import GrowthScenario, _segments
from .quadrature import DEFAULT_INTERVALS, simpson_nodes


class AgeDensity:
    """Probability density of site ages over the rotation."""

    def support(self, rotation_length: float) -> tuple[float, float]:
        raise NotImplementedError

    def knot_times(self, rotation_length: float) -> tuple[float, ...]:
        """Ages where the density has kinks; integration splits here."""
        raise NotImplementedError

    def density(self, ages: np.ndarray, rotation_length: float) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class UniformAgeDensity(AgeDensity):
    """Every age in the rotation equally likely."""

    def support(self, rotation_length: float) -> tuple[float, float]:
        return (0.0, rotation_length)

    def knot_times(self, rotation_length: float) -> tuple[float, ...]:
        return ()

    def density(self, ages: np.ndarray, rotation_length: float) -> np.ndarray:
        return np.full_like(ages, 1.0 / rotation_length, dtype=float)


@dataclass(frozen=True)
class TabulatedAgeDensity(AgeDensity):
    """Piecewise-linear age density through ``(age, weight)`` knots.

    Weights must be nonnegative with strictly increasing ages and a
    positive total mass; the density is zero outside the knot range.
    Inputs are rescaled so the density integrates to one exactly;
    ``renormalization_factor`` reports the applied scale.
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.knots) < 2:
            raise ValueError("tabulated density needs at least two knots")
        ages = [a for a, _ in self.knots]
        if any(b <= a for a, b in zip(ages, ages[1:])):
            raise ValueError("knot ages must be strictly increasing")
        if any(w < 0.0 for _, w in self.knots):
            raise ValueError("density weights must be nonnegative")
        if self._raw_mass() <= 0.0:
            raise ValueError("density must have positive total mass")

    def _raw_mass(self) -> float:
        ages = np.array([a for a, _ in self.knots])
        weights = np.array([w for _, w in self.knots])
        return float(np.trapezoid(weights, ages))

    @property
    def renormalization_factor(self) -> float:
        """Scale applied to the raw weights so the density integrates to 1."""
        return 1.0 / self._raw_mass()

    def support(self, rotation_length: float) -> tuple[float, float]:
        return (self.knots[0][0], self.knots[-1][0])

    def knot_times(self, rotation_length: float) -> tuple[float, ...]:
        return tuple(a for a, _ in self.knots)

    def density(self, ages: np.ndarray, rotation_length: float) -> np.ndarray:
        xs = np.array([a for a, _ in self.knots])
        ws = np.array([w for _, w in self.knots]) * self.renormalization_factor
        return np.interp(ages, xs, ws, left=0.0, right=0.0)


@dataclass(frozen=True)
class EstateSpec:
    """A shared per-site rotation plus the facility's age density."""

    site_scenario: GrowthScenario
    ages: AgeDensity

    def __post_init__(self):
        lo, hi = self.ages.support(self.site_scenario.rotation_length)
        tau = self.site_scenario.rotation_length
        if lo < -1e-9 or hi > tau * (1.0 + 1e-12):
            raise ValueError(
                f"age density support [{lo:g}, {hi:g}] exceeds the rotation "
                f"[0, {tau:g}]"
            )


def _weighted_integrals(
    estate: EstateSpec, intervals: int
) -> tuple[float, float, float]:
    """Age-density-weighted integrals of capital, capital*rate, and rate."""
    scenario = estate.site_scenario
    tau = scenario.rotation_length
    lo, hi = estate.ages.support(tau)
    knots = tuple(a for a in estate.ages.knot_times(tau) if lo < a < hi)
    capital_mass = 0.0
    profit_mass = 0.0
    rate_mass = 0.0
    for step, ts, rates, capital in _segments(scenario, (lo, hi, *knots), intervals):
        if ts[-1] <= lo or ts[0] >= hi:
            continue  # outside the density support; weight is zero there
        weights = estate.ages.density(ts, tau)
        capital_mass += simpson_nodes(capital * weights, step)
        profit_mass += simpson_nodes(capital * rates * weights, step)
        rate_mass += simpson_nodes(rates * weights, step)
    return capital_mass, profit_mass, rate_mass


def estate_capitalization(
    estate: EstateSpec, *, intervals: int = DEFAULT_INTERVALS
) -> float:
    """Expected capitalization across the facility (currency): the
    single-site capital trajectory averaged over the age density."""
    capital_mass, _, _ = _weighted_integrals(estate, intervals)
    return capital_mass


def estate_rroc(estate: EstateSpec, *, intervals: int = DEFAULT_INTERVALS) -> float:
    """Facility return rate on capital, per year: each age's spot rate
    weighted by the capital standing at that age.

    Raises:
        DegenerateCapitalError: the age-weighted capitalization is
            nonpositive.
    """
    capital_mass, profit_mass, _ = _weighted_integrals(estate, intervals)
    if capital_mass <= 0.0:
        raise DegenerateCapitalError("estate capitalization is nonpositive")
    return profit_mass / capital_mass


def area_average_rate(
    estate: EstateSpec, *, intervals: int = DEFAULT_INTERVALS
) -> float:
    """Unweighted average of spot rates over the age density, per year.

    Under a uniform age density this equals the time-average spot rate
    over the rotation — the growth-cycle IRR — which is why that IRR
    misstates the facility's capital return whenever capital varies
    with age.
    """
    _, _, rate_mass = _weighted_integrals(estate, intervals)
    return rate_mass
