"""Random distribution-function process driven by a noise-perturbed hazard.

Adding the alternating noise V(t) to a baseline hazard r(t) turns the
lifetime CDF into the random process

    X(t) = 1 - survival(t) * exp(-W(t)),

where W is the integrated noise. For each t the law of X(t) has two atoms
of mass exp(-lam*t)/2 on the endpoints of the almost-sure band
[a(t), b(t)] (the CDFs with hazards r -+ c) and a smooth density inside.
The dominance condition r(t) > c makes every sample path a bona fide
distribution function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .hazard import HazardSpec, default_dominance_grid, validate_dominance
from .telegraph import (
    TelegraphParams,
    integrate_path,
    sample_path,
    scaled_mgf,
    w_atom_prob,
    w_cdf,
)
from .special import bessel_i0e, bessel_i1e_over_x

# Past this excess cumulative hazard, exp(-nu) underflows: treat nu as infinite.
_NU_CAP = 700.0


@dataclass(frozen=True)
class SupportBand:
    """Almost-sure envelope of X(t) at one time point.

    ``nu`` is the total excess cumulative hazard of the owning model; the
    band width converges to exp(-nu) at the end of the support.
    """

    t: float
    a: float
    b: float
    width: float
    nu: float


@dataclass(frozen=True)
class PerturbedModel:
    """A baseline hazard paired with the alternating-noise parameters.

    Construction verifies the dominance condition r > c on a dense grid
    (uniform plus the hazard's own critical points); pass ``validate=False``
    only when the caller has already established dominance.
    """

    hazard: HazardSpec
    noise: TelegraphParams
    validate: bool = True

    def __post_init__(self):
        if self.validate:
            grid = default_dominance_grid(self.hazard)
            check = validate_dominance(self.hazard, self.noise.c, grid)
            if not check.ok:
                raise ValueError(
                    f"dominance r(t) > c fails at t = {check.violating_t:.6g}"
                    f" (c = {self.noise.c})"
                )

    # -- band geometry ------------------------------------------------------

    @cached_property
    def total_excess_hazard(self) -> float:
        """nu = integral of (r - c) over the whole support; may be inf.

        Evaluated through the exact cumulative hazard, nu(T) = R(T) - c*T,
        by doubling T until the value either exceeds the underflow cap or
        stops changing. A finite support forces nu = inf.
        """
        if math.isfinite(self.hazard.support_end):
            return math.inf
        c = self.noise.c
        horizon = 1.0
        value = self.hazard.cumulative(horizon) - c * horizon
        stable = 0
        for _ in range(2100):
            horizon *= 2.0
            nxt = self.hazard.cumulative(horizon) - c * horizon
            if not math.isfinite(nxt) or nxt > _NU_CAP:
                return math.inf
            stable = stable + 1 if abs(nxt - value) <= 1e-12 * max(1.0, abs(nxt)) else 0
            value = nxt
            if stable >= 2:
                return value
        return math.inf

    def terminal_band_width(self) -> float:
        """Limit of the band width at the end of the support: exp(-nu)."""
        nu = self.total_excess_hazard
        return 0.0 if math.isinf(nu) else math.exp(-nu)

    def band(self, t: float) -> SupportBand:
        """Endpoints a(t) <= b(t) of the almost-sure band and its width."""
        cum = self.hazard.cumulative(t)  # also validates the domain
        ct = self.noise.c * float(t)
        a = -math.expm1(ct - cum)
        b = -math.expm1(-(ct + cum))
        width = math.exp(ct - cum) - math.exp(-(ct + cum))
        return SupportBand(float(t), a, b, width, self.total_excess_hazard)

    def band_width_nondecreasing(self, t: float) -> bool:
        """Whether the band width is non-decreasing at t: r(t) <= c*coth(c*t).

        Undefined at t = 0 (coth blows up; the width always grows off 0).
        """
        if not t > 0.0:
            raise ValueError(f"t must be > 0, got {t!r}")
        ct = self.noise.c * t
        return self.hazard.rate(t) <= self.noise.c / math.tanh(ct)

    # -- one-time-point law --------------------------------------------------

    def atom_prob(self, t: float) -> float:
        """Mass P{X(t) = a(t)} = P{X(t) = b(t)} = exp(-lam*t)/2."""
        self.hazard._check_time(t)
        return w_atom_prob(self.noise, t)

    def density(self, x, t: float):
        """Density of the continuous part of X(t) on the open band.

        The argument of the Bessel functions uses the factored form

            u(x, t) = log((1-a)/(1-x)) * log((1-x)/(1-b)),

        which stays accurate (and provably nonnegative) as x approaches
        either endpoint, where the naive c^2 t^2 - log^2(...) cancels.
        """
        c, lam = self.noise.c, self.noise.lam
        if not (math.isfinite(t) and t > 0.0 and t < self.hazard.support_end):
            raise ValueError(f"t must lie in (0, {self.hazard.support_end}), got {t!r}")
        band = self.band(t)
        arr = np.asarray(x, dtype=float)
        if np.any(arr <= band.a) or np.any(arr >= band.b):
            raise ValueError(
                f"x must lie strictly inside the band ({band.a}, {band.b}); "
                "the endpoints carry atoms"
            )
        one_minus = 1.0 - arr
        u = np.log((1.0 - band.a) / one_minus) * np.log(one_minus / (1.0 - band.b))
        z = (lam / c) * np.sqrt(np.maximum(u, 0.0))
        bracket = lam * bessel_i0e(z) + lam * lam * t * bessel_i1e_over_x(z)
        out = bracket * np.exp(z - lam * t) / (2.0 * c * one_minus)
        return float(out) if arr.ndim == 0 else out

    def cdf(self, x: float, t: float) -> float:
        """P{X(t) <= x}, via the monotone map onto the integrated-noise law.

        Outside the closed band the value clamps to 0 below and 1 above.
        """
        self.hazard._check_time(t)
        band = self.band(t)
        if x < band.a:
            return 0.0
        if x >= band.b:
            return 1.0
        if t == 0.0:
            return 0.0 if x < 0.0 else 1.0
        ct = self.noise.c * t
        # X <= x  <=>  W <= log(survival(t) / (1 - x)); clamp the threshold
        # into [-ct, ct] to absorb roundoff at the band endpoints.
        w = -(self.hazard.cumulative(t) + math.log1p(-x))
        w = min(max(w, -ct), ct)
        return w_cdf(self.noise, t, w)

    # -- moments --------------------------------------------------------------

    def mean(self, t):
        """E[X(t)] = 1 - survival(t) * M(-1, t), evaluated overflow-free."""
        cum = self.hazard.cumulative(t)
        out = 1.0 - scaled_mgf(self.noise, -1.0, t, cum)
        return float(out) if np.ndim(t) == 0 else np.asarray(out)

    def variance(self, t):
        """Var[X(t)] = survival^2 * (M(-2,t) - M(-1,t)^2), floored at 0."""
        cum = np.asarray(self.hazard.cumulative(t), dtype=float)
        ta = np.asarray(t, dtype=float)
        second = scaled_mgf(self.noise, -2.0, ta, 2.0 * cum)
        first = scaled_mgf(self.noise, -1.0, ta, cum)
        out = np.maximum(np.asarray(second) - np.asarray(first) ** 2, 0.0)
        return float(out) if np.ndim(t) == 0 else out

    # -- simulation ------------------------------------------------------------

    def sample_path_values(self, horizon: float, time_grid, seed: int) -> list[tuple[float, float]]:
        """One sample path of X evaluated on ``time_grid``.

        Draws a single noise trajectory and maps it through
        X(t) = 1 - exp(-(R(t) + W(t))). Grid times must satisfy
        t <= horizon and t < support_end.
        """
        grid = np.asarray(time_grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("time_grid must be a non-empty 1-d sequence")
        if np.any(grid > horizon):
            raise ValueError("time_grid must not exceed the horizon")
        self.hazard._check_time(grid)
        path = sample_path(self.noise, horizon, seed)
        cums = self.hazard.cumulative(grid)
        values = [
            -math.expm1(-(cum + integrate_path(path, self.noise, float(tt))))
            for tt, cum in zip(grid, np.atleast_1d(cums))
        ]
        return list(zip(grid.tolist(), values))
