"""Baseline hazard-rate specifications with exact cumulative forms.

Every variant exposes the instantaneous rate r(t), its exact antiderivative
R(t), and the implied lifetime distribution F(t) = 1 - exp(-R(t)) on the
support [0, support_end). Cumulative hazards are closed forms, never
quadrature; a quadrature cross-check lives in the tests only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class HazardSpec:
    """Base interface: positive rate on [0, support_end) with exact R(t)."""

    support_end: float = math.inf

    def rate(self, t):
        """Instantaneous hazard r(t); scalar or array input."""
        raise NotImplementedError

    def cumulative(self, t):
        """Exact cumulative hazard R(t) = integral of r over [0, t]."""
        raise NotImplementedError

    def critical_points(self) -> tuple[float, ...]:
        """Interior points where r may attain extrema (grid augmentation)."""
        return ()

    def cdf(self, t):
        """Lifetime distribution function 1 - exp(-R(t))."""
        out = -np.expm1(-np.asarray(self.cumulative(t), dtype=float))
        return float(out) if np.ndim(t) == 0 else out

    def survival(self, t):
        """Survival function exp(-R(t)); underflows smoothly to 0.0."""
        out = np.exp(-np.asarray(self.cumulative(t), dtype=float))
        return float(out) if np.ndim(t) == 0 else out

    def _check_time(self, t) -> np.ndarray:
        arr = np.asarray(t, dtype=float)
        if not np.all((arr >= 0.0) & (arr < self.support_end)):
            raise ValueError(
                f"time must lie in [0, {self.support_end}), got {t!r}"
            )
        return arr


def _positive(name: str, value) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class ConstantHazard(HazardSpec):
    """r(t) = rate0, the exponential-lifetime baseline."""

    rate0: float
    support_end: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "rate0", _positive("rate0", self.rate0))

    def rate(self, t):
        arr = self._check_time(t)
        out = np.full_like(arr, self.rate0)
        return float(out) if arr.ndim == 0 else out

    def cumulative(self, t):
        arr = self._check_time(t)
        out = self.rate0 * arr
        return float(out) if arr.ndim == 0 else out


@dataclass(frozen=True)
class PolynomialHazard(HazardSpec):
    """r(t) = alpha * t * (t - 1)^2 + c_ref + beta.

    A non-monotone rate with interior stationary points at t = 1/3 and
    t = 1; its minimum over t >= 0 is c_ref + beta, attained at 0 and 1.
    """

    alpha: float
    beta: float
    c_ref: float
    support_end: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))
        object.__setattr__(self, "beta", _positive("beta", self.beta))
        if not (isinstance(self.c_ref, (int, float)) and math.isfinite(self.c_ref)
                and self.c_ref >= 0.0):
            raise ValueError(f"c_ref must be finite and >= 0, got {self.c_ref!r}")
        object.__setattr__(self, "c_ref", float(self.c_ref))

    def rate(self, t):
        arr = self._check_time(t)
        out = self.alpha * arr * (arr - 1.0) ** 2 + self.c_ref + self.beta
        return float(out) if arr.ndim == 0 else out

    def cumulative(self, t):
        arr = self._check_time(t)
        poly = arr**4 / 4.0 - 2.0 * arr**3 / 3.0 + arr**2 / 2.0
        out = self.alpha * poly + (self.c_ref + self.beta) * arr
        return float(out) if arr.ndim == 0 else out

    def critical_points(self) -> tuple[float, ...]:
        return (1.0 / 3.0, 1.0)


@dataclass(frozen=True)
class PiecewiseLinearHazard(HazardSpec):
    """Contiguous linear pieces r(t) = slope * t + intercept.

    ``segments`` is a sequence of (t_start, slope, intercept) with the first
    start at 0 and strictly increasing starts. The rate must be positive
    everywhere except that r(0) = 0 is tolerated (some published baselines
    start at zero); continuity at the breakpoints is not required.
    """

    segments: tuple[tuple[float, float, float], ...]
    support_end: float = math.inf

    def __post_init__(self):
        segs = tuple(
            (float(s), float(m), float(q)) for s, m, q in self.segments
        )
        if not segs:
            raise ValueError("segments must be non-empty")
        if segs[0][0] != 0.0:
            raise ValueError("first segment must start at t = 0")
        starts = [s for s, _, _ in segs]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("segment starts must be strictly increasing")
        if any(not all(map(math.isfinite, seg)) for seg in segs):
            raise ValueError("segment parameters must be finite")
        object.__setattr__(self, "segments", segs)
        ends = starts[1:] + [self.support_end]
        for (start, slope, intercept), end in zip(segs, ends):
            at_start = slope * start + intercept
            if at_start < 0.0 or (at_start == 0.0 and start > 0.0):
                raise ValueError(f"rate is not positive at t = {start}")
            probe = end if math.isfinite(end) else max(start + 1.0, 2.0 * start)
            if slope * probe + intercept <= 0.0:
                raise ValueError(f"rate is not positive on the segment from t = {start}")
            if not math.isfinite(end) and slope < 0.0:
                raise ValueError("last segment must have slope >= 0 on an infinite support")

    @property
    def _arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        starts = np.array([s for s, _, _ in self.segments])
        slopes = np.array([m for _, m, _ in self.segments])
        intercepts = np.array([q for _, _, q in self.segments])
        # cumulative hazard accumulated up to the start of each segment
        offsets = np.zeros(len(self.segments))
        for i in range(1, len(self.segments)):
            s0, m, q = self.segments[i - 1]
            s1 = self.segments[i][0]
            offsets[i] = offsets[i - 1] + 0.5 * m * (s1**2 - s0**2) + q * (s1 - s0)
        return starts, slopes, intercepts, offsets

    def _segment_index(self, arr: np.ndarray, starts: np.ndarray) -> np.ndarray:
        # breakpoints belong to the segment on their left: pieces are
        # [0, s_1], (s_1, s_2], ... which matches published baselines
        return np.clip(np.searchsorted(starts, arr, side="left") - 1, 0, None)

    def rate(self, t):
        arr = self._check_time(t)
        starts, slopes, intercepts, _ = self._arrays
        idx = self._segment_index(arr, starts)
        out = slopes[idx] * arr + intercepts[idx]
        return float(out) if arr.ndim == 0 else out

    def cumulative(self, t):
        arr = self._check_time(t)
        starts, slopes, intercepts, offsets = self._arrays
        idx = self._segment_index(arr, starts)
        s0 = starts[idx]
        out = offsets[idx] + 0.5 * slopes[idx] * (arr**2 - s0**2) + intercepts[idx] * (
            arr - s0
        )
        return float(out) if arr.ndim == 0 else out

    def critical_points(self) -> tuple[float, ...]:
        return tuple(s for s, _, _ in self.segments if s > 0.0)


@dataclass(frozen=True)
class CustomHazard(HazardSpec):
    """Caller-supplied closed-form pair (r, R); both must be vectorized.

    No differentiation or integration happens here: supplying an exact
    antiderivative is the contract, which keeps the hot path quadrature-free.
    """

    rate_fn: Callable
    cumulative_fn: Callable
    support_end: float = math.inf
    interior_points: tuple[float, ...] = field(default=())

    def rate(self, t):
        arr = self._check_time(t)
        out = np.asarray(self.rate_fn(arr), dtype=float)
        return float(out) if arr.ndim == 0 else out

    def cumulative(self, t):
        arr = self._check_time(t)
        out = np.asarray(self.cumulative_fn(arr), dtype=float)
        return float(out) if arr.ndim == 0 else out

    def critical_points(self) -> tuple[float, ...]:
        return self.interior_points


@dataclass(frozen=True)
class DominanceCheck:
    """Outcome of a grid check of r(t) > c; carries the first violation."""

    ok: bool
    violating_t: float | None = None


def validate_dominance(spec: HazardSpec, c: float, grid) -> DominanceCheck:
    """Check r(t) > c at every grid point, reporting the first failure."""
    pts = np.asarray(grid, dtype=float)
    if pts.size == 0:
        raise ValueError("dominance grid must be non-empty")
    rates = spec.rate(pts)
    bad = np.nonzero(rates <= c)[0]
    if bad.size:
        return DominanceCheck(False, float(pts[bad[0]]))
    return DominanceCheck(True, None)


def time_horizon(spec: HazardSpec, tail: float = 1e-6) -> float:
    """Smallest convenient T with survival(T) <= tail.

    Returns support_end for finite supports. For infinite supports the
    cumulative hazard is bracketed by doubling and then bisected.
    """
    if math.isfinite(spec.support_end):
        return spec.support_end
    target = -math.log(tail)
    hi = 1.0
    for _ in range(80):
        if spec.cumulative(hi) >= target:
            break
        hi *= 2.0
    else:
        raise ValueError("cumulative hazard grows too slowly to reach the requested tail")
    lo = hi / 2.0 if hi > 1.0 else 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if spec.cumulative(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def default_dominance_grid(spec: HazardSpec, n: int = 2048) -> np.ndarray:
    """Uniform grid over the effective support plus the variant's critical points.

    Starts strictly after 0: the process laws never need r(0) itself, and
    several published baselines touch r(0) = c or r(0) = 0 exactly.
    """
    if math.isfinite(spec.support_end):
        horizon = spec.support_end * (1.0 - 1e-9)
    else:
        horizon = time_horizon(spec)
    pts = np.linspace(horizon / n, horizon, n)
    extra = [p for p in spec.critical_points() if 0.0 < p <= horizon]
    if extra:
        pts = np.unique(np.concatenate([pts, np.asarray(extra, dtype=float)]))
    return pts


def parse_hazard_config(text: str) -> HazardSpec:
    """Build a hazard spec from plain key=value text.

    Recognized kinds and their keys::

        kind = constant      rate = 0.0125
        kind = polynomial    alpha = 15  beta = 0.001  c_ref = 1
        kind = piecewise     segments = 0:3.5e-6:0; 650:-4.07e-6:0.0049; ...

    ``support_end`` is optional everywhere (default: inf). Lines starting
    with '#' and blank lines are ignored.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        entries[key.strip().lower()] = value.strip()
    kind = entries.pop("kind", None)
    if kind is None:
        raise ValueError("hazard config must set 'kind'")
    support = float(entries.pop("support_end", "inf"))

    def need(key: str) -> float:
        if key not in entries:
            raise ValueError(f"hazard kind {kind!r} requires key {key!r}")
        return float(entries.pop(key))

    kind = kind.lower()
    if kind == "constant":
        spec: HazardSpec = ConstantHazard(need("rate"), support_end=support)
    elif kind == "polynomial":
        spec = PolynomialHazard(need("alpha"), need("beta"), need("c_ref"), support_end=support)
    elif kind == "piecewise":
        if "segments" not in entries:
            raise ValueError("hazard kind 'piecewise' requires key 'segments'")
        segments = []
        for chunk in entries.pop("segments").split(";"):
            parts = chunk.strip().split(":")
            if len(parts) != 3:
                raise ValueError(f"bad segment {chunk.strip()!r}; expected start:slope:intercept")
            segments.append(tuple(float(p) for p in parts))
        spec = PiecewiseLinearHazard(tuple(segments), support_end=support)
    else:
        raise ValueError(f"unknown hazard kind {kind!r}")
    if entries:
        raise ValueError(f"unused hazard config keys: {sorted(entries)}")
    return spec


def load_hazard_config(path) -> HazardSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hazard_config(fh.read())
