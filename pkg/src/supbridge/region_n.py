"""The spherical region where the lifted circle shows two maxima.

The curve (cos t, sin t, cos^2 t) projects onto a direction v with height
derivative G(t) = -rho sin(t - alpha) - sqrt(1 - rho^2) sin 2t, where
rho = sqrt(1 - v3^2) and alpha is the azimuth of v.  For upward directions
the count of maxima is 2 inside an open region N and 1 outside; the
boundary is the polar curve rho = xi(alpha), located where G acquires a
multiple root.  This module computes xi by sweeping the closed-form
double-root locus, decides membership by direct counting, and classifies
the half-arc count b(eta | x > 0) from membership and coordinate signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .crookedness import count_many, count_many_subarc, crook_subarc, crook_trig
from .curves import SubarcSpec
from .errors import NumericalError, ParameterError
from .geometry import Direction

TWO_PI = 2.0 * math.pi

XI_MIN = 1.0 / math.sqrt(2.0)
XI_MAX = 2.0 / math.sqrt(5.0)

ETA_PLUS = SubarcSpec.halfspace((1.0, 0.0, 0.0))

_eta_cache = None


def _eta():
    global _eta_cache
    if _eta_cache is None:
        from .constructions import eta
        _eta_cache = eta()
    return _eta_cache


def g_eval(rho: float, alpha: float, t):
    """Height derivative -rho sin(t - alpha) - sqrt(1 - rho^2) sin 2t."""
    if not (0.0 <= rho <= 1.0):
        raise ParameterError(f"rho must lie in [0, 1], got {rho!r}")
    t = np.asarray(t, dtype=float)
    out = -rho * np.sin(t - alpha) - math.sqrt(1.0 - rho * rho) * np.sin(2.0 * t)
    return float(out) if out.ndim == 0 else out


def _rho_of_t0(t0):
    c2 = np.cos(2.0 * np.asarray(t0, dtype=float)) ** 2
    return np.sqrt((1.0 + 3.0 * c2) / (2.0 + 3.0 * c2))


def _theta_raw(t0):
    return np.arctan2(-np.sin(2.0 * np.asarray(t0, dtype=float)),
                      -2.0 * np.cos(2.0 * np.asarray(t0, dtype=float)))


@lru_cache(maxsize=4)
def _double_root_sweep(resolution: int = 3600):
    """Tabulated double-root locus t0 -> (alpha, rho), alpha unwrapped.

    alpha(t0) decreases monotonically and covers a full turn while t0
    covers [0, 2pi]; a non-monotone sweep would mean the locus is
    multi-valued over alpha and aborts.
    """
    t0 = np.linspace(0.0, TWO_PI, resolution + 1)
    theta = np.unwrap(_theta_raw(t0))
    alpha = t0 - theta
    if np.any(np.diff(alpha) > 1e-10):
        raise NumericalError("double-root locus is not single-valued over alpha")
    return t0, alpha, _rho_of_t0(t0)


def xi(alpha: float) -> float:
    """Radius at which the height derivative acquires a multiple root.

    Values lie in [1/sqrt(2), 2/sqrt(5)]; the sweep is inverted by
    bisection on the monotone branch, so the result is accurate to
    machine precision.
    """
    t0s, alphas, _ = _double_root_sweep()
    # Reduce the query into the sweep's decreasing range
    # (alphas[0] - 2pi, alphas[0]].
    q = float(alpha)
    hi = float(alphas[0])
    q = q - TWO_PI * math.ceil((q - hi) / TWO_PI)
    k = int(np.searchsorted(-alphas, -q))
    if k == 0:
        return float(_rho_of_t0(t0s[0]))
    k = min(k, len(alphas) - 1)
    a, b = float(t0s[k - 1]), float(t0s[k])
    # Unwrapped branch reference at the bracket start; the bracket is far
    # narrower than a half turn, so rounding to it realigns the branch.
    theta_ref = a - float(alphas[k - 1])

    def alpha_cont(t: float) -> float:
        th = float(_theta_raw(t))
        th += TWO_PI * round((theta_ref - th) / TWO_PI)
        return t - th

    fa, fb = alpha_cont(a) - q, alpha_cont(b) - q
    if fa < -1e-12 or fb > 1e-12:
        raise NumericalError("bracketing failure inverting the boundary sweep")
    while b - a > 1e-14:
        mid = 0.5 * (a + b)
        if alpha_cont(mid) - q >= 0.0:
            a = mid
        else:
            b = mid
    return float(_rho_of_t0(0.5 * (a + b)))


@dataclass(frozen=True)
class RegionMembership:
    """Outcome of a membership query; ``indeterminate`` marks directions
    whose count carries the degeneracy flag (too close to the boundary)."""

    inside: bool
    count: int
    indeterminate: bool


def region_membership(v: Direction) -> RegionMembership:
    """Membership of the two-maxima region: v3 > 0 and count == 2."""
    if v.v3 <= 0.0:
        return RegionMembership(False, 0, False)
    rep = crook_trig(_eta(), v)
    return RegionMembership(rep.count == 2, rep.count, rep.degenerate)


def in_n(v: Direction) -> bool:
    return region_membership(v).inside


def in_n_many(dirs: np.ndarray):
    """Vectorized membership: (inside, indeterminate) boolean arrays."""
    dirs = np.asarray(dirs, dtype=float)
    counts, degenerate = count_many(_eta(), dirs)
    inside = (counts == 2) & (dirs[:, 2] > 0.0)
    return inside, degenerate


def eta_plus_class(v: Direction) -> int:
    """Count of maxima of the lifted circle restricted to x > 0, via the
    membership classifier.

    Defined for v3 > 0.  Directions on the v1 = 0 plane or flagged as
    boundary-indeterminate fall back to direct subarc counting.
    """
    if v.v3 <= 0.0:
        raise ParameterError("classifier is defined for v3 > 0 only")
    if abs(v.v1) < 1e-12:
        return crook_subarc(_eta(), ETA_PLUS, v).count
    m = region_membership(v)
    if m.indeterminate:
        return crook_subarc(_eta(), ETA_PLUS, v).count
    if m.inside or min(v.v1, v.v3) > 0.0:
        return 1
    if not m.inside and v.v1 < 0.0:
        return 0
    return crook_subarc(_eta(), ETA_PLUS, v).count


def eta_plus_count_many(dirs: np.ndarray):
    """Vectorized direct subarc counts of the lifted circle on x > 0."""
    return count_many_subarc(_eta(), ETA_PLUS, np.asarray(dirs, dtype=float))


class RegionBoundary:
    """Sampled boundary table rho = xi(alpha) with linear interpolation."""

    def __init__(self, alphas: np.ndarray, xis: np.ndarray):
        alphas = np.asarray(alphas, dtype=float)
        xis = np.asarray(xis, dtype=float)
        if len(alphas) < 8 or len(alphas) != len(xis):
            raise ParameterError("boundary table needs matching alpha/xi samples")
        if np.any(xis < XI_MIN - 1e-9) or np.any(xis > XI_MAX + 1e-9):
            raise ParameterError("boundary radii outside [1/sqrt2, 2/sqrt5]")
        self.alphas = alphas
        self.xis = xis

    @classmethod
    def from_sweep(cls, resolution: int = 720) -> "RegionBoundary":
        alphas = np.arange(resolution) * (TWO_PI / resolution)
        xis = np.array([xi(a) for a in alphas])
        table = cls(alphas, xis)
        table.check_symmetry()
        return table

    def check_symmetry(self, tol: float = 1e-6) -> None:
        """The polar curve repeats under alpha -> alpha + pi and reflects
        under alpha -> pi/2 - alpha."""
        n = len(self.alphas)
        probe = self.alphas[:: max(1, n // 64)]
        for a in probe:
            if abs(xi(a) - xi(a + math.pi)) > tol:
                raise NumericalError("boundary table violates half-turn symmetry")
            if abs(xi(a) - xi(math.pi / 2.0 - a)) > tol:
                raise NumericalError("boundary table violates reflection symmetry")

    def xi_at(self, alphas):
        """Linear interpolation of the table (cyclic in alpha)."""
        a = np.asarray(alphas, dtype=float) % TWO_PI
        ext_a = np.concatenate([self.alphas, [TWO_PI]])
        ext_x = np.concatenate([self.xis, [self.xis[0]]])
        out = np.interp(a, ext_a, ext_x)
        return float(out) if out.ndim == 0 else out

    def boundary_distance(self, dirs) -> np.ndarray:
        """Radial distance |rho(v) - xi(alpha(v))| of each direction."""
        dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
        rho = np.sqrt(np.clip(1.0 - dirs[:, 2] ** 2, 0.0, None))
        alpha = np.arctan2(dirs[:, 1], dirs[:, 0]) % TWO_PI
        return np.abs(rho - self.xi_at(alpha))

    def contains(self, dirs) -> np.ndarray:
        """Table-based membership (upward directions inside the curve)."""
        dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
        rho = np.sqrt(np.clip(1.0 - dirs[:, 2] ** 2, 0.0, None))
        alpha = np.arctan2(dirs[:, 1], dirs[:, 0]) % TWO_PI
        return (dirs[:, 2] > 0.0) & (rho < self.xi_at(alpha))


def direction_on_circle(rho: float, alpha: float) -> Direction:
    """Upward direction with horizontal radius rho at azimuth alpha."""
    if not (0.0 <= rho <= 1.0):
        raise ParameterError(f"rho must lie in [0, 1], got {rho!r}")
    z = math.sqrt(max(0.0, 1.0 - rho * rho))
    return Direction.normalized(rho * math.cos(alpha), rho * math.sin(alpha), z)
