"""Directions on the unit sphere and the invertible maps that move them.

A :class:`Direction` is a projection axis.  Nonsingular maps act on
directions through :func:`transport_direction`, which sends the normal of
a plane to the normal of the image plane, so that height-function maxima
are preserved under the map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

# Unit-norm and nonsingularity tolerance.  Far below every counting
# threshold used elsewhere, so direction arithmetic never decides a count.
UNIT_TOL = 1e-12
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class Direction:
    """A unit vector, the axis of a directional height function."""

    v1: float
    v2: float
    v3: float

    def __post_init__(self):
        s = self.v1 * self.v1 + self.v2 * self.v2 + self.v3 * self.v3
        if not math.isfinite(s) or abs(s - 1.0) > 1e-12:
            raise ParameterError(f"direction must be unit length: |v|^2 = {s!r}")

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "Direction":
        """Build a direction from an arbitrary nonzero vector."""
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0.0 or not math.isfinite(n):
            raise ParameterError("cannot normalize a zero or non-finite vector")
        return cls(x / n, y / n, z / n)

    @classmethod
    def from_array(cls, arr) -> "Direction":
        x, y, z = (float(c) for c in np.asarray(arr).reshape(3))
        return cls.normalized(x, y, z)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3])

    def __neg__(self) -> "Direction":
        return Direction(-self.v1, -self.v2, -self.v3)

    def dot(self, other) -> float:
        o = np.asarray(other, dtype=float).reshape(3)
        return self.v1 * o[0] + self.v2 * o[1] + self.v3 * o[2]

    @property
    def rho(self) -> float:
        """Distance from the vertical axis, sqrt(1 - v3^2)."""
        return math.sqrt(max(0.0, 1.0 - self.v3 * self.v3))

    @property
    def alpha(self) -> float:
        """Azimuth in [0, 2pi): cos(alpha) = v1/rho, sin(alpha) = v2/rho."""
        return math.atan2(self.v2, self.v1) % (2.0 * math.pi)


class LinearMap:
    """Invertible linear transformation of 3-space."""

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.shape != (3, 3):
            raise ParameterError(f"expected a 3x3 matrix, got shape {m.shape}")
        det = float(np.linalg.det(m))
        if not math.isfinite(det) or abs(det) <= SINGULAR_TOL:
            raise ParameterError(f"matrix is singular within tolerance: det = {det!r}")
        m.setflags(write=False)
        self._matrix = m
        self._det = det

    @classmethod
    def identity(cls) -> "LinearMap":
        return cls(np.eye(3))

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def det(self) -> float:
        return self._det

    @property
    def linear(self) -> "LinearMap":
        """Uniform access for both linear and affine maps."""
        return self

    @property
    def translation(self) -> np.ndarray:
        return np.zeros(3)

    def apply(self, points):
        """Apply to a point (3,) or an array of points (..., 3)."""
        pts = np.asarray(points, dtype=float)
        return pts @ self._matrix.T

    def inverse(self) -> "LinearMap":
        return LinearMap(np.linalg.inv(self._matrix))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """Map applying ``other`` first, then ``self``."""
        return LinearMap(self._matrix @ other.matrix)

    def __repr__(self) -> str:
        rows = ", ".join(str(list(r)) for r in self._matrix)
        return f"LinearMap([{rows}])"


class AffineMap:
    """Map x -> L x + t with invertible linear part L."""

    def __init__(self, linear, translation):
        self._linear = linear if isinstance(linear, LinearMap) else LinearMap(linear)
        t = np.array(translation, dtype=float).reshape(3)
        t.setflags(write=False)
        self._translation = t

    @property
    def linear(self) -> LinearMap:
        return self._linear

    @property
    def translation(self) -> np.ndarray:
        return self._translation

    def apply(self, points):
        return self._linear.apply(points) + self._translation

    def inverse(self) -> "AffineMap":
        linv = self._linear.inverse()
        return AffineMap(linv, -linv.apply(self._translation))

    def __repr__(self) -> str:
        return f"AffineMap({self._linear!r}, {list(self._translation)})"


def transport_direction(v: Direction, phi) -> Direction:
    """Image of a projection axis under an invertible (affine) map.

    The result u is the unit vector orthogonal to the image of every
    vector orthogonal to v, signed so that phi(v) . u > 0.  Planes
    perpendicular to v map to planes perpendicular to u, so local maxima
    of the height along v correspond to local maxima along u after the
    map.  Computed as the normalized inverse-transpose image of v; the
    translation part of an affine map plays no role.
    """
    mat = phi.linear.matrix
    raw = np.linalg.solve(mat.T, v.array)
    raw = raw / np.linalg.norm(raw)
    # Mathematically (L v) . (L^-T v) = |v|^2 > 0; the sign fix below only
    # guards against pathological rounding.
    if float(np.dot(mat @ v.array, raw)) < 0.0:
        raw = -raw
    return Direction(raw[0], raw[1], raw[2])


def _check_lambda(lam: float) -> None:
    if not (0.0 < lam <= 1.0):
        raise ParameterError(f"lambda must lie in (0, 1], got {lam!r}")


def phi_lambda(lam: float) -> LinearMap:
    """Vertical squash (x, y, z) -> (x, y, lam z), for 0 < lam <= 1."""
    _check_lambda(lam)
    return LinearMap(np.diag([1.0, 1.0, lam]))


def psi_lambda(lam: float) -> AffineMap:
    """(x, y, z) -> (1+lam-lam z, -y, 1+lam-x).

    Equals the vertical squash followed by a half turn about the line
    {(x, 0, z) : x + z = 1 + lam}.
    """
    _check_lambda(lam)
    lin = [[0.0, 0.0, -lam], [0.0, -1.0, 0.0], [-1.0, 0.0, 0.0]]
    return AffineMap(lin, [1.0 + lam, 0.0, 1.0 + lam])


def psi() -> LinearMap:
    """Half turn about the line {(x, 0, z) : x + z = 0}: (x,y,z) -> (-z,-y,-x)."""
    return LinearMap([[0.0, 0.0, -1.0], [0.0, -1.0, 0.0], [-1.0, 0.0, 0.0]])
