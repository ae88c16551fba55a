"""Knot representations: trigonometric, polygonal, and piecewise chains.

Three closed-curve kinds live here:

* :class:`SmoothKnot` / :class:`TrigKnot` -- smooth closed curves over a
  2*pi-periodic parameter with exact velocities (no numerical
  differentiation anywhere).
* :class:`PolyKnot` -- closed polygon given by its cyclic vertex list.
* :class:`PiecewiseKnot` -- closed chain of smooth arcs and straight
  segments, optionally carrying marked self-tangency points.  This is the
  home of the singular connected-sum curves.

Subarcs are selected with :class:`SubarcSpec` either by an open parameter
interval or by a half-space predicate such as ``x > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ParameterError,
    RepresentationError,
    StructuralError,
    TopologyError,
)

TWO_PI = 2.0 * math.pi

# Endpoint / vertex coincidence tolerance used throughout the chain checks.
JOIN_TOL = 1e-9
# Bisection tolerance for half-space boundary crossings.
ROOT_TOL = 1e-12
# Samples per period per unit of harmonic degree for smooth evaluation grids.
SAMPLES_PER_DEGREE = 4096


def _as_points(arr) -> np.ndarray:
    pts = np.asarray(arr, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, 3)
    return pts


class SmoothKnot:
    """Closed smooth curve t -> R^3, 2*pi periodic, with exact velocity.

    ``point_fn`` and ``velocity_fn`` must accept a float array of
    parameters and return an array of shape (len(ts), 3).  ``degree_hint``
    is the effective harmonic content; it sets the default sampling
    density used by the counting routines.
    """

    kind = "smooth"
    period = TWO_PI

    def __init__(self, point_fn, velocity_fn, *, degree_hint: int = 1,
                 label: str = "smooth", meta: dict | None = None):
        self._point_fn = point_fn
        self._velocity_fn = velocity_fn
        self.degree_hint = max(1, int(degree_hint))
        self.label = label
        self.meta = dict(meta) if meta else {}

    def point(self, ts):
        scalar = np.isscalar(ts)
        pts = self._point_fn(np.atleast_1d(np.asarray(ts, dtype=float)))
        return pts[0] if scalar else pts

    def velocity(self, ts):
        scalar = np.isscalar(ts)
        vel = self._velocity_fn(np.atleast_1d(np.asarray(ts, dtype=float)))
        return vel[0] if scalar else vel

    def transform(self, m) -> "SmoothKnot":
        lin = m.linear

        def point_fn(ts, _base=self._point_fn, _m=m):
            return _m.apply(_base(ts))

        def velocity_fn(ts, _base=self._velocity_fn, _lin=lin):
            return _lin.apply(_base(ts))

        return SmoothKnot(point_fn, velocity_fn, degree_hint=self.degree_hint,
                          label=self.label, meta=self.meta)

    def default_samples(self) -> int:
        return SAMPLES_PER_DEGREE * self.degree_hint

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label!r} degree_hint={self.degree_hint}>"


class TrigKnot(SmoothKnot):
    """Smooth knot whose coordinates are finite trigonometric series.

    Each coordinate is ``const + sum_d (cos_coeffs[d] cos((d+1) t) +
    sin_coeffs[d] sin((d+1) t))``; derivatives are exact, and affine maps
    act exactly on the coefficients.
    """

    kind = "trig"

    def __init__(self, const, cos_coeffs=None, sin_coeffs=None, *,
                 label: str = "trig", meta: dict | None = None):
        const = np.array(const, dtype=float).reshape(3)
        cos_c = np.zeros((0, 3)) if cos_coeffs is None else np.array(cos_coeffs, dtype=float)
        sin_c = np.zeros((0, 3)) if sin_coeffs is None else np.array(sin_coeffs, dtype=float)
        if cos_c.ndim != 2 or cos_c.shape[1:] != (3,):
            raise ParameterError(f"cosine coefficients must have shape (D, 3), got {cos_c.shape}")
        if sin_c.ndim != 2 or sin_c.shape[1:] != (3,):
            raise ParameterError(f"sine coefficients must have shape (D, 3), got {sin_c.shape}")
        degree = max(len(cos_c), len(sin_c))
        cos_c = np.vstack([cos_c, np.zeros((degree - len(cos_c), 3))])
        sin_c = np.vstack([sin_c, np.zeros((degree - len(sin_c), 3))])
        if degree == 0 or (np.all(cos_c == 0.0) and np.all(sin_c == 0.0)):
            raise ParameterError("trig knot has identically zero derivative")
        const.setflags(write=False)
        cos_c.setflags(write=False)
        sin_c.setflags(write=False)
        self.const = const
        self.cos_coeffs = cos_c
        self.sin_coeffs = sin_c
        self.degree = degree
        super().__init__(self._eval_point, self._eval_velocity,
                         degree_hint=degree, label=label, meta=meta)

    def _harmonics(self, ts):
        d = np.arange(1, self.degree + 1)
        ang = np.multiply.outer(ts, d)  # (T, D)
        return np.cos(ang), np.sin(ang)

    def _eval_point(self, ts):
        c, s = self._harmonics(ts)
        return self.const + c @ self.cos_coeffs + s @ self.sin_coeffs

    def _eval_velocity(self, ts):
        c, s = self._harmonics(ts)
        d = np.arange(1, self.degree + 1).reshape(-1, 1)
        return -s @ (d * self.cos_coeffs) + c @ (d * self.sin_coeffs)

    def transform(self, m) -> "TrigKnot":
        lin = m.linear.matrix
        const = m.apply(self.const)
        return TrigKnot(const, self.cos_coeffs @ lin.T, self.sin_coeffs @ lin.T,
                        label=self.label, meta=self.meta)


class PolyKnot:
    """Closed polygon with vertex i sitting at parameter i (period = n).

    Construction rejects repeated vertices and straight-through vertices:
    consecutive vertices must be more than 1e-9 apart and no three
    consecutive vertices may be collinear within 1e-9 (sine of the turn
    angle).
    """

    kind = "polygonal"

    def __init__(self, vertices, *, meta: dict | None = None):
        verts = np.array(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 3 or len(verts) < 3:
            raise ParameterError(f"expected at least 3 vertices of shape (n, 3), got {verts.shape}")
        edges = np.roll(verts, -1, axis=0) - verts
        lengths = np.linalg.norm(edges, axis=1)
        if np.any(lengths <= JOIN_TOL):
            raise ParameterError("consecutive vertices coincide within 1e-9")
        turn = np.cross(edges, np.roll(edges, -1, axis=0))
        sin_turn = np.linalg.norm(turn, axis=1) / (lengths * np.roll(lengths, -1))
        if np.any(sin_turn <= JOIN_TOL):
            raise ParameterError("three consecutive vertices are collinear within 1e-9")
        verts.setflags(write=False)
        self.vertices = verts
        self.meta = dict(meta) if meta else {}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def period(self) -> float:
        return float(self.n)

    def point(self, ts):
        scalar = np.isscalar(ts)
        t = np.atleast_1d(np.asarray(ts, dtype=float)) % self.n
        i = np.minimum(t.astype(int), self.n - 1)
        s = (t - i)[:, None]
        nxt = (i + 1) % self.n
        pts = (1.0 - s) * self.vertices[i] + s * self.vertices[nxt]
        return pts[0] if scalar else pts

    def transform(self, m) -> "PolyKnot":
        return PolyKnot(m.apply(self.vertices), meta=self.meta)

    def __repr__(self) -> str:
        return f"<PolyKnot n={self.n}>"


# ---------------------------------------------------------------------------
# Piecewise chains


class SegmentPiece:
    """Straight piece traversed from ``start`` to ``end`` over local s in [0,1]."""

    is_segment = True

    def __init__(self, start, end):
        self.start = np.array(start, dtype=float).reshape(3)
        self.end = np.array(end, dtype=float).reshape(3)
        if np.linalg.norm(self.end - self.start) <= JOIN_TOL:
            raise ParameterError("degenerate segment piece")
        self.start.setflags(write=False)
        self.end.setflags(write=False)

    def point(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))[:, None]
        return (1.0 - s) * self.start + s * self.end

    def velocity(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return np.broadcast_to(self.end - self.start, (len(s), 3)).copy()

    @property
    def first_point(self):
        return self.start

    @property
    def last_point(self):
        return self.end

    def split(self, s: float):
        mid = (1.0 - s) * self.start + s * self.end
        return SegmentPiece(self.start, mid), SegmentPiece(mid, self.end)

    def transform(self, m):
        return SegmentPiece(m.apply(self.start), m.apply(self.end))

    def sample_count(self, scale: float = 1.0) -> int:
        return 1


class SmoothArcPiece:
    """Arc of a smooth knot between base parameters u0 and u1.

    Local s in [0, 1] maps to u = u0 + s (u1 - u0); u1 < u0 traverses the
    base curve backwards.  Velocity carries the chain factor (u1 - u0), so
    its sign matches the traversal direction.
    """

    is_segment = False

    def __init__(self, base: SmoothKnot, u0: float, u1: float):
        if u0 == u1:
            raise ParameterError("degenerate smooth arc piece")
        self.base = base
        self.u0 = float(u0)
        self.u1 = float(u1)

    def _params(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return self.u0 + s * (self.u1 - self.u0)

    def point(self, s):
        return self.base.point(self._params(s))

    def velocity(self, s):
        return self.base.velocity(self._params(s)) * (self.u1 - self.u0)

    @property
    def first_point(self):
        return self.base.point(self.u0)

    @property
    def last_point(self):
        return self.base.point(self.u1)

    def split(self, s: float):
        um = self.u0 + s * (self.u1 - self.u0)
        return SmoothArcPiece(self.base, self.u0, um), SmoothArcPiece(self.base, um, self.u1)

    def transform(self, m):
        return SmoothArcPiece(self.base.transform(m), self.u0, self.u1)

    def sample_count(self, scale: float = 1.0) -> int:
        span = abs(self.u1 - self.u0) / TWO_PI
        return max(32, int(math.ceil(self.base.default_samples() * span * scale)))


class PiecewiseKnot:
    """Closed chain of pieces, parameter in [0, n_pieces), piece i on [i, i+1].

    Consecutive pieces must share endpoints within 1e-9 and the chain must
    close.  Marked singular points are self-tangencies of the chain: each
    must coincide with exactly two junction points, one per passage.
    """

    kind = "piecewise"

    def __init__(self, pieces, *, singular_points=None, meta: dict | None = None):
        pieces = list(pieces)
        if len(pieces) < 2:
            raise StructuralError("a piecewise knot needs at least two pieces")
        for a, b in zip(pieces, pieces[1:] + pieces[:1]):
            gap = np.linalg.norm(a.last_point - b.first_point)
            if gap > JOIN_TOL:
                raise StructuralError(f"chain breaks between pieces: gap {gap:.3e}")
        self.pieces = pieces
        marks = [np.array(p, dtype=float).reshape(3) for p in (singular_points or [])]
        junctions = self.junctions()
        for p in marks:
            hits = int(np.sum(np.linalg.norm(junctions - p, axis=1) <= JOIN_TOL))
            if hits != 2:
                raise StructuralError(
                    f"singular point {p.tolist()} coincides with {hits} junctions, expected 2")
        self.singular_points = marks
        self.meta = dict(meta) if meta else {}

    @property
    def period(self) -> float:
        return float(len(self.pieces))

    def junctions(self) -> np.ndarray:
        """Points where consecutive pieces meet (one per piece boundary)."""
        return np.array([p.first_point for p in self.pieces])

    def point(self, ts):
        scalar = np.isscalar(ts)
        t = np.atleast_1d(np.asarray(ts, dtype=float)) % self.period
        i = np.minimum(t.astype(int), len(self.pieces) - 1)
        out = np.empty((len(t), 3))
        for k in range(len(self.pieces)):
            mask = i == k
            if np.any(mask):
                out[mask] = self.pieces[k].point(t[mask] - k)
        return out[0] if scalar else out

    def transform(self, m) -> "PiecewiseKnot":
        return PiecewiseKnot([p.transform(m) for p in self.pieces],
                             singular_points=[m.apply(p) for p in self.singular_points],
                             meta=self.meta)

    def __repr__(self) -> str:
        segs = sum(1 for p in self.pieces if p.is_segment)
        return (f"<PiecewiseKnot pieces={len(self.pieces)} segments={segs} "
                f"singular={len(self.singular_points)}>")


# ---------------------------------------------------------------------------
# Subarc selection


@dataclass(frozen=True)
class SubarcSpec:
    """Open subarc selector: a parameter interval or a half-space predicate.

    ``interval(a, b)`` selects the open arc from parameter a forward to b
    (wrapping allowed).  ``halfspace(normal, offset)`` selects the open
    union of subarcs where ``point . normal > offset``.
    """

    lo: float | None = None
    hi: float | None = None
    normal: tuple | None = None
    offset: float = 0.0

    @classmethod
    def interval(cls, a: float, b: float) -> "SubarcSpec":
        return cls(lo=float(a), hi=float(b))

    @classmethod
    def halfspace(cls, normal, offset: float = 0.0) -> "SubarcSpec":
        n = tuple(float(c) for c in normal)
        if math.sqrt(sum(c * c for c in n)) == 0.0:
            raise ParameterError("half-space normal must be nonzero")
        return cls(normal=n, offset=float(offset))

    @property
    def is_interval(self) -> bool:
        return self.lo is not None

    def transform(self, m) -> "SubarcSpec":
        """Selector for the image curve: intervals are parameter-bound and
        unchanged; half-spaces map by the inverse-transpose of the linear
        part with the offset shifted by the translation."""
        if self.is_interval:
            return self
        lin = m.linear.matrix
        n_img = np.linalg.solve(lin.T, np.array(self.normal, dtype=float))
        offset = self.offset + float(n_img @ m.translation)
        return SubarcSpec.halfspace(tuple(n_img), offset)


def _halfspace_values(knot, spec: SubarcSpec, ts):
    return _as_points(knot.point(ts)) @ np.array(spec.normal) - spec.offset


def _bisect(fn, a: float, b: float, fa: float, fb: float, tol: float = ROOT_TOL) -> float:
    """Sign-change bisection of a scalar function on [a, b]."""
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ParameterError("bisection bracket does not change sign")
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = fn(m)
        if fm == 0.0:
            return m
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def resolve_subarc(knot, spec: SubarcSpec) -> list[tuple[float, float]]:
    """Return the open subarcs selected by ``spec`` as (start, length) pairs.

    Starts lie in [0, period); lengths are positive and below the period.
    Raises ParameterError when the selection is empty.
    """
    period = knot.period
    if spec.is_interval:
        a = spec.lo % period
        length = (spec.hi - spec.lo) % period
        if length <= 0.0:
            raise ParameterError("interval subarc is empty")
        return [(a, length)]

    if isinstance(knot, PolyKnot):
        normal = np.array(spec.normal)
        g = knot.vertices @ normal - spec.offset
        cuts = []
        for i in range(knot.n):
            gi, gj = g[i], g[(i + 1) % knot.n]
            if (gi > 0.0) != (gj > 0.0):
                # Exact linear crossing along the edge.
                cuts.append((i + gi / (gi - gj), gi > 0.0))
        if not cuts:
            if np.all(g > 0.0):
                return [(0.0, period)]
            raise ParameterError("half-space subarc selects nothing")
        # A cut with was_pos=True is a downward (positive -> negative)
        # crossing; upward crossings open an interval that the next
        # downward crossing closes.
        intervals = []
        for k, (t_up, was_pos) in enumerate(cuts):
            if was_pos:
                continue
            t_end = None
            for step in range(1, len(cuts) + 1):
                t2, was_pos2 = cuts[(k + step) % len(cuts)]
                if was_pos2:
                    t_end = t2
                    break
            intervals.append((t_up % period, (t_end - t_up) % period))
        intervals.sort()
        return intervals

    # Smooth or piecewise: sample, then bisect each sign change.
    if isinstance(knot, PiecewiseKnot):
        samples = max(512, 64 * len(knot.pieces))
    else:
        samples = max(512, knot.default_samples() // 4)
    ts = np.arange(samples) * (period / samples)
    g = _halfspace_values(knot, spec, ts)
    sign = g > 0.0
    if np.all(sign):
        return [(0.0, period)]
    if not np.any(sign):
        raise ParameterError("half-space subarc selects nothing")

    def g_scalar(t):
        return float(_halfspace_values(knot, spec, np.array([t]))[0])

    roots_up, roots_down = [], []
    for i in range(samples):
        j = (i + 1) % samples
        a = ts[i]
        b = ts[j] if j != 0 else period
        if sign[i] != sign[j]:
            r = _bisect(g_scalar, a, b, g[i], g[j])
            (roots_down if sign[i] else roots_up).append(r)
    intervals = []
    for r in roots_up:
        later = [(d - r) % period for d in roots_down]
        length = min(later)
        intervals.append((r % period, length))
    intervals.sort()
    return intervals


# ---------------------------------------------------------------------------
# Map application and straightening


def apply_map(knot, m):
    """Pointwise image of a knot under an invertible (affine) map.

    The representation kind is preserved exactly: polygon vertices,
    trigonometric coefficients, and chain pieces all transform in closed
    form, so no refitting is ever needed.
    """
    return knot.transform(m)


def _segment_distance(p1, p2, q1, q2) -> float:
    """Minimum distance between segments [p1, p2] and [q1, q2]."""
    d1 = p2 - p1
    d2 = q2 - q1
    r = p1 - q1
    a = float(d1 @ d1)
    e = float(d2 @ d2)
    f = float(d2 @ r)
    c = float(d1 @ r)
    b = float(d1 @ d2)
    denom = a * e - b * b
    s = 0.0 if denom == 0.0 else min(1.0, max(0.0, (b * f - c * e) / denom))
    t = (b * s + f) / e if e > 0.0 else 0.0
    if t < 0.0:
        t = 0.0
        s = min(1.0, max(0.0, -c / a)) if a > 0.0 else 0.0
    elif t > 1.0:
        t = 1.0
        s = min(1.0, max(0.0, (b - c) / a)) if a > 0.0 else 0.0
    return float(np.linalg.norm((p1 + s * d1) - (q1 + t * d2)))


def _point_segment_distances(points, a, b):
    ab = b - a
    denom = float(ab @ ab)
    t = np.clip((points - a) @ ab / denom, 0.0, 1.0)
    closest = a + t[:, None] * ab
    return np.linalg.norm(points - closest, axis=1)


def _single_interval(knot, arc: SubarcSpec) -> tuple[float, float]:
    intervals = resolve_subarc(knot, arc)
    if len(intervals) != 1:
        raise ParameterError(
            f"straightening needs a single subarc, selector produced {len(intervals)}")
    return intervals[0]


def _straighten_poly(knot: PolyKnot, arc: SubarcSpec) -> PolyKnot:
    period = knot.period
    a, length = _single_interval(knot, arc)
    if length >= period - JOIN_TOL:
        raise ParameterError("cannot straighten the entire polygon")
    b = a + length
    p_a = knot.point(a)
    p_b = knot.point(b % period)
    if np.linalg.norm(p_a - p_b) <= JOIN_TOL:
        raise ParameterError("straightening chord is degenerate")

    verts = [p_b]
    k = math.ceil(b)
    while k < a + period:
        v = knot.vertices[int(k % knot.n)]
        if np.linalg.norm(v - verts[-1]) > JOIN_TOL:
            verts.append(v)
        k += 1
    if np.linalg.norm(p_a - verts[-1]) > JOIN_TOL:
        verts.append(p_a)
    if np.linalg.norm(verts[0] - verts[-1]) <= JOIN_TOL:
        verts.pop()
    new = PolyKnot(np.array(verts))

    # The chord joins new vertices -1 -> 0; reject if it approaches any
    # retained edge it does not share an endpoint with.
    m = new.n
    for i in range(m - 1):
        q1, q2 = new.vertices[i], new.vertices[(i + 1) % m]
        if i == 0 or i == m - 2:
            continue  # edges sharing a chord endpoint
        if _segment_distance(p_a, p_b, q1, q2) <= JOIN_TOL:
            raise TopologyError("straightening chord intersects the remaining polygon")
    return new


def _piece_sample_points(piece, scale: float = 10.0) -> np.ndarray:
    n = piece.sample_count(scale) + 1
    return _as_points(piece.point(np.linspace(0.0, 1.0, n)))


def _snap_param(t: float, period: float, tol: float = 1e-9) -> float:
    """Snap a chain parameter onto the nearest junction when inside ``tol``."""
    r = round(t)
    return (r % period) if abs(t - r) <= tol else (t % period)


def _straighten_piecewise(knot: PiecewiseKnot, arc: SubarcSpec) -> PiecewiseKnot:
    period = knot.period
    a, length = _single_interval(knot, arc)
    if length >= period - 1e-9:
        raise ParameterError("cannot straighten the entire chain")
    a = _snap_param(a, period)
    b = _snap_param(a + length, period)
    length = (b - a) % period
    if length <= 1e-9:
        raise ParameterError("straightening arc is empty after snapping")
    p_a = np.asarray(knot.point(a))
    p_b = np.asarray(knot.point(b))
    if np.linalg.norm(p_a - p_b) <= JOIN_TOL:
        raise ParameterError("straightening chord is degenerate")

    kept: list = []
    t = b
    remaining = period - length
    while remaining > 1e-9:
        i = int(t % period) % len(knot.pieces)
        s0 = t - int(t)
        take = min(1.0 - s0, remaining)
        piece = knot.pieces[i]
        if s0 <= 1e-9 and take >= 1.0 - 1e-9:
            kept.append(piece)
        else:
            frag = piece
            if s0 > 1e-9:
                frag = piece.split(s0)[1]
            if s0 + take < 1.0 - 1e-9:
                frac = take / (1.0 - s0)
                frag = frag.split(frac)[0]
            kept.append(frag)
        t = (t + take) % period
        remaining -= take

    chord = SegmentPiece(p_a, p_b)
    pieces = kept + [chord]

    # Intersection check: chord against retained pieces, skipping samples
    # near the shared chord endpoints.
    chord_len = float(np.linalg.norm(p_b - p_a))
    clearance = max(JOIN_TOL, 1e-3 * chord_len)
    for piece in kept:
        pts = _piece_sample_points(piece)
        d = _point_segment_distances(pts, p_a, p_b)
        near_ends = np.minimum(np.linalg.norm(pts - p_a, axis=1),
                               np.linalg.norm(pts - p_b, axis=1)) <= clearance
        if np.any((d <= JOIN_TOL) & ~near_ends):
            raise TopologyError("straightening chord intersects the remaining chain")

    # Re-derive singular marks: a mark survives only while two passages
    # still meet there.
    junctions = np.array([p.first_point for p in pieces])
    marks = []
    for p in knot.singular_points:
        hits = int(np.sum(np.linalg.norm(junctions - p, axis=1) <= JOIN_TOL))
        if hits == 2:
            marks.append(p)
    return PiecewiseKnot(pieces, singular_points=marks, meta=knot.meta)


def straighten(knot, arc: SubarcSpec):
    """Replace an open subarc with the chord joining its endpoints.

    Works on polygons and piecewise chains and returns the same kind.
    Raises TopologyError when the chord would touch the remaining curve,
    ParameterError for empty or degenerate selections.
    """
    if isinstance(knot, PolyKnot):
        return _straighten_poly(knot, arc)
    if isinstance(knot, PiecewiseKnot):
        return _straighten_piecewise(knot, arc)
    raise RepresentationError(f"cannot straighten a {type(knot).__name__}")
