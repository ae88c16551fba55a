"""Counting local-maximum components of directional projections.

For a knot K and a unit direction v, the count is the number of connected
components of the set of local maxima of the height function t -> K(t).v.
Whole knots, open subarcs, and parametrized paths (finite covers and
singular chains, counted per passage) are all supported.

The counting core is one algorithm: sample the derivative of the height
along the parameter, classify each sample as rising, falling, or flat,
compress the flats away, and count rising-to-falling changes.  Flat runs
bounded by a rise and a fall are plateau maxima and count once; this makes
two-vertex polygon plateaus first-class rather than errors.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .curves import (
    PiecewiseKnot,
    PolyKnot,
    SmoothKnot,
    SubarcSpec,
    TWO_PI,
    resolve_subarc,
)
from .errors import DegenerateProjectionError, ParameterError, RepresentationError
from .geometry import Direction

# Absolute tolerance under which two heights count as equal (plateaus).
PLATEAU_TOL = 1e-9
# Relative flatness threshold that raises the degeneracy flag on smooth
# pieces: a near-zero dip of the derivative without a sign change hints at
# a double root, where the count is not grid-stable.
FLAT_RTOL = 1e-7
# Parameter tolerance of the bisection refinement for witnesses.
REFINE_TOL = 1e-12

_CHUNK = 512


@dataclass(frozen=True)
class CrookednessReport:
    """Count plus the witnesses of each local-maximum component.

    ``witnesses`` holds one representative parameter per component, in
    increasing order.  ``degenerate`` marks directions where the count
    relied on a tolerance call (near-flat derivative, inexact plateau) and
    may not be grid-stable.
    """

    direction: Direction
    count: int
    witnesses: tuple = field(default_factory=tuple)
    degenerate: bool = False

    def __post_init__(self):
        if self.count != len(self.witnesses):
            raise ParameterError("witness list does not match the count")
        if any(b < a for a, b in zip(self.witnesses, self.witnesses[1:])):
            raise ParameterError("witnesses must be sorted by parameter")


# ---------------------------------------------------------------------------
# sign-sequence core


def _classify(values: np.ndarray, flat_tol) -> np.ndarray:
    """Signs in {-1, 0, +1}; |value| <= flat_tol counts as flat (0)."""
    out = np.sign(values).astype(np.int8)
    out[np.abs(values) <= flat_tol] = 0
    return out


def _cyclic_pairs(sign: np.ndarray) -> list[tuple[int, int]] | None:
    """Indices (i, j) of rising samples followed cyclically by falling ones.

    Flats between i and j are skipped.  Returns None when every sample is
    flat (constant projection).
    """
    nz = np.nonzero(sign)[0]
    if len(nz) == 0:
        return None
    s = sign[nz]
    nxt = np.roll(s, -1)
    hits = np.nonzero((s > 0) & (nxt < 0))[0]
    return [(int(nz[k]), int(nz[(k + 1) % len(nz)])) for k in hits]


def _linear_pairs(sign: np.ndarray) -> tuple[list[tuple[int, int]], bool]:
    """Non-cyclic version for open arcs; also reports end-flat ambiguity."""
    nz = np.nonzero(sign)[0]
    if len(nz) == 0:
        return [], True
    s = sign[nz]
    hits = np.nonzero((s[:-1] > 0) & (s[1:] < 0))[0]
    pairs = [(int(nz[k]), int(nz[k + 1])) for k in hits]
    # A flat run touching an open end leaves the boundary component
    # undecidable at this tolerance.
    end_flat = bool(sign[0] == 0 and s[0] > 0) or bool(sign[-1] == 0 and s[-1] > 0)
    return pairs, end_flat


def _near_flat(fp: np.ndarray, scale: float, *, cyclic: bool) -> bool:
    """True when |fp| dips below FLAT_RTOL*scale away from any sign change."""
    thr = FLAT_RTOL * scale
    a = np.abs(fp)
    small = a < thr
    if not small.any():
        return False
    prev = np.roll(a, 1)
    nxt = np.roll(a, -1)
    lm = (a <= prev) & (a <= nxt) & small
    s = np.sign(fp)
    near_change = (np.roll(s, 1) * np.roll(s, -1)) <= 0
    if not cyclic:
        lm[0] = lm[-1] = False
    return bool(np.any(lm & ~near_change))


def _zero_runs_flag(sign: np.ndarray) -> bool:
    """Flag flat runs of two or more samples (unresolved flat stretch)."""
    z = sign == 0
    return bool(np.any(z & np.roll(z, 1)))


# ---------------------------------------------------------------------------
# polygons


def crook_poly(knot: PolyKnot, v: Direction, *, plateau_tol: float = PLATEAU_TOL) -> CrookednessReport:
    """Count local-maximum vertex runs of the projection of a polygon.

    A run of equal heights (within ``plateau_tol``) counts once when it
    sits strictly above both neighbouring runs.  A constant projection is
    a single component.
    """
    h = knot.vertices @ v.array
    d = np.roll(h, -1) - h
    sign = _classify(d, plateau_tol)
    pairs = _cyclic_pairs(sign)
    if pairs is None:
        return CrookednessReport(v, 1, (0.0,), degenerate=False)
    inexact = bool(np.any((np.abs(d) <= plateau_tol) & (d != 0.0)))
    if not pairs:
        return CrookednessReport(v, 1, (0.0,), degenerate=True)
    witnesses = tuple(sorted(float((i + 1) % knot.n) for i, _ in pairs))
    return CrookednessReport(v, len(pairs), witnesses, degenerate=inexact)


def _count_many_poly(knot: PolyKnot, dirs: np.ndarray, plateau_tol: float):
    V = knot.vertices
    counts = np.empty(len(dirs), dtype=np.int64)
    degenerate = np.zeros(len(dirs), dtype=bool)
    for lo in range(0, len(dirs), _CHUNK):
        D = dirs[lo:lo + _CHUNK]
        H = V @ D.T
        Dh = np.roll(H, -1, axis=0) - H
        flats = np.abs(Dh) <= plateau_tol
        rising = Dh > plateau_tol
        falling = np.roll(Dh, -1, axis=0) < -plateau_tol
        counts[lo:lo + len(D)] = np.count_nonzero(rising & falling, axis=0)
        fallback = np.nonzero(flats.any(axis=0))[0]
        for k in fallback:
            rep = crook_poly(knot, Direction.from_array(D[k]), plateau_tol=plateau_tol)
            counts[lo + k] = rep.count
            degenerate[lo + k] = rep.degenerate
    return counts, degenerate


# ---------------------------------------------------------------------------
# smooth knots


def _smooth_grid(knot: SmoothKnot, grid_scale: float):
    """Cached (ts, velocity samples, speed scale) for a smooth knot."""
    cache = knot.__dict__.setdefault("_vel_cache", {})
    key = round(grid_scale, 9)
    if key not in cache:
        n = max(64, int(knot.default_samples() * grid_scale))
        ts = np.arange(n) * (TWO_PI / n)
        vel = np.asarray(knot.velocity(ts))
        speed = float(np.linalg.norm(vel, axis=1).max())
        cache[key] = (ts, vel, speed)
    return cache[key]


def _scalar_fp(knot, v_arr):
    def fp(t):
        return float(np.asarray(knot.velocity(np.array([t])))[0] @ v_arr)
    return fp


def _refine_bracket(fp, a, b, fa, fb):
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    while b - a > REFINE_TOL:
        m = 0.5 * (a + b)
        fm = fp(m)
        if fm == 0.0:
            return m
        if fm > 0.0:
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


def crook_trig(knot: SmoothKnot, v: Direction, *, grid_scale: float = 1.0) -> CrookednessReport:
    """Count maxima of the projection of a smooth closed curve.

    The derivative of the height is sampled on a uniform grid (density set
    by the curve's harmonic content, scaled by ``grid_scale``) and each
    positive-to-negative change is refined by bisection to 1e-12.  A
    constant projection raises DegenerateProjectionError; a near-flat dip
    without a sign change only raises the degeneracy flag.
    """
    ts, vel, speed = _smooth_grid(knot, grid_scale)
    fp = vel @ v.array
    scale = float(np.abs(fp).max())
    if scale <= 1e-12 * speed:
        raise DegenerateProjectionError("projection is constant in this direction")
    sign = _classify(fp, 1e-14 * scale)
    pairs = _cyclic_pairs(sign)
    if pairs is None:
        raise DegenerateProjectionError("projection is constant in this direction")
    degenerate = _zero_runs_flag(sign) or _near_flat(fp, scale, cyclic=True)
    if not pairs:
        return CrookednessReport(v, 1, (0.0,), degenerate=True)
    fp_scalar = _scalar_fp(knot, v.array)
    n = len(ts)
    witnesses = []
    for i, j in pairs:
        a = ts[i]
        b = ts[j] if j > i else ts[j] + TWO_PI
        witnesses.append(_refine_bracket(fp_scalar, a, b, fp[i], fp[j]) % TWO_PI)
    return CrookednessReport(v, len(pairs), tuple(sorted(witnesses)), degenerate=degenerate)


def _count_many_smooth(knot: SmoothKnot, dirs: np.ndarray, grid_scale: float):
    ts, vel, speed = _smooth_grid(knot, grid_scale)
    counts = np.empty(len(dirs), dtype=np.int64)
    degenerate = np.zeros(len(dirs), dtype=bool)
    for lo in range(0, len(dirs), _CHUNK):
        D = dirs[lo:lo + _CHUNK]
        F = vel @ D.T
        absF = np.abs(F)
        scale = absF.max(axis=0)
        thr = FLAT_RTOL * scale
        rising = F > 0.0
        falling = np.roll(F, -1, axis=0) < 0.0
        counts[lo:lo + len(D)] = np.count_nonzero(rising & falling, axis=0)

        small = absF < thr
        prev = np.roll(absF, 1, axis=0)
        nxt = np.roll(absF, -1, axis=0)
        lm = (absF <= prev) & (absF <= nxt) & small
        sgn = np.sign(F)
        near_change = (np.roll(sgn, 1, axis=0) * np.roll(sgn, -1, axis=0)) <= 0
        degenerate[lo:lo + len(D)] = np.any(lm & ~near_change, axis=0)

        exact_zero = (absF <= 1e-14 * scale).any(axis=0) | (scale <= 1e-12 * speed)
        for k in np.nonzero(exact_zero)[0]:
            try:
                rep = crook_trig(knot, Direction.from_array(D[k]), grid_scale=grid_scale)
                counts[lo + k] = rep.count
                degenerate[lo + k] = rep.degenerate
            except DegenerateProjectionError:
                counts[lo + k] = 1
                degenerate[lo + k] = True
    return counts, degenerate


# ---------------------------------------------------------------------------
# piecewise paths


class _PathSamples:
    """Cyclic derivative-sample table for a piecewise chain.

    One row per straight piece (its constant derivative) and an inclusive
    endpoint grid per smooth arc, so junction maxima show up as sign
    changes between adjacent rows.
    """

    def __init__(self, knot: PiecewiseKnot, grid_scale: float):
        rows = []
        params = []
        flat_tol = []
        self.arc_slices = []
        pos = 0
        for idx, piece in enumerate(knot.pieces):
            if piece.is_segment:
                rows.append((piece.end - piece.start).reshape(1, 3))
                params.append(np.array([idx + 0.5]))
                flat_tol.append(np.array([PLATEAU_TOL]))
                pos += 1
            else:
                n = piece.sample_count(grid_scale)
                svals = np.linspace(0.0, 1.0, n + 1)
                rows.append(np.asarray(piece.velocity(svals)))
                params.append(idx + svals)
                flat_tol.append(np.full(n + 1, 0.0))  # filled per direction
                self.arc_slices.append((pos, pos + n + 1, idx))
                pos += n + 1
        self.matrix = np.vstack(rows)
        self.params = np.concatenate(params)
        self.seg_mask = np.concatenate(
            [np.full(len(p), tol[0] == PLATEAU_TOL, dtype=bool)
             for p, tol in zip(params, flat_tol)])
        self.speed = float(np.linalg.norm(self.matrix, axis=1).max())


def _path_samples(knot: PiecewiseKnot, grid_scale: float) -> _PathSamples:
    cache = knot.__dict__.setdefault("_path_cache", {})
    key = round(grid_scale, 9)
    if key not in cache:
        cache[key] = _PathSamples(knot, grid_scale)
    return cache[key]


def _path_flat_tols(ps: _PathSamples, scale) -> np.ndarray:
    tol = np.where(ps.seg_mask, PLATEAU_TOL, 1e-14 * scale)
    return tol


def crook_path(knot: PiecewiseKnot, v: Direction, *, grid_scale: float = 1.0) -> CrookednessReport:
    """Count maxima of a closed parametrized chain, per passage.

    An n-fold traversal multiplies counts by n and a self-tangency counts
    once for each passage through it, because the count follows the
    parameter circle rather than the image set.
    """
    ps = _path_samples(knot, grid_scale)
    fp = ps.matrix @ v.array
    scale = float(np.abs(fp).max())
    if scale <= 1e-12 * ps.speed:
        return CrookednessReport(v, 1, (0.0,), degenerate=False)
    sign = _classify(fp, _path_flat_tols(ps, scale))
    pairs = _cyclic_pairs(sign)
    if pairs is None:
        return CrookednessReport(v, 1, (0.0,), degenerate=False)
    if not pairs:
        return CrookednessReport(v, 1, (0.0,), degenerate=True)

    degenerate = bool(np.any((np.abs(fp) <= PLATEAU_TOL) & (fp != 0.0) & ps.seg_mask))
    for lo, hi, _ in ps.arc_slices:
        block = fp[lo:hi]
        if _zero_runs_flag(sign[lo:hi]) or _near_flat(block, scale, cyclic=False):
            degenerate = True
            break

    n_rows = len(fp)
    witnesses = []
    for i, j in pairs:
        same_arc = False
        for lo, hi, idx in ps.arc_slices:
            if lo <= i < hi and lo <= j < hi and j == i + 1:
                same_arc = True
                piece = knot.pieces[idx]
                s_a, s_b = ps.params[i] - idx, ps.params[j] - idx

                def fp_local(s, _p=piece, _v=v.array):
                    return float(np.asarray(_p.velocity(np.array([s])))[0] @ _v)

                root = _refine_bracket(fp_local, s_a, s_b, fp[i], fp[j])
                witnesses.append(idx + root)
                break
        if not same_arc:
            witnesses.append(float(ps.params[(i + 1) % n_rows]))
    return CrookednessReport(v, len(pairs), tuple(sorted(witnesses)), degenerate=degenerate)


def _count_many_path(knot: PiecewiseKnot, dirs: np.ndarray, grid_scale: float):
    ps = _path_samples(knot, grid_scale)
    counts = np.empty(len(dirs), dtype=np.int64)
    degenerate = np.zeros(len(dirs), dtype=bool)
    seg = ps.seg_mask
    for lo in range(0, len(dirs), _CHUNK):
        D = dirs[lo:lo + _CHUNK]
        F = ps.matrix @ D.T
        absF = np.abs(F)
        scale = absF.max(axis=0)
        rising = F > 0.0
        falling = np.roll(F, -1, axis=0) < 0.0
        counts[lo:lo + len(D)] = np.count_nonzero(rising & falling, axis=0)

        deg = np.zeros(len(D), dtype=bool)
        if seg.any():
            deg |= (absF[seg] < FLAT_RTOL * np.maximum(scale, 1e-300)).any(axis=0)
        for alo, ahi, _ in ps.arc_slices:
            block = absF[alo:ahi]
            sgn = np.sign(F[alo:ahi])
            small = block < FLAT_RTOL * scale
            if not small.any():
                continue
            lm = np.zeros_like(small)
            lm[1:-1] = (block[1:-1] <= block[:-2]) & (block[1:-1] <= block[2:]) & small[1:-1]
            near_change = np.zeros_like(small)
            near_change[1:-1] = (sgn[:-2] * sgn[2:]) <= 0
            deg |= np.any(lm & ~near_change, axis=0)
        degenerate[lo:lo + len(D)] |= deg

        needs_exact = (absF <= np.where(seg, PLATEAU_TOL, 0.0)[:, None]).any(axis=0)
        needs_exact |= (absF <= 1e-14 * scale).any(axis=0)
        needs_exact |= scale <= 1e-12 * ps.speed
        for k in np.nonzero(needs_exact)[0]:
            rep = crook_path(knot, Direction.from_array(D[k]), grid_scale=grid_scale)
            counts[lo + k] = rep.count
            degenerate[lo + k] = rep.degenerate
    return counts, degenerate


# ---------------------------------------------------------------------------
# subarcs


def _poly_subarc_heights(knot: PolyKnot, interval, v_arr):
    a, length = interval
    b = a + length
    hs = [float(np.asarray(knot.point(a)) @ v_arr)]
    params = [a]
    k = math.ceil(a)
    if k == a:
        k += 1
    while k < b:
        hs.append(float(knot.vertices[int(k % knot.n)] @ v_arr))
        params.append(float(k))
        k += 1
    hs.append(float(np.asarray(knot.point(b % knot.period)) @ v_arr))
    params.append(b)
    return np.array(hs), params


def _count_interval_poly(knot, interval, v, plateau_tol):
    h, params = _poly_subarc_heights(knot, interval, v.array)
    d = np.diff(h)
    sign = _classify(d, plateau_tol)
    pairs, end_flat = _linear_pairs(sign)
    inexact = bool(np.any((np.abs(d) <= plateau_tol) & (d != 0.0)))
    witnesses = [params[i + 1] % knot.period for i, _ in pairs]
    return len(pairs), witnesses, (end_flat or inexact)


def _smooth_interval_grid(knot, interval, grid_scale):
    a, length = interval
    n = max(32, int(math.ceil(knot.default_samples() * grid_scale * length / TWO_PI)))
    return np.linspace(a, a + length, n + 1)


def _count_interval_smooth(knot, interval, v, grid_scale):
    ts = _smooth_interval_grid(knot, interval, grid_scale)
    fp = np.asarray(knot.velocity(ts)) @ v.array
    scale = float(np.abs(fp).max())
    if scale == 0.0:
        return 0, [], True
    sign = _classify(fp, 1e-14 * scale)
    pairs, end_flat = _linear_pairs(sign)
    degenerate = end_flat or _zero_runs_flag(sign) or _near_flat(fp, scale, cyclic=False)
    fp_scalar = _scalar_fp(knot, v.array)
    witnesses = []
    for i, j in pairs:
        witnesses.append(_refine_bracket(fp_scalar, ts[i], ts[j], fp[i], fp[j]) % knot.period)
    return len(pairs), witnesses, degenerate


def _piecewise_interval_rows(knot: PiecewiseKnot, interval, grid_scale):
    a, length = interval
    rows = []
    tols = []
    t = a
    remaining = length
    while remaining > 1e-12:
        i = int(t % knot.period) % len(knot.pieces)
        s0 = t - int(t)
        take = min(1.0 - s0, remaining)
        piece = knot.pieces[i]
        if piece.is_segment:
            rows.append((piece.end - piece.start).reshape(1, 3))
            tols.append(np.array([PLATEAU_TOL]))
        else:
            n = max(8, int(piece.sample_count(grid_scale) * take))
            svals = np.linspace(s0, s0 + take, n + 1)
            rows.append(np.asarray(piece.velocity(svals)))
            tols.append(np.zeros(n + 1))
        t = (t + take) % knot.period
        remaining -= take
    return np.vstack(rows), np.concatenate(tols)


def _count_interval_path(knot, interval, v, grid_scale):
    mat, tol = _piecewise_interval_rows(knot, interval, grid_scale)
    fp = mat @ v.array
    scale = float(np.abs(fp).max())
    if scale == 0.0:
        return 0, [], True
    tol = np.where(tol > 0.0, tol, 1e-14 * scale)
    sign = _classify(fp, tol)
    pairs, end_flat = _linear_pairs(sign)
    degenerate = end_flat or _zero_runs_flag(sign)
    a, _ = interval
    witnesses = [(a + 0.0) for _ in pairs]  # representative only
    return len(pairs), sorted(witnesses), degenerate


def crook_subarc(knot, spec: SubarcSpec, v: Direction, *, grid_scale: float = 1.0,
                 plateau_tol: float = PLATEAU_TOL) -> CrookednessReport:
    """Count maxima of the restriction of the projection to an open subarc.

    The subarc's endpoints are excluded, so a height that keeps rising
    into a cut point contributes nothing there.
    """
    intervals = resolve_subarc(knot, spec)
    total = 0
    witnesses: list[float] = []
    degenerate = False
    for interval in intervals:
        if isinstance(knot, PolyKnot):
            c, w, d = _count_interval_poly(knot, interval, v, plateau_tol)
        elif isinstance(knot, PiecewiseKnot):
            c, w, d = _count_interval_path(knot, interval, v, grid_scale)
        elif isinstance(knot, SmoothKnot):
            c, w, d = _count_interval_smooth(knot, interval, v, grid_scale)
        else:
            raise RepresentationError(f"cannot restrict a {type(knot).__name__}")
        total += c
        witnesses.extend(w)
        degenerate = degenerate or d
    return CrookednessReport(v, total, tuple(sorted(witnesses)), degenerate=degenerate)


def count_many_subarc(knot, spec: SubarcSpec, dirs: np.ndarray, *, grid_scale: float = 1.0):
    """Vectorized subarc counts over an (M, 3) array of directions."""
    intervals = resolve_subarc(knot, spec)
    counts = np.zeros(len(dirs), dtype=np.int64)
    degenerate = np.zeros(len(dirs), dtype=bool)
    for interval in intervals:
        if isinstance(knot, PolyKnot):
            for k, d in enumerate(dirs):
                c, _, dd = _count_interval_poly(knot, interval, Direction.from_array(d), PLATEAU_TOL)
                counts[k] += c
                degenerate[k] |= dd
            continue
        ts = _smooth_interval_grid(knot, interval, grid_scale)
        vel = np.asarray(knot.velocity(ts))
        for lo in range(0, len(dirs), _CHUNK):
            D = dirs[lo:lo + _CHUNK]
            F = vel @ D.T
            absF = np.abs(F)
            scale = np.maximum(absF.max(axis=0), 1e-300)
            counts[lo:lo + len(D)] += np.count_nonzero((F[:-1] > 0.0) & (F[1:] < 0.0), axis=0)
            small = absF < FLAT_RTOL * scale
            lm = np.zeros_like(small)
            lm[1:-1] = (absF[1:-1] <= absF[:-2]) & (absF[1:-1] <= absF[2:]) & small[1:-1]
            sgn = np.sign(F)
            nc = np.zeros_like(small)
            nc[1:-1] = (sgn[:-2] * sgn[2:]) <= 0
            degenerate[lo:lo + len(D)] |= np.any(lm & ~nc, axis=0)
            exact = (absF <= 1e-14 * scale).any(axis=0)
            for k in np.nonzero(exact)[0]:
                c, _, dd = _count_interval_smooth(knot, interval, Direction.from_array(D[k]), grid_scale)
                counts[lo + k] = counts[lo + k] - np.count_nonzero(
                    (F[:-1, k] > 0.0) & (F[1:, k] < 0.0)) + c
                degenerate[lo + k] |= dd
    return counts, degenerate


# ---------------------------------------------------------------------------
# dispatch


def crook(knot, v: Direction, **kwargs) -> CrookednessReport:
    """Count local-maximum components for any knot kind."""
    if isinstance(knot, PolyKnot):
        return crook_poly(knot, v, **kwargs)
    if isinstance(knot, PiecewiseKnot):
        return crook_path(knot, v, **kwargs)
    if isinstance(knot, SmoothKnot):
        return crook_trig(knot, v, **kwargs)
    raise RepresentationError(f"no crookedness rule for {type(knot).__name__}")


def count_many(knot, dirs, *, grid_scale: float = 1.0, plateau_tol: float = PLATEAU_TOL):
    """Counts and degeneracy flags over an (M, 3) array of directions.

    Matches the single-direction functions exactly: any direction whose
    fast path is ambiguous (exact zeros, plateaus) is recounted with the
    careful scalar algorithm.
    """
    dirs = np.asarray(dirs, dtype=float)
    if isinstance(knot, PolyKnot):
        return _count_many_poly(knot, dirs, plateau_tol)
    if isinstance(knot, PiecewiseKnot):
        return _count_many_path(knot, dirs, grid_scale)
    if isinstance(knot, SmoothKnot):
        return _count_many_smooth(knot, dirs, grid_scale)
    raise RepresentationError(f"no crookedness rule for {type(knot).__name__}")


def thread_count() -> int:
    """Worker count for direction sweeps, from SUPBRIDGE_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("SUPBRIDGE_THREADS", "1")))
    except ValueError:
        return 1
