"""Explicit curves: the lifted circle, flattened closed braids, polygonal
torus knots, a nine-edge composite polygon, and geometric connected sums.

The flattened closed braid with n strands is

    K(t) = ((1 + e*l1(t)) cos nt, (1 + e*l1(t)) sin nt, e*l2(t) + cos^2 nt)

for smooth 2pi-periodic modulations (l1, l2) subject to three conditions:

* in-torus:  l1^2 + l2^2 < 1 everywhere,
* as-eta:    l1 = l2 = 0 on |t| <= 3pi/4n (the curve agrees with the
             lifted circle near the basepoint (1, 0, 1)),
* like-eta:  both locally constant and negative where 5pi/4n <= |t| <= pi
             and cos nt >= -1/sqrt(2).

Connected sums squash one summand flat, reflect the other, and join them
at the common basepoint image (1, 0, lam), producing a singular closed
chain whose self-tangency is later removed by straightening.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import (
    PiecewiseKnot,
    PolyKnot,
    SegmentPiece,
    SmoothArcPiece,
    SmoothKnot,
    SubarcSpec,
    TrigKnot,
    TWO_PI,
    apply_map,
    straighten,
)
from .errors import (
    AdmissibilityError,
    NumericalError,
    ParameterError,
    StructuralError,
)
from .geometry import Direction, phi_lambda, psi_lambda

BASEPOINT = np.array([1.0, 0.0, 1.0])

# Lower bound of w+ . v over the admissible spherical cap, attained at
# lam = 1/4 (see w_pm_sign_check).
WPM_LOWER = (10.0 - math.sqrt(89.0)) / math.sqrt(80.0)


# ---------------------------------------------------------------------------
# smooth periodic modulation functions


def _wrap(t):
    """Reduce to the principal interval [-pi, pi)."""
    return (np.asarray(t, dtype=float) + math.pi) % TWO_PI - math.pi


def _expm(x):
    """exp(-1/x) for x > 0, 0 otherwise; infinitely flat at 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0.0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(-1.0 / x[pos])
    return out


def _expm_d(x):
    """Derivative of exp(-1/x): exp(-1/x) / x^2 on x > 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0.0
    out[pos] = np.exp(-1.0 / x[pos]) / (x[pos] * x[pos])
    return out


def _smoothstep(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    f = _expm(x)
    g = _expm(1.0 - np.asarray(x, dtype=float))
    return f / (f + g)


def _smoothstep_d(x):
    x = np.asarray(x, dtype=float)
    f, g = _expm(x), _expm(1.0 - x)
    fd, gd = _expm_d(x), -_expm_d(1.0 - x)
    denom = (f + g) ** 2
    out = np.zeros_like(x)
    ok = denom > 0.0
    out[ok] = (fd[ok] * g[ok] - f[ok] * gd[ok]) / denom[ok]
    return out


def _bump(u):
    """C-infinity bump on (-1, 1) with peak value 1 at 0."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out


def _bump_d(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    s = 1.0 - ui * ui
    out[inside] = np.exp(1.0 - 1.0 / s) * (-2.0 * ui / (s * s))
    return out


class ConstantFn:
    """Constant modulation (useful mostly to exercise the validator)."""

    def __init__(self, c: float):
        self.c = float(c)

    def value(self, ts):
        return np.full_like(np.asarray(ts, dtype=float), self.c)

    def deriv(self, ts):
        return np.zeros_like(np.asarray(ts, dtype=float))


class WindowFn:
    """0 for |t| <= lo, 1 for |t| >= hi, smooth monotone ramp between.

    Periodic and smooth provided hi < pi, so the plateau reaches the far
    side of the circle.
    """

    def __init__(self, lo: float, hi: float):
        if not (0.0 < lo < hi < math.pi):
            raise ParameterError("window needs 0 < lo < hi < pi")
        self.lo = float(lo)
        self.hi = float(hi)

    def value(self, ts):
        u = np.abs(_wrap(ts))
        return _smoothstep((u - self.lo) / (self.hi - self.lo))

    def deriv(self, ts):
        w = _wrap(ts)
        u = np.abs(w)
        x = (u - self.lo) / (self.hi - self.lo)
        return _smoothstep_d(x) * np.sign(w) / (self.hi - self.lo)


class BumpOscFn:
    """amp * bump((t - center)/halfwidth) * sin(freq t + phase).

    Supported strictly inside (center - halfwidth, center + halfwidth) on
    the circle; identically zero elsewhere with all derivatives vanishing
    at the support boundary.
    """

    def __init__(self, center: float, halfwidth: float, amp: float,
                 freq: int = 1, phase: float = 0.0):
        if not (0.0 < halfwidth < math.pi):
            raise ParameterError("bump halfwidth must lie in (0, pi)")
        self.center = float(center)
        self.halfwidth = float(halfwidth)
        self.amp = float(amp)
        self.freq = int(freq)
        self.phase = float(phase)

    def value(self, ts):
        ts = np.asarray(ts, dtype=float)
        u = _wrap(ts - self.center) / self.halfwidth
        return self.amp * _bump(u) * np.sin(self.freq * ts + self.phase)

    def deriv(self, ts):
        ts = np.asarray(ts, dtype=float)
        u = _wrap(ts - self.center) / self.halfwidth
        osc = np.sin(self.freq * ts + self.phase)
        osc_d = self.freq * np.cos(self.freq * ts + self.phase)
        return self.amp * (_bump_d(u) / self.halfwidth * osc + _bump(u) * osc_d)


class ScaledFn:
    def __init__(self, c: float, fn):
        self.c = float(c)
        self.fn = fn

    def value(self, ts):
        return self.c * self.fn.value(ts)

    def deriv(self, ts):
        return self.c * self.fn.deriv(ts)


class SumFn:
    def __init__(self, *terms):
        self.terms = terms

    def value(self, ts):
        out = np.zeros_like(np.asarray(ts, dtype=float))
        for term in self.terms:
            out = out + term.value(ts)
        return out

    def deriv(self, ts):
        out = np.zeros_like(np.asarray(ts, dtype=float))
        for term in self.terms:
            out = out + term.deriv(ts)
        return out


# ---------------------------------------------------------------------------
# admissible modulation pairs


_VALIDATION_GRID = 8192


def _zone_masks(ts: np.ndarray, n: int):
    u = np.abs(_wrap(ts))
    zero_zone = u <= 3.0 * math.pi / (4.0 * n)
    const_zone = (u >= 5.0 * math.pi / (4.0 * n)) & (np.cos(n * ts) >= -1.0 / math.sqrt(2.0))
    return zero_zone, const_zone


def _cyclic_runs(mask: np.ndarray):
    """Maximal index runs of a cyclic boolean mask, as index arrays."""
    idx = np.nonzero(mask)[0]
    if len(idx) == 0:
        return []
    if len(idx) == len(mask):
        return [idx]
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    runs = np.split(idx, breaks + 1)
    if mask[0] and mask[-1] and len(runs) > 1:
        runs[0] = np.concatenate([runs[-1], runs[0]])
        runs.pop()
    return runs


@dataclass
class LambdaPair:
    """Admissible modulation pair (l1, l2) for an n-strand flattened braid.

    Construction validates the three admissibility conditions on a dense
    grid and raises :class:`AdmissibilityError` naming the violated one.
    """

    lam1: object
    lam2: object
    n: int
    descriptor: dict | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"strand count must be a positive integer, got {self.n!r}")
        ts = np.linspace(-math.pi, math.pi, _VALIDATION_GRID, endpoint=False)
        l1 = np.asarray(self.lam1.value(ts), dtype=float)
        l2 = np.asarray(self.lam2.value(ts), dtype=float)
        if np.max(l1 * l1 + l2 * l2) >= 1.0 - 1e-12:
            raise AdmissibilityError("in-torus", "l1^2 + l2^2 must stay below 1")
        zero_zone, const_zone = _zone_masks(ts, self.n)
        for name, vals in (("l1", l1), ("l2", l2)):
            if np.max(np.abs(vals[zero_zone])) > 1e-12:
                raise AdmissibilityError(
                    "as-eta", f"{name} must vanish for |t| <= 3pi/4n")
        for name, vals in (("l1", l1), ("l2", l2)):
            for run in _cyclic_runs(const_zone):
                seg = vals[run]
                if seg.max() - seg.min() > 1e-12:
                    raise AdmissibilityError(
                        "like-eta", f"{name} must be locally constant on the outer zone")
                if seg.max() >= -1e-12:
                    raise AdmissibilityError(
                        "like-eta", f"{name} must be negative on the outer zone")


def _free_windows(n: int, margin: float = 0.08):
    """Open parameter windows where the modulations are unconstrained."""
    ts = np.linspace(-math.pi, math.pi, _VALIDATION_GRID, endpoint=False)
    zero_zone, const_zone = _zone_masks(ts, n)
    free = ~zero_zone & ~const_zone
    step = TWO_PI / _VALIDATION_GRID
    windows = []
    for run in _cyclic_runs(free):
        length = len(run) * step
        # Run indices are cyclic-contiguous; reconstruct center from the
        # first entry to survive the wrap.
        start = ts[run[0]]
        center = _wrap(start + 0.5 * length)
        half = 0.5 * length * (1.0 - 2.0 * margin)
        if half > 0.02:
            windows.append((float(center), float(half)))
    return windows


def random_lambda_pair(n: int, seed: int = 0) -> LambdaPair:
    """Random admissible pair: a smooth negative shelf plus small bump
    oscillations confined to the unconstrained windows.  Amplitudes stay
    under 0.2, far inside the in-torus budget."""
    if n < 2:
        raise ParameterError("the generator needs n >= 2")
    rng = np.random.default_rng(seed)
    lo = 3.0 * math.pi / (4.0 * n)
    hi = 5.0 * math.pi / (4.0 * n)
    windows = _free_windows(n)
    fns = []
    for _ in range(2):
        shelf = rng.uniform(0.06, 0.14)
        terms = [ScaledFn(-shelf, WindowFn(lo, hi))]
        budget = 0.05
        k = rng.integers(1, min(3, len(windows)) + 1)
        chosen = rng.choice(len(windows), size=k, replace=False)
        for w in chosen:
            center, half = windows[int(w)]
            amp = float(rng.uniform(0.01, min(0.045, budget)))
            budget -= amp
            terms.append(BumpOscFn(center, half, amp,
                                   freq=int(rng.integers(1, 4)),
                                   phase=float(rng.uniform(0.0, TWO_PI))))
            if budget <= 0.01:
                break
        fns.append(SumFn(*terms))
    return LambdaPair(fns[0], fns[1], n,
                      descriptor={"kind": "random", "n": n, "seed": int(seed)})


# ---------------------------------------------------------------------------
# named curves


def eta() -> TrigKnot:
    """The lifted circle t -> (cos t, sin t, cos^2 t): the unit circle
    raised onto the parabolic sheet z = x^2."""
    return TrigKnot(
        const=(0.0, 0.0, 0.5),
        cos_coeffs=[(1.0, 0.0, 0.0), (0.0, 0.0, 0.5)],
        sin_coeffs=[(0.0, 1.0, 0.0), (0.0, 0.0, 0.0)],
        label="eta",
        meta={"construction": "eta"},
    )


def braided(pair: LambdaPair, epsilon: float) -> SmoothKnot:
    """Flattened closed braid with n strands at perturbation epsilon.

    epsilon = 0 degenerates to an n-fold traversal of the lifted circle;
    the result is then a parametrized covering path rather than an
    embedding, and counts are taken per passage.
    """
    if not isinstance(pair, LambdaPair):
        raise ParameterError("braided needs a validated LambdaPair")
    if not (0.0 <= epsilon <= 1.0):
        raise ParameterError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    n = pair.n
    lam1, lam2 = pair.lam1, pair.lam2

    def point_fn(ts):
        ts = np.asarray(ts, dtype=float)
        r = 1.0 + epsilon * lam1.value(ts)
        cn, sn = np.cos(n * ts), np.sin(n * ts)
        z = epsilon * lam2.value(ts) + cn * cn
        return np.stack([r * cn, r * sn, z], axis=-1)

    def velocity_fn(ts):
        ts = np.asarray(ts, dtype=float)
        r = 1.0 + epsilon * lam1.value(ts)
        rp = epsilon * lam1.deriv(ts)
        cn, sn = np.cos(n * ts), np.sin(n * ts)
        zp = epsilon * lam2.deriv(ts) - n * np.sin(2.0 * n * ts)
        return np.stack([rp * cn - n * r * sn, rp * sn + n * r * cn, zp], axis=-1)

    return SmoothKnot(
        point_fn, velocity_fn, degree_hint=2 * n + 2,
        label=f"braided(n={n}, eps={epsilon:g})",
        meta={"construction": "braided", "n": n, "epsilon": float(epsilon),
              "descriptor": pair.descriptor, "cover_fold": n if epsilon == 0.0 else 1},
    )


def nine_gon() -> PolyKnot:
    """Nine-edge polygon realizing a trefoil/figure-eight composite."""
    verts = [
        (-30.0, 0.0, -10.0),
        (10.0, 20.0, 30.0),
        (-27.0, -35.0, -70.0),
        (0.0, 30.0, 10.0),
        (0.0, -40.0, 10.0),
        (-4.0, -7.0, 8.0),
        (16.0, 6.0, -21.0),
        (-18.0, -32.0, 36.0),
        (30.0, 0.0, -10.0),
    ]
    return PolyKnot(verts, meta={"construction": "nine-gon"})


@dataclass(frozen=True)
class TorusSpec:
    """Torus-knot data: coprime winding numbers 2 <= p < q and a tube
    angle alpha in the open interval (pi p/q, 2 pi p/q).

    When alpha is omitted, a default inside the interval is chosen so the
    polygon's quadric residual stays under 1e-6: exact containment when
    2p < q < 3p, a hairline offset from the lower endpoint otherwise.
    """

    p: int
    q: int
    alpha: float | None = None

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise ParameterError("p and q must be integers")
        if not (2 <= self.p < self.q):
            raise ParameterError(f"need 2 <= p < q, got ({self.p}, {self.q})")
        if math.gcd(self.p, self.q) != 1:
            raise ParameterError(f"p and q must be coprime, got ({self.p}, {self.q})")
        lo, hi = self.angle_range
        if self.alpha is None:
            natural = math.pi * (self.q - self.p) / self.q
            alpha = natural if lo < natural < hi else lo * (1.0 + 1e-7)
            object.__setattr__(self, "alpha", alpha)
        elif not (lo < self.alpha < hi):
            raise ParameterError(
                f"alpha must lie in ({lo:.6f}, {hi:.6f}), got {self.alpha!r}")

    @property
    def angle_range(self) -> tuple[float, float]:
        return (math.pi * self.p / self.q, 2.0 * math.pi * self.p / self.q)

    @property
    def beta(self) -> float:
        return math.pi - self.alpha


def torus_polygon(spec, q: int | None = None, alpha: float | None = None) -> PolyKnot:
    """Polygonal (p, q) torus knot with 2q edges.

    q vertices sit on each of the unit circles z = +/-1: tops at angles
    2 pi j p / q starting from (1, 0, 1), bottoms interleaved halfway at
    (2j + 1) pi p / q.  Every edge then spans the angle pi p / q, so the
    polygon lies on the waist quadric matching that span; correctness is
    certified behaviorally (scan extremes, quadric residual).
    """
    if not isinstance(spec, TorusSpec):
        spec = TorusSpec(int(spec), int(q), alpha)
    p, q = spec.p, spec.q
    verts = []
    for j in range(q):
        top = 2.0 * math.pi * j * p / q
        bot = (2.0 * j + 1.0) * math.pi * p / q
        verts.append((math.cos(top), math.sin(top), 1.0))
        verts.append((math.cos(bot), math.sin(bot), -1.0))
    return PolyKnot(verts, meta={"construction": "torus-polygon",
                                 "p": p, "q": q, "alpha": spec.alpha})


def quadric_residual(knot: PolyKnot, spec: TorusSpec, samples: int = 33) -> float:
    """Worst distance of the polygon's edges from the pair of tube quadrics
    x^2 + y^2 - z^2 sin^2(theta/2) = cos^2(theta/2), theta in {alpha, beta}."""
    s = np.linspace(0.0, 1.0, samples)
    worst = 0.0
    for i in range(knot.n):
        a = knot.vertices[i]
        b = knot.vertices[(i + 1) % knot.n]
        pts = (1.0 - s)[:, None] * a + s[:, None] * b
        r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
        z2 = pts[:, 2] ** 2
        best = None
        for theta in (spec.alpha, spec.beta):
            sin2 = math.sin(theta / 2.0) ** 2
            res = float(np.max(np.abs(r2 - z2 * sin2 - (1.0 - sin2))))
            best = res if best is None else min(best, res)
        worst = max(worst, best)
    return worst


# ---------------------------------------------------------------------------
# connected sums


def _check_basepoint(knot) -> None:
    start = np.asarray(knot.point(0.0), dtype=float)
    if np.linalg.norm(start - BASEPOINT) > 1e-9:
        raise StructuralError(
            f"summand must pass through (1, 0, 1) at parameter 0, starts at {start.tolist()}")


def _forward_pieces(knot):
    if isinstance(knot, PolyKnot):
        v = knot.vertices
        return [SegmentPiece(v[i], v[(i + 1) % knot.n]) for i in range(knot.n)]
    return [SmoothArcPiece(knot, 0.0, TWO_PI)]


def _backward_pieces(knot):
    if isinstance(knot, PolyKnot):
        v = knot.vertices
        order = [0] + list(range(knot.n - 1, 0, -1))
        return [SegmentPiece(v[order[i]], v[order[(i + 1) % knot.n]])
                for i in range(knot.n)]
    return [SmoothArcPiece(knot, 0.0, -TWO_PI)]


def connected_sum(k1, k2, lam: float) -> PiecewiseKnot:
    """Singular connected-sum chain joining two basepointed knots.

    The first summand is squashed to height lam, the second squashed and
    half-turned to meet it; both pass through (1, 0, lam), giving a closed
    chain with one marked self-tangency there.  Requires 0 < lam <= 1/4
    and both inputs through (1, 0, 1) at parameter 0.
    """
    if not (0.0 < lam <= 0.25):
        raise ParameterError(f"lam must lie in (0, 1/4], got {lam!r}")
    _check_basepoint(k1)
    _check_basepoint(k2)
    k1m = apply_map(k1, phi_lambda(lam))
    k2m = apply_map(k2, psi_lambda(lam))
    part1 = _forward_pieces(k1m)
    pieces = part1 + _backward_pieces(k2m)
    meta = {
        "construction": "connected-sum",
        "lam": float(lam),
        "n1": k1.meta.get("n"),
        "n2": k2.meta.get("n"),
        "k1_mapped": k1m,
        "k2_mapped": k2m,
        "split": len(part1),
        "k1_meta": dict(k1.meta),
        "k2_meta": dict(k2.meta),
    }
    singular = np.array([1.0, 0.0, lam])
    return PiecewiseKnot(pieces, singular_points=[singular], meta=meta)


def s_plus_endpoints(lam: float):
    """Endpoints of the first replacement segment: (0,-1,0) and
    (1+lam, 1, 1+lam)."""
    return np.array([0.0, -1.0, 0.0]), np.array([1.0 + lam, 1.0, 1.0 + lam])


def s_minus_endpoints(lam: float):
    """Endpoints of the second replacement segment: (0,1,0) and
    (1+lam, -1, 1+lam)."""
    return np.array([0.0, 1.0, 0.0]), np.array([1.0 + lam, -1.0, 1.0 + lam])


def bar_k_lambda(k_lambda: PiecewiseKnot) -> PiecewiseKnot:
    """Replace both basepoint arcs of a braided connected sum by straight
    segments, leaving a single self-crossing at their common midpoint
    ((1+lam)/2, 0, (1+lam)/2).

    Requires a chain built by :func:`connected_sum` from two flattened
    braids; the strand arcs near the basepoint are exact copies of the
    lifted circle there, so the cut parameters are known in closed form.
    """
    meta = k_lambda.meta
    if meta.get("construction") != "connected-sum":
        raise StructuralError("expected a connected-sum chain")
    n1, n2 = meta.get("n1"), meta.get("n2")
    k1m, k2m = meta.get("k1_mapped"), meta.get("k2_mapped")
    if not (isinstance(k1m, SmoothKnot) and isinstance(k2m, SmoothKnot) and n1 and n2):
        raise StructuralError("segment replacement needs braided summands")
    lam = meta["lam"]

    arc_a = SmoothArcPiece(k1m, math.pi / (2.0 * n1), TWO_PI - math.pi / (2.0 * n1))
    arc_b = SmoothArcPiece(k2m, -math.pi / (2.0 * n2), -TWO_PI + math.pi / (2.0 * n2))
    sp0, sp1 = s_plus_endpoints(lam)
    sm0, sm1 = s_minus_endpoints(lam)
    mid = 0.5 * (sp0 + sp1)
    pieces = [
        arc_a,
        SegmentPiece(sp0, mid),
        SegmentPiece(mid, sp1),
        arc_b,
        SegmentPiece(sm1, mid),
        SegmentPiece(mid, sm0),
    ]
    new_meta = {
        "construction": "bar-k-lambda",
        "lam": lam,
        "n1": n1,
        "n2": n2,
        "k1_mapped": k1m,
        "k2_mapped": k2m,
        "parent": meta,
    }
    return PiecewiseKnot(pieces, singular_points=[mid], meta=new_meta)


def straightened_sum(bar: PiecewiseKnot, epsilon: float = 0.05) -> PiecewiseKnot:
    """Embedded composite knot: straighten the first replacement segment
    together with a short lead-in arc, removing the self-crossing.

    ``epsilon`` is the angular length of the lead-in along the first
    summand (small, below pi/4 to stay inside the unmodulated zone).
    """
    if bar.meta.get("construction") != "bar-k-lambda":
        raise StructuralError("expected a segment-replaced connected sum")
    if not (0.0 < epsilon < math.pi / 4.0):
        raise ParameterError("lead-in length must lie in (0, pi/4)")
    n1 = bar.meta["n1"]
    u0 = math.pi / (2.0 * n1)
    u1 = TWO_PI - u0
    u_cut = TWO_PI - (math.pi / 2.0 + epsilon) / n1
    s_cut = (u_cut - u0) / (u1 - u0)
    return straighten(bar, SubarcSpec.interval(s_cut, 3.0))


def resolve_singular(k_lambda: PiecewiseKnot, delta: float = 0.1) -> PiecewiseKnot:
    """Embedded representative of a connected sum: straighten a short arc
    through one passage of the marked self-tangency.

    ``delta`` is the chain-parameter margin cut on each side of the
    junction where the two summands meet.
    """
    meta = k_lambda.meta
    if meta.get("construction") != "connected-sum":
        raise StructuralError("expected a connected-sum chain")
    if not (0.0 < delta < 0.5):
        raise ParameterError("delta must lie in (0, 1/2)")
    split = meta["split"]
    return straighten(k_lambda, SubarcSpec.interval(split - delta, split + delta))


# ---------------------------------------------------------------------------
# segment direction bounds


def w_plus(lam: float) -> np.ndarray:
    """Direction vector (1+lam, 2, 1+lam) of the first replacement segment."""
    _check_quarter(lam)
    return np.array([1.0 + lam, 2.0, 1.0 + lam])


def w_minus(lam: float) -> np.ndarray:
    """Direction vector -(1+lam, -2, 1+lam)... the second segment's
    direction, -(1+lam)(i+k) + 2j."""
    _check_quarter(lam)
    return np.array([-(1.0 + lam), 2.0, -(1.0 + lam)])


def _check_quarter(lam: float) -> None:
    if not (0.0 < lam <= 0.25):
        raise ParameterError(f"lam must lie in (0, 1/4], got {lam!r}")


def w_pm_sign_check(lam: float, v: Direction) -> tuple[float, float]:
    """Dot products (w+ . v, w- . v) of the segment directions with v.

    For v3 >= (4 lam^2 + 1)^(-1/2) the first is at least
    (10 - sqrt(89))/sqrt(80) > 0 and the second at most its negative, so
    both segments slope strictly across such directions.  Equality occurs
    at lam = 1/4 with v = (-sqrt(5/89), -/+ 8/sqrt(445), 2/sqrt(5)).
    """
    wp = w_plus(lam)
    wm = w_minus(lam)
    return float(v.dot(wp)), float(v.dot(wm))


def wpm_equality_direction(sign: int = 1) -> Direction:
    """Cap direction attaining the w+ (sign=+1) or w- (sign=-1) bound at
    lam = 1/4."""
    y = -8.0 / math.sqrt(445.0) if sign >= 0 else 8.0 / math.sqrt(445.0)
    return Direction.normalized(-math.sqrt(5.0 / 89.0), y, 2.0 / math.sqrt(5.0))


# ---------------------------------------------------------------------------
# empirical perturbation size


def equatorial_band_directions(count: int, band: float = 0.05, seed: int = 0) -> np.ndarray:
    """Deterministic directions with |v3| < band, spread in azimuth."""
    rng = np.random.default_rng(seed)
    z = rng.uniform(-band * 0.9, band * 0.9, size=count)
    az = rng.uniform(0.0, TWO_PI, size=count)
    r = np.sqrt(1.0 - z * z)
    return np.stack([r * np.cos(az), r * np.sin(az), z], axis=1)


def find_epsilon0(pair: LambdaPair, *, start: float = 0.01, max_halvings: int = 10,
                  scan_size: int = 2000, band_samples: int = 120) -> float:
    """Largest epsilon = start / 2^k at which the flattened braid behaves
    like its limit: every direction in the |v3| < 0.05 band counts n, and
    the sphere-scan maximum is 2n.  Existence is a limit statement, so the
    returned value is an implementation artifact, not a constant of the
    construction."""
    from .crookedness import count_many
    from .search import SphereGrid, scan_max

    n = pair.n
    band = equatorial_band_directions(band_samples, seed=91)
    eps = start
    for _ in range(max_halvings):
        knot = braided(pair, eps)
        counts, degen = count_many(knot, band)
        if np.all(counts[~degen] == n) and not degen.all():
            result = scan_max(knot, SphereGrid(scan_size, refine_rounds=6))
            if result.value == 2 * n:
                return eps
        eps *= 0.5
    raise NumericalError("no admissible perturbation size found by halving")
