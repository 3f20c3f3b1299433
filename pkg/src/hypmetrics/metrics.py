"""The hyperbolization metric and the hyperbolic-type metrics it is
compared against.

All metrics share the signature ``metric(domain, x, y) -> float`` with
x, y interior points.  Closed forms are evaluated directly; supremum
definitions go through :func:`hypmetrics.geometry.boundary_sup`.  The
hyperbolic metric rho is special: it exists only on the unit ball and
the upper half-space, where it also coincides with the boundary-pair
metric delta.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .geometry import (
    INFINITY,
    BoundaryCardinalityError,
    DistancePairFunctional,
    FiniteComplement,
    ParameterError,
    UnitBall,
    UpperHalfSpace,
    boundary_sup,
    cross_ratio,
    is_infinity,
    require_member,
)

__all__ = [
    "MetricId",
    "u_metric",
    "rho",
    "rho_axial",
    "j_tilde",
    "j_metric",
    "delta_metric",
    "delta_pair_form",
    "alpha_metric",
    "alpha_pair_form",
    "eta_metric",
    "cassinian",
    "triangular_ratio",
    "evaluate_metric",
    "evaluable_metrics",
]


class MetricId(str, Enum):
    U = "u"
    RHO = "rho"
    J_TILDE = "j_tilde"
    J = "j"
    DELTA = "delta"
    ALPHA = "alpha"
    ETA = "eta"
    CASSINIAN = "cassinian"
    TRIANGULAR = "triangular"


def _pair(domain, x, y):
    x = require_member(domain, x, "x")
    y = require_member(domain, y, "y")
    return x, y


def _sep(x, y) -> float:
    d = x - y
    return math.sqrt(float(np.dot(d, d)))


def u_metric(domain, x, y) -> float:
    """Gromov hyperbolization metric.

    u(x, y) = 2 log[(|x-y| + max{d(x), d(y)}) / sqrt(d(x) d(y))]
    with d the distance to the boundary.
    """
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    dx = domain.distance_to_boundary(x)
    dy = domain.distance_to_boundary(y)
    r = _sep(x, y)
    return 2.0 * math.log((r + max(dx, dy)) / math.sqrt(dx * dy))


def rho(domain, x, y) -> float:
    """Hyperbolic metric of the unit ball or the upper half-space."""
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    r = _sep(x, y)
    if isinstance(domain, UnitBall):
        nx = float(np.linalg.norm(x))
        ny = float(np.linalg.norm(y))
        # (1 - |x|^2) factored to keep precision near the boundary
        t = (1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny)
        return 2.0 * math.log((math.sqrt(r * r + t) + r) / math.sqrt(t))
    if isinstance(domain, UpperHalfSpace):
        h = 2.0 * float(x[-1]) * float(y[-1])
        r2 = r * r
        return math.log1p((r2 + math.sqrt(r2 * r2 + 2.0 * h * r2)) / h)
    raise ParameterError("rho is defined on the unit ball and the upper half-space only")


def rho_axial(domain, a: float, b: float) -> float:
    """Hyperbolic distance between two points of the distinguished axis.

    For the ball the points are a*e1 and b*e1 with -1 < a, b < 1; for the
    half-space they are a*en and b*en with a, b > 0.  Closed forms, used
    as independent references for :func:`rho`.
    """
    a = float(a)
    b = float(b)
    if isinstance(domain, UnitBall):
        if not (-1.0 < a < 1.0 and -1.0 < b < 1.0):
            raise ParameterError("axial ball coordinates must lie in (-1, 1)")
        lo, hi = min(a, b), max(a, b)
        return math.log(((1.0 + hi) / (1.0 - hi)) * ((1.0 - lo) / (1.0 + lo)))
    if isinstance(domain, UpperHalfSpace):
        if not (a > 0.0 and b > 0.0):
            raise ParameterError("axial half-space heights must be positive")
        lo, hi = min(a, b), max(a, b)
        return math.log(hi / lo)
    raise ParameterError("rho_axial is defined on the unit ball and the upper half-space only")


def j_tilde(domain, x, y) -> float:
    """Distance-ratio metric, product form:
    0.5 log[(1 + |x-y|/d(x)) (1 + |x-y|/d(y))].
    """
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    r = _sep(x, y)
    dx = domain.distance_to_boundary(x)
    dy = domain.distance_to_boundary(y)
    return 0.5 * (math.log1p(r / dx) + math.log1p(r / dy))


def j_metric(domain, x, y) -> float:
    """Distance-ratio metric, min form: log(1 + |x-y| / min{d(x), d(y)})."""
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    r = _sep(x, y)
    return math.log1p(r / min(domain.distance_to_boundary(x), domain.distance_to_boundary(y)))


def delta_metric(domain, x, y) -> float:
    """Boundary-pair (Seittenranta) metric log(1 + sup |p,x,q,y|).

    On the ball and the half-space the supremum reproduces the hyperbolic
    metric exactly and rho is returned directly; the numerical supremum
    is kept separately in :func:`delta_pair_form` as a cross-check.  On a
    finite complement the boundary is a finite point set (plus infinity
    when flagged) and the supremum is an exact maximum.
    """
    if isinstance(domain, (UnitBall, UpperHalfSpace)):
        return rho(domain, x, y)
    if domain.boundary_cardinality() < 2:
        raise BoundaryCardinalityError(
            "delta requires at least two boundary points (removed set of size >= 2, "
            "or the infinity flag)"
        )
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    bnd: list = list(domain.removed)
    if domain.includes_infinity_boundary:
        bnd.append(INFINITY)
    best = 0.0
    for p in bnd:
        for q in bnd:
            if is_infinity(p) and is_infinity(q):
                continue
            v = cross_ratio(p, x, q, y)
            if v > best:
                best = v
    return math.log1p(best)


def _axis_sups(domain, x, y, *, at_infinity):
    """Suprema of log(|p-y|/|p-x|) and of log(|p-x|/|p-y|) over the finite
    boundary, with an optional candidate value at infinity."""
    a, _ = boundary_sup(
        domain, DistancePairFunctional("log_dy_over_dx", x, y), x, y, value_at_infinity=at_infinity
    )
    b, _ = boundary_sup(
        domain, DistancePairFunctional("log_dx_over_dy", x, y), x, y, value_at_infinity=at_infinity
    )
    return a, b


def alpha_metric(domain, x, y) -> float:
    """Apollonian metric sup_{p,q} log |p,x,y,q|, evaluated as the sum of
    the two single-boundary-point suprema the cross-ratio splits into.

    The point at infinity, when it belongs to the boundary, contributes
    value 0 to each factor.
    """
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    a, b = _axis_sups(domain, x, y, at_infinity=0.0)
    return a + b


def alpha_pair_form(domain, x, y) -> float:
    """Apollonian metric evaluated as a genuine supremum over boundary
    pairs (p, q) of log |p,x,y,q|.

    The objective separates, so the joint supremum is assembled from the
    finite single-point suprema A, B by case analysis: finite pairs give
    A + B, pairs with one entry at infinity give A or B alone, and
    coincident pairs give 0.  Pairs with both entries at infinity are not
    admissible.
    """
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    if isinstance(domain, FiniteComplement):
        bnd: list = list(domain.removed)
        if domain.includes_infinity_boundary:
            bnd.append(INFINITY)
        best = -math.inf
        for p in bnd:
            for q in bnd:
                if is_infinity(p) and is_infinity(q):
                    continue
                best = max(best, math.log(cross_ratio(p, x, y, q)))
        return best
    a, b = _axis_sups(domain, x, y, at_infinity=None)
    candidates = [a + b, 0.0]
    if isinstance(domain, UpperHalfSpace):
        candidates += [a, b]
    return max(candidates)


def eta_metric(domain, x, y) -> float:
    """Quasihyperbolic-type boundary metric sup_p |log(|x-p| / |y-p|)|,
    the supremum running over the finite boundary."""
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    v, _ = boundary_sup(domain, DistancePairFunctional("abs_log_ratio", x, y), x, y)
    return v


def cassinian(domain, x, y) -> float:
    """Cassinian metric sup_p |x-y| / (|x-p| |y-p|) over the finite boundary."""
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    r = _sep(x, y)
    v, _ = boundary_sup(domain, DistancePairFunctional("inv_product", x, y, scale=r), x, y)
    return v


def triangular_ratio(domain, x, y) -> float:
    """Triangular ratio metric sup_p |x-y| / (|x-p| + |y-p|), a value in
    [0, 1] (1 exactly when the segment xy meets the boundary)."""
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    r = _sep(x, y)
    v, _ = boundary_sup(domain, DistancePairFunctional("inv_sum", x, y, scale=r), x, y)
    return min(v, 1.0)


def delta_pair_form(domain, x, y, *, coarse: int = 192, rounds: int = 14) -> float:
    """Boundary-pair metric via direct two-parameter optimization.

    Cross-check for the identity delta == rho on the ball and half-space;
    on finite complements it repeats the exact maximum of
    :func:`delta_metric`.  The two boundary parameters are optimized on a
    coarse product grid followed by coordinate-ascent golden refinement.
    """
    if isinstance(domain, FiniteComplement):
        return delta_metric(domain, x, y)
    x, y = _pair(domain, x, y)
    if np.array_equal(x, y):
        return 0.0
    r = _sep(x, y)
    if isinstance(domain, UnitBall):
        best = _delta_grid_ball(domain, x, y, r, coarse, rounds)
    else:
        best = _delta_grid_halfspace(domain, x, y, r, coarse, rounds)
    return math.log1p(best)


def _coordinate_ascent(g, t0, s0, widths, rounds):
    from .geometry import _golden_max

    t, s = t0, s0
    best = g(t, s)
    wt, ws = widths
    for _ in range(rounds):
        t, v = _golden_max(lambda a: g(a, s), t - wt, t + wt, 1e-13 * max(1.0, abs(t)))
        best = max(best, v)
        s, v = _golden_max(lambda a: g(t, a), s - ws, s + ws, 1e-13 * max(1.0, abs(s)))
        best = max(best, v)
        # diagonal passes keep the ascent moving along coupled ridges,
        # where pure coordinate steps stall
        u, v = _golden_max(lambda a: g(t + a * wt, s + a * ws), -1.0, 1.0, 1e-13)
        t, s = t + u * wt, s + u * ws
        best = max(best, v)
        u, v = _golden_max(lambda a: g(t + a * wt, s - a * ws), -1.0, 1.0, 1e-13)
        t, s = t + u * wt, s - u * ws
        best = max(best, v)
        wt *= 0.5
        ws *= 0.5
    return best


def _delta_grid_ball(domain, x, y, r, coarse, rounds):
    from .geometry import _plane_basis, circle_distance, circle_gauge

    u1, u2 = _plane_basis(x, y)
    rx, tx = circle_gauge(float(np.dot(x, u1)), float(np.dot(x, u2)))
    ry, ty = circle_gauge(float(np.dot(y, u1)), float(np.dot(y, u2)))
    th = np.linspace(-math.pi, math.pi, coarse, endpoint=False)
    dpx = np.maximum(circle_distance(rx, tx, th), 1e-300)
    dqy = np.maximum(circle_distance(ry, ty, th), 1e-300)
    # |p - q| = 2 |sin((t - s)/2)| for p, q on the unit circle of the plane
    dpq = 2.0 * np.abs(np.sin(0.5 * (th[:, None] - th[None, :])))
    grid = (dpq * r) / (dpx[:, None] * dqy[None, :])
    i, k = np.unravel_index(int(np.argmax(grid)), grid.shape)

    def g(t, s):
        dp = max(float(circle_distance(rx, tx, t)), 1e-300)
        dq = max(float(circle_distance(ry, ty, s)), 1e-300)
        return 2.0 * abs(math.sin(0.5 * (t - s))) * r / (dp * dq)

    h = 2.0 * math.pi / coarse
    best = _coordinate_ascent(g, float(th[i]), float(th[k]), (h, h), rounds)
    # peaks hide near the boundary projections of x and y when they are
    # close to the sphere; seed a second ascent there
    if rx > 1e-12 and ry > 1e-12:
        best = max(best, _coordinate_ascent(g, tx, ty, (h, h), rounds))
    return max(best, float(grid[i, k]))


def _delta_grid_halfspace(domain, x, y, r, coarse, rounds):
    hx, hy = float(x[-1]), float(y[-1])
    horiz = y - x
    horiz[-1] = 0.0
    ell = float(np.linalg.norm(horiz))
    scale = ell + hx + hy
    th = -math.pi + (np.arange(coarse) + 0.5) * (2.0 * math.pi / coarse)
    taus = scale * np.tan(0.5 * th)
    dpx = np.hypot(taus, hx)
    dqy = np.hypot(taus - ell, hy)
    dpq = np.abs(taus[:, None] - taus[None, :])
    grid = (dpq * r) / (dpx[:, None] * dqy[None, :])
    i, k = np.unravel_index(int(np.argmax(grid)), grid.shape)

    def g(t, s):
        return abs(t - s) * r / (math.hypot(t, hx) * math.hypot(s - ell, hy))

    # grid cells widen like scale*(1 + (tau/scale)^2); ascent windows must
    # span at least one cell or far-out peaks stay out of reach
    step = 2.0 * math.pi / coarse
    wt = max(abs(taus[i]) * 0.05, hx, 0.6 * scale * (1.0 + (taus[i] / scale) ** 2) * step)
    ws = max(abs(taus[k]) * 0.05, hy, 0.6 * scale * (1.0 + (taus[k] / scale) ** 2) * step)
    best = _coordinate_ascent(g, float(taus[i]), float(taus[k]), (wt, ws), rounds)
    best = max(best, _coordinate_ascent(g, 0.0, ell, (4.0 * hx, 4.0 * hy), rounds))
    best = max(best, float(grid[i, k]))
    # one boundary entry at infinity: the surviving factors peak at the
    # projections of x and y
    return max(best, r / hx, r / hy)


_DISPATCH = {
    MetricId.U: u_metric,
    MetricId.RHO: rho,
    MetricId.J_TILDE: j_tilde,
    MetricId.J: j_metric,
    MetricId.DELTA: delta_metric,
    MetricId.ALPHA: alpha_metric,
    MetricId.ETA: eta_metric,
    MetricId.CASSINIAN: cassinian,
    MetricId.TRIANGULAR: triangular_ratio,
}


def evaluable_metrics(domain) -> tuple[MetricId, ...]:
    """Metrics defined on the given domain."""
    if isinstance(domain, (UnitBall, UpperHalfSpace)):
        return tuple(MetricId)
    return tuple(m for m in MetricId if m is not MetricId.RHO)


def evaluate_metric(domain, metric, x, y) -> float:
    try:
        mid = MetricId(metric)
    except ValueError:
        names = ", ".join(m.value for m in MetricId)
        raise ParameterError(f"unknown metric {metric!r}; expected one of: {names}") from None
    if mid not in evaluable_metrics(domain):
        raise ParameterError(f"metric {mid.value!r} is not defined on {domain!r}")
    return _DISPATCH[mid](domain, x, y)
