"""Extended Euclidean geometry: finite points plus a point at infinity,
the three canonical domains, the absolute cross-ratio, and a boundary
supremum engine.

Every metric in this package is either a closed-form expression in
boundary distances or a supremum of a functional over the domain
boundary; this module owns both ingredients.  The supremum engine uses
the rotational symmetry of the ball and the half-space to reduce the
search to one parameter: a coarse scan locates candidate brackets and
golden-section refinement polishes each of them.  The result is a
certified lower bound on the true supremum and is treated as the
supremum by callers.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "INFINITY",
    "is_infinity",
    "as_point",
    "UnitBall",
    "UpperHalfSpace",
    "FiniteComplement",
    "Domain",
    "distance_to_boundary",
    "cross_ratio",
    "BoundaryWitness",
    "DistancePairFunctional",
    "boundary_sup",
    "sup_refinement",
    "DomainMembershipError",
    "BoundaryCardinalityError",
    "ParameterError",
]

# Engine knobs.  The coarse scan density and the refinement tolerance are
# part of the verification contract and are echoed into reports.
COARSE_SAMPLES = 1024
PARAM_TOL = 1e-12
_MAX_BRACKETS = 4
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
# log-scale rise bound across one coarse cell, poles excluded; brackets
# sampled further below the incumbent than this cannot win
_BRACKET_MARGIN = 2.5
# refinement windows stop once the remaining width cannot move the value
# by more than ~(factor * param_tol)^2 at the local curvature scale
# (1/d^2 near a pole at boundary distance d, 1/cell^2 elsewhere); tied to
# param_tol so tightened refinement contexts tighten it too
_ADAPTIVE_TOL_FACTOR = 1e5


@contextmanager
def sup_refinement(coarse: int = 8192, param_tol: float = 1e-13):
    """Temporarily raise the engine's scan density and tolerance.

    Used to re-examine borderline inequality violations before reporting
    them.  Swaps module-level defaults, so it is process-global; do not
    nest across threads.
    """
    global COARSE_SAMPLES, PARAM_TOL
    saved = (COARSE_SAMPLES, PARAM_TOL)
    COARSE_SAMPLES, PARAM_TOL = int(coarse), float(param_tol)
    try:
        yield
    finally:
        COARSE_SAMPLES, PARAM_TOL = saved


class DomainMembershipError(ValueError):
    """A point lies outside the domain it was paired with."""


class BoundaryCardinalityError(ValueError):
    """The domain boundary is too small for the requested quantity."""


class ParameterError(ValueError):
    """A numeric argument is outside its admissible range."""


class _Infinity:
    """Tagged point at infinity of the extended space.

    A dedicated singleton, never a coordinate encoding: arithmetic on it
    is a bug by construction.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


def is_infinity(p) -> bool:
    return isinstance(p, _Infinity)


def as_point(p, dim: int | None = None) -> np.ndarray:
    """Coerce ``p`` to a finite point of R^n, n >= 2.

    Rejects NaN and infinite coordinates; INFINITY is not accepted here,
    callers that allow it must branch before coercing.
    """
    if is_infinity(p):
        raise ParameterError("expected a finite point, got INFINITY")
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ParameterError(f"a point must be a vector of dimension >= 2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"point has non-finite coordinates: {arr!r}")
    if dim is not None and arr.size != dim:
        raise ParameterError(f"point of dimension {arr.size} used with a domain of dimension {dim}")
    return arr


def _dist(a: np.ndarray, b: np.ndarray) -> float:
    d = a - b
    return math.sqrt(float(np.dot(d, d)))


# ---------------------------------------------------------------------------
# Domains


@dataclass(frozen=True)
class UnitBall:
    """Open unit ball B^n = {|x| < 1}."""

    dim: int
    convex = True

    def __post_init__(self):
        if self.dim < 2:
            raise ParameterError("domains require dimension >= 2")

    def contains(self, x) -> bool:
        x = as_point(x, self.dim)
        return float(np.linalg.norm(x)) < 1.0

    def distance_to_boundary(self, x) -> float:
        return 1.0 - float(np.linalg.norm(as_point(x, self.dim)))

    def __repr__(self) -> str:
        return f"UnitBall(dim={self.dim})"


@dataclass(frozen=True)
class UpperHalfSpace:
    """Open upper half-space H^n = {x_n > 0}."""

    dim: int
    convex = True

    def __post_init__(self):
        if self.dim < 2:
            raise ParameterError("domains require dimension >= 2")

    def contains(self, x) -> bool:
        x = as_point(x, self.dim)
        return float(x[-1]) > 0.0

    def distance_to_boundary(self, x) -> float:
        return float(as_point(x, self.dim)[-1])

    def __repr__(self) -> str:
        return f"UpperHalfSpace(dim={self.dim})"


class FiniteComplement:
    """R^n with a nonempty finite set of points removed.

    The removed points are the finite boundary.  Topologically the point
    at infinity is a boundary point as well whenever the domain is viewed
    inside extended space; ``includes_infinity_boundary`` records whether
    the boundary-pair metrics (delta, alpha) may use it.  It defaults to
    True because that is the honest boundary of an unbounded domain.
    """

    convex = False

    def __init__(self, dim: int, removed, includes_infinity_boundary: bool = True):
        if dim < 2:
            raise ParameterError("domains require dimension >= 2")
        pts = tuple(as_point(p, dim) for p in removed)
        if not pts:
            raise BoundaryCardinalityError("FiniteComplement requires at least one removed point")
        for i in range(len(pts)):
            for k in range(i + 1, len(pts)):
                if np.array_equal(pts[i], pts[k]):
                    raise ParameterError("removed points must be pairwise distinct")
        for p in pts:
            p.setflags(write=False)
        self.dim = dim
        self.removed = pts
        self.includes_infinity_boundary = bool(includes_infinity_boundary)

    def contains(self, x) -> bool:
        x = as_point(x, self.dim)
        return all(not np.array_equal(x, p) for p in self.removed)

    def distance_to_boundary(self, x) -> float:
        x = as_point(x, self.dim)
        return min(_dist(x, p) for p in self.removed)

    def boundary_cardinality(self) -> int:
        return len(self.removed) + (1 if self.includes_infinity_boundary else 0)

    def __repr__(self) -> str:
        pts = ", ".join(str(list(p)) for p in self.removed)
        inf = ", +inf" if self.includes_infinity_boundary else ""
        return f"FiniteComplement(dim={self.dim}, removed=[{pts}]{inf})"


Domain = UnitBall | UpperHalfSpace | FiniteComplement


def require_member(domain: Domain, x, name: str = "point") -> np.ndarray:
    """Validate membership and return the coerced point."""
    x = as_point(x, domain.dim)
    if not domain.contains(x):
        raise DomainMembershipError(f"{name} {list(x)} is not in {domain!r}")
    return x


def distance_to_boundary(domain: Domain, x) -> float:
    """Euclidean distance from an interior point to the finite boundary."""
    x = require_member(domain, x)
    return domain.distance_to_boundary(x)


def complement_in_sphere(domain: Domain) -> bool:
    """True when the complement of the domain lies in a sphere or hyperplane.

    On such domains the Apollonian quantity is only a pseudo-metric.  A
    finite removed set always fits a sphere once it has at most dim + 1
    points; with the infinity flag the test becomes containment in a
    hyperplane.  Detected by a rank test on the paraboloid lift.
    """
    if not isinstance(domain, FiniteComplement):
        return False
    pts = np.array(domain.removed)
    if domain.includes_infinity_boundary:
        # sphere through infinity == hyperplane through the removed points
        lifted = pts
    else:
        lifted = np.hstack([pts, (pts * pts).sum(axis=1, keepdims=True)])
    rel = lifted - lifted[0]
    rank = np.linalg.matrix_rank(rel, tol=1e-9) if len(rel) > 1 else 0
    return rank <= lifted.shape[1] - 1


# ---------------------------------------------------------------------------
# Cross-ratio


def cross_ratio(p, x, q, y) -> float:
    """Absolute cross-ratio |p,x,q,y| = |p-q| |x-y| / (|p-x| |q-y|).

    At most one argument may be INFINITY; the two factors containing it
    cancel (their ratio is 1).  Coincidences that put a zero in the
    denominator raise ZeroDivisionError.
    """
    pts = [p if is_infinity(p) else as_point(p) for p in (p, x, q, y)]
    inf_count = sum(1 for v in pts if is_infinity(v))
    if inf_count > 1:
        raise ValueError("cross_ratio supports at most one point at infinity")
    p, x, q, y = pts
    if inf_count == 0:
        dpx = _dist(p, x)
        dqy = _dist(q, y)
        if dpx == 0.0 or dqy == 0.0:
            raise ZeroDivisionError("cross_ratio undefined: coincident p,x or q,y")
        return (_dist(p, q) * _dist(x, y)) / (dpx * dqy)
    if is_infinity(p):
        dqy = _dist(q, y)
        if dqy == 0.0:
            raise ZeroDivisionError("cross_ratio undefined: coincident q,y")
        return _dist(x, y) / dqy
    if is_infinity(x):
        dqy = _dist(q, y)
        if dqy == 0.0:
            raise ZeroDivisionError("cross_ratio undefined: coincident q,y")
        return _dist(p, q) / dqy
    if is_infinity(q):
        dpx = _dist(p, x)
        if dpx == 0.0:
            raise ZeroDivisionError("cross_ratio undefined: coincident p,x")
        return _dist(x, y) / dpx
    # y at infinity
    dpx = _dist(p, x)
    if dpx == 0.0:
        raise ZeroDivisionError("cross_ratio undefined: coincident p,x")
    return _dist(p, q) / dpx


# ---------------------------------------------------------------------------
# Boundary supremum engine


@dataclass
class BoundaryWitness:
    """Boundary point realizing (up to refinement tolerance) a supremum."""

    point: object  # ndarray or INFINITY
    value: float


class DistancePairFunctional:
    """Boundary functional that depends on p only through |p-x| and |p-y|.

    All metric suprema in this package have this shape.  Instances are
    plain callables on boundary points (vectorized over leading axes);
    boundary_sup additionally recognizes them and evaluates the scan and
    the refinement directly in distance coordinates, which is both faster
    and free of point reconstruction error.

    Kinds:
      log_dx_over_dy      log(|p-x| / |p-y|)
      log_dy_over_dx      log(|p-y| / |p-x|)
      abs_log_ratio       |log(|p-x| / |p-y|)|
      inv_product         scale / (|p-x| |p-y|)
      inv_sum             scale / (|p-x| + |p-y|)
    """

    KINDS = ("log_dx_over_dy", "log_dy_over_dx", "abs_log_ratio", "inv_product", "inv_sum")
    __slots__ = ("kind", "x", "y", "scale")

    def __init__(self, kind: str, x, y, scale: float = 1.0):
        if kind not in self.KINDS:
            raise ParameterError(f"unknown functional kind {kind!r}")
        self.kind = kind
        self.x = as_point(x)
        self.y = as_point(y)
        self.scale = float(scale)

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        dx = np.linalg.norm(p - self.x, axis=-1)
        dy = np.linalg.norm(p - self.y, axis=-1)
        return self.array(dx, dy)

    def array(self, dx, dy):
        if self.kind == "log_dx_over_dy":
            return np.log(dx / dy)
        if self.kind == "log_dy_over_dx":
            return np.log(dy / dx)
        if self.kind == "abs_log_ratio":
            return np.abs(np.log(dx / dy))
        if self.kind == "inv_product":
            return self.scale / (dx * dy)
        return self.scale / (dx + dy)

    def scalar(self, dx: float, dy: float) -> float:
        if self.kind == "log_dx_over_dy":
            return math.log(dx / dy)
        if self.kind == "log_dy_over_dx":
            return math.log(dy / dx)
        if self.kind == "abs_log_ratio":
            return abs(math.log(dx / dy))
        if self.kind == "inv_product":
            return self.scale / (dx * dy)
        return self.scale / (dx + dy)

    def scalar_form(self):
        """Specialized (dx, dy) -> value callable for tight refinement loops."""
        k = self.kind
        if k == "log_dx_over_dy":
            return lambda dx, dy: math.log(dx / dy)
        if k == "log_dy_over_dx":
            return lambda dx, dy: math.log(dy / dx)
        if k == "abs_log_ratio":
            return lambda dx, dy: abs(math.log(dx / dy))
        s = self.scale
        if k == "inv_product":
            return lambda dx, dy: s / (dx * dy)
        return lambda dx, dy: s / (dx + dy)

    def bracket_floor(self, best: float) -> float:
        """Largest coarse-cell sample that could still beat ``best``.

        Across one coarse cell that stays clear of both distance poles the
        functional rises by well under _BRACKET_MARGIN on the log scale
        (the log-distance derivative is O(1/gap) there), so a bracket
        sampled below this floor cannot contain the winner and its
        refinement can be dropped.
        """
        if self.kind in ("inv_product", "inv_sum"):
            return best * math.exp(-_BRACKET_MARGIN)
        return best - _BRACKET_MARGIN


def _golden_max(fn: Callable[[float], float], lo: float, hi: float, tol: float):
    """Golden-section maximization; returns (arg, value) of the best evaluation."""
    a, b = lo, hi
    best_t, best_v = a, fn(a)
    vb = fn(b)
    if vb > best_v:
        best_t, best_v = b, vb
    h = b - a
    if h <= tol:
        return best_t, best_v
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    fc, fd = fn(c), fn(d)
    for _ in range(400):
        if fc > best_v:
            best_t, best_v = c, fc
        if fd > best_v:
            best_t, best_v = d, fd
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    return best_t, best_v


def _bracket_indices(values: np.ndarray, circular: bool) -> list[int]:
    """Indices of coarse-scan local maxima, best first, capped."""
    v = values
    n = len(v)
    flat = np.empty(n, dtype=bool)
    flat[1:] = v[1:] >= v[:-1]
    flat[0] = v[0] >= v[-1] if circular else True
    keep = flat
    flat = np.empty(n, dtype=bool)
    flat[:-1] = v[:-1] >= v[1:]
    flat[-1] = v[-1] >= v[0] if circular else True
    idx = np.flatnonzero(keep & flat)
    if idx.size == 0:
        idx = np.array([int(np.argmax(v))])
    order = idx[np.argsort(v[idx])[::-1]]
    picked: list[int] = []
    for i in order:
        if all(min(abs(i - j), len(v) - abs(i - j) if circular else abs(i - j)) > 1 for j in picked):
            picked.append(int(i))
        if len(picked) >= _MAX_BRACKETS:
            break
    return picked


def _plane_basis(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis of a 2-plane through the origin containing x and y."""
    n = x.size

    def unit_or_none(v):
        nv = float(np.linalg.norm(v))
        return v / nv if nv > 1e-300 else None

    u1 = unit_or_none(x)
    if u1 is None:
        u1 = unit_or_none(y)
    if u1 is None:
        u1 = np.zeros(n)
        u1[0] = 1.0
    w = y - float(np.dot(y, u1)) * u1
    u2 = unit_or_none(w)
    if u2 is None:
        # x, y collinear: any direction orthogonal to u1 completes the plane
        k = int(np.argmin(np.abs(u1)))
        e = np.zeros(n)
        e[k] = 1.0
        w = e - float(np.dot(e, u1)) * u1
        u2 = w / float(np.linalg.norm(w))
    return u1, u2


def boundary_sup(
    domain: Domain,
    f: Callable,
    x,
    y,
    *,
    value_at_infinity: float | None = None,
    coarse: int | None = None,
    param_tol: float | None = None,
) -> tuple[float, BoundaryWitness]:
    """Supremum of a boundary functional, with a witness.

    ``f`` maps a boundary point to a real; for the continuous domains it
    must broadcast over a leading batch axis, and the points x, y supply
    the symmetry plane of the reduction.  On FiniteComplement the maximum
    over removed points is exact, ties resolved to the lowest index, and
    ``value_at_infinity`` is the caller's value of f at INFINITY when the
    domain carries the infinity flag (omitted when None).
    """
    coarse = COARSE_SAMPLES if coarse is None else int(coarse)
    param_tol = PARAM_TOL if param_tol is None else float(param_tol)

    if isinstance(domain, FiniteComplement):
        best_v = -math.inf
        best_p = None
        for p in domain.removed:
            v = float(f(p))
            if v > best_v:
                best_v, best_p = v, p
        if domain.includes_infinity_boundary and value_at_infinity is not None:
            if float(value_at_infinity) > best_v:
                best_v, best_p = float(value_at_infinity), INFINITY
        return best_v, BoundaryWitness(best_p, best_v)

    x = require_member(domain, x, "x")
    y = require_member(domain, y, "y")
    fast = isinstance(f, DistancePairFunctional) and f.x is x and f.y is y

    if isinstance(domain, UnitBall):
        return _sup_ball(domain, f, x, y, fast, coarse, param_tol)
    if isinstance(domain, UpperHalfSpace):
        return _sup_halfspace(domain, f, x, y, fast, value_at_infinity, coarse, param_tol)
    raise ParameterError(f"unsupported domain {domain!r}")


def circle_gauge(a: float, b: float):
    """Polar data (radius, angle) of a plane point with coordinates (a, b).

    The distance from that point to the unit-circle point at angle theta
    is sqrt((1-r)^2 + 4 r sin^2((theta-t0)/2)); unlike the raw law of
    cosines this form has no cancellation when the point hugs the circle.
    """
    return math.hypot(a, b), math.atan2(b, a)


def circle_distance(r0: float, t0: float, theta):
    half = np.sin(0.5 * (np.asarray(theta) - t0))
    return np.sqrt((1.0 - r0) ** 2 + 4.0 * r0 * half * half)


def _circle_distance_scalar(r0: float, t0: float, theta: float) -> float:
    half = math.sin(0.5 * (theta - t0))
    return math.sqrt((1.0 - r0) ** 2 + 4.0 * r0 * half * half)


def _canonical_pair(x: np.ndarray, y: np.ndarray):
    """Order a pair by raw bytes so the search parametrization (and with
    it every probed boundary point) is identical for (x, y) and (y, x)."""
    return (x, y) if x.tobytes() <= y.tobytes() else (y, x)


# the coarse grids depend only on the sample count, so their trig is shared
_COARSE_CIRCLE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
_COARSE_LINE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _coarse_circle(coarse: int):
    got = _COARSE_CIRCLE.get(coarse)
    if got is None:
        thetas = np.linspace(-math.pi, math.pi, coarse, endpoint=False)
        got = (thetas, np.sin(0.5 * thetas), np.cos(0.5 * thetas))
        _COARSE_CIRCLE[coarse] = got
    return got


def _coarse_line(coarse: int):
    got = _COARSE_LINE.get(coarse)
    if got is None:
        step = 2.0 * math.pi / coarse
        thetas = -math.pi + (np.arange(coarse) + 0.5) * step
        got = (thetas, np.tan(0.5 * thetas))
        _COARSE_LINE[coarse] = got
    return got


def _circ_gap(a: float, b: float) -> float:
    d = abs(a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def _sup_ball(domain, f, x, y, fast, coarse, param_tol):
    u1, u2 = _plane_basis(*_canonical_pair(x, y))
    ax, bx = float(np.dot(x, u1)), float(np.dot(x, u2))
    ay, by = float(np.dot(y, u1)), float(np.dot(y, u2))
    rx, tx = circle_gauge(ax, bx)
    ry, ty = circle_gauge(ay, by)

    def point_at(theta: float) -> np.ndarray:
        return math.cos(theta) * u1 + math.sin(theta) * u2

    thetas, s05, c05 = _coarse_circle(coarse)
    if fast:
        omx, fx4 = (1.0 - rx) ** 2, 4.0 * rx
        omy, fy4 = (1.0 - ry) ** 2, 4.0 * ry
        half = s05 * math.cos(0.5 * tx) - c05 * math.sin(0.5 * tx)
        dxv = np.sqrt(omx + fx4 * half * half)
        half = s05 * math.cos(0.5 * ty) - c05 * math.sin(0.5 * ty)
        dyv = np.sqrt(omy + fy4 * half * half)
        values = np.asarray(f.array(dxv, dyv), dtype=float)

        form = f.scalar_form()
        sin, sqrt = math.sin, math.sqrt

        def eval_scalar(theta: float) -> float:
            sx = sin(0.5 * (theta - tx))
            sy = sin(0.5 * (theta - ty))
            return form(sqrt(omx + fx4 * sx * sx), sqrt(omy + fy4 * sy * sy))
    else:
        pts = np.cos(thetas)[:, None] * u1 + np.sin(thetas)[:, None] * u2
        values = np.asarray(f(pts), dtype=float)
        if values.shape != thetas.shape:
            values = np.array([float(f(p)) for p in pts])

        def eval_scalar(theta: float) -> float:
            return float(f(point_at(theta)))

    h = 2.0 * math.pi / coarse
    i0 = int(np.argmax(values))
    best_v = float(values[i0])
    best_theta = float(thetas[i0])

    # anchors first: boundary projections of x and y, where sharp peaks
    # live; the widened window also covers any coarse bracket deduped below
    anchors = [(r0, t0) for (r0, t0) in ((rx, tx), (ry, ty)) if r0 > 1e-12]
    for r0, t0 in anchors:
        tol = max(param_tol, (1.0 - r0) * param_tol * _ADAPTIVE_TOL_FACTOR) if fast else param_tol
        t, v = _golden_max(eval_scalar, t0 - 3.0 * h, t0 + 3.0 * h, tol)
        if v > best_v:
            best_v, best_theta = v, t

    bracket_tol = max(param_tol, h * param_tol * _ADAPTIVE_TOL_FACTOR) if fast else param_tol
    for i in _bracket_indices(values, circular=True):
        c0 = float(thetas[i])
        if any(_circ_gap(c0, t0) <= 2.0 * h for _, t0 in anchors):
            continue  # peak already inside an anchor window
        if fast and float(values[i]) < f.bracket_floor(best_v):
            continue  # provably cannot reach the incumbent
        t, v = _golden_max(eval_scalar, c0 - h, c0 + h, bracket_tol)
        if v > best_v:
            best_v, best_theta = v, t
    return best_v, BoundaryWitness(point_at(best_theta), best_v)


def _sup_halfspace(domain, f, x, y, fast, value_at_infinity, coarse, param_tol):
    n = domain.dim
    base, other = _canonical_pair(x, y)
    origin = base.copy()
    origin[-1] = 0.0
    horiz = other - base
    horiz = horiz.copy()
    horiz[-1] = 0.0
    ell = float(np.linalg.norm(horiz))
    if ell > 1e-300:
        w = horiz / ell
    else:
        w = np.zeros(n)
        w[0] = 1.0
    hx, hy = float(x[-1]), float(y[-1])
    tau_x = 0.0 if base is x else ell
    tau_y = ell - tau_x
    scale = ell + hx + hy

    def point_at(tau: float) -> np.ndarray:
        return origin + tau * w

    if fast:
        form = f.scalar_form()
        hyp = math.hypot

        def eval_tau(tau: float) -> float:
            return form(hyp(tau - tau_x, hx), hyp(tau - tau_y, hy))
    else:
        def eval_tau(tau: float) -> float:
            return float(f(point_at(tau)))

    def eval_theta(theta: float) -> float:
        return eval_tau(scale * math.tan(0.5 * theta))

    step = 2.0 * math.pi / coarse
    thetas, tan05 = _coarse_line(coarse)
    taus = scale * tan05
    if fast:
        dxv = np.hypot(taus - tau_x, hx)
        dyv = np.hypot(taus - tau_y, hy)
        values = np.asarray(f.array(dxv, dyv), dtype=float)
    else:
        pts = origin + taus[:, None] * w
        values = np.asarray(f(pts), dtype=float)
        if values.shape != thetas.shape:
            values = np.array([float(f(p)) for p in pts])

    theta_cap = math.pi - 1e-9
    i0 = int(np.argmax(values))
    best_v = float(values[i0])
    best_tau = float(taus[i0])
    best_inf = False

    # anchors first: boundary feet of x and y, refined in the line
    # coordinate with a window sized by each point's own height so that
    # arbitrarily sharp peaks stay resolvable
    anchor_factor = _ADAPTIVE_TOL_FACTOR if fast else 1.0
    for (tau_a, s_a) in ((tau_x, hx), (tau_y, hy)):
        lo, hi = tau_a - 4.0 * s_a, tau_a + 4.0 * s_a
        t, v = _golden_max(eval_tau, lo, hi, max(s_a * param_tol * anchor_factor, 5e-324))
        if v > best_v:
            best_v, best_tau, best_inf = v, t, False

    # brackets near an anchor's angular position see the full pole
    # curvature and are always refined; the margin rule only prunes cells
    # safely away from both feet
    feet = (2.0 * math.atan2(tau_x, scale), 2.0 * math.atan2(tau_y, scale))
    bracket_tol = max(param_tol, step * param_tol * _ADAPTIVE_TOL_FACTOR) if fast else param_tol
    for i in _bracket_indices(values, circular=False):
        th0 = float(thetas[i])
        if (fast
                and all(abs(th0 - th) > 12.0 * step for th in feet)
                and float(values[i]) < f.bracket_floor(best_v)):
            continue
        lo = max(th0 - step, -theta_cap)
        hi = min(th0 + step, theta_cap)
        t, v = _golden_max(eval_theta, lo, hi, bracket_tol)
        if v > best_v:
            best_v, best_tau, best_inf = v, scale * math.tan(0.5 * t), False

    if value_at_infinity is not None and float(value_at_infinity) >= best_v:
        best_v, best_inf = float(value_at_infinity), True

    witness = INFINITY if best_inf else point_at(best_tau)
    return best_v, BoundaryWitness(witness, best_v)
