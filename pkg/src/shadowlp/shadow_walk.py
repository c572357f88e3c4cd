"""Facet walking on the polar polytope.

The solver never moves between vertices of the feasible region.  Instead it
tracks facet(q): the facet of Conv(0, a_1..a_n) (plus an optional recession
ray) pierced by the ray through a rotating objective q.  q sweeps a circle
inside a fixed 2-plane; each time a cone coefficient of the current facet
crosses zero the walk pivots to the unique adjacent facet across that ridge.
Exit angles are found analytically: each cone coefficient is a sinusoid
lam_j(theta) = v_j cos(theta) + w_j sin(theta), so its next downward zero
crossing is available in closed form from one factorization per facet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    INFINITY_INDEX,
    FacetIndexSet,
    all_below,
    basis_rows,
    make_facet,
    solve_linear,
)

TWO_PI = 2.0 * math.pi

OPTIMAL_FACET = "optimal_facet"
UNBOUNDED = "unbounded"
EXHAUSTED_ARC = "exhausted_arc"


class WalkStateError(Exception):
    """A walk precondition failed mid-flight (corrupted state)."""


class CycleSuspected(Exception):
    """The pivot cap was exceeded; the walk is assumed to be cycling."""


class WalkInvariantViolation(Exception):
    """A validated walk produced a facet violating a structural invariant."""


@dataclass(frozen=True)
class SweepPlane:
    """Oriented 2-plane through the origin with orthonormal basis, swept by
    q(theta) = basis1 cos(theta) + basis2 sin(theta)."""

    basis1: np.ndarray
    basis2: np.ndarray

    def __post_init__(self):
        b1 = np.asarray(self.basis1, dtype=float)
        b2 = np.asarray(self.basis2, dtype=float)
        if abs(np.linalg.norm(b1) - 1.0) > 1e-9 or abs(np.linalg.norm(b2) - 1.0) > 1e-9:
            raise ValueError("sweep plane basis must be unit vectors")
        if abs(float(np.dot(b1, b2))) > 1e-9:
            raise ValueError("sweep plane basis must be orthogonal")

    def q(self, theta):
        return self.basis1 * math.cos(theta) + self.basis2 * math.sin(theta)

    def theta_of(self, v):
        """Angle of the projection of v onto the plane, in [0, 2*pi)."""
        v = np.asarray(v, dtype=float)
        t = math.atan2(float(np.dot(v, self.basis2)), float(np.dot(v, self.basis1)))
        t %= TWO_PI
        # collapse rounding artifacts: an angle of -1e-16 must read as 0, not 2*pi
        if TWO_PI - t <= 1e-12:
            t = 0.0
        return t

    @classmethod
    def through(cls, start, target, rotation_dir=None, collinear_eps=1e-12):
        """Plane spanned by a start and a target direction, with basis1 along
        start.  When the two are collinear a rotation direction must be
        supplied to fix the plane."""
        start = np.asarray(start, dtype=float)
        target = np.asarray(target, dtype=float)
        ns = float(np.linalg.norm(start))
        if ns == 0.0:
            raise ValueError("start direction must be nonzero")
        b1 = start / ns
        w = target - float(np.dot(target, b1)) * b1
        nw = float(np.linalg.norm(w))
        if nw <= collinear_eps * max(1.0, float(np.linalg.norm(target))):
            if rotation_dir is None:
                raise ValueError("start and target collinear: rotation direction required")
            w = np.asarray(rotation_dir, dtype=float)
            w = w - float(np.dot(w, b1)) * b1
            nw = float(np.linalg.norm(w))
            if nw <= collinear_eps:
                raise ValueError("rotation direction is collinear with the start direction")
        return cls(basis1=b1, basis2=w / nw)


@dataclass(frozen=True)
class TraceEntry:
    """One facet of a walk together with its half-open angular interval
    [theta_start, theta_end)."""

    facet: FacetIndexSet
    theta_start: float
    theta_end: float


@dataclass
class WalkOutcome:
    status: str
    facet: FacetIndexSet | None
    pivots: int
    trace: list = field(default_factory=list)

    def distinct_facets(self):
        """Facets of the trace in first-visit order, each once."""
        seen = []
        for entry in self.trace:
            if entry.facet not in seen:
                seen.append(entry.facet)
        return seen


def exit_angle(points, facet, plane, theta_now, infinite_dir=None, tol=DEFAULT_TOL):
    """First angle strictly after theta_now at which some cone coefficient of
    the facet crosses zero downward, together with the crossing index.
    Returns None when no coefficient ever crosses (never happens for genuine
    facets of pointed cones).  Raises WalkStateError when q(theta_now) does
    not pierce the facet."""
    points = np.asarray(points, dtype=float)
    rows, _ = basis_rows(points, facet.indices, infinite_dir)
    vw = solve_linear(rows.T, np.stack([plane.basis1, plane.basis2], axis=1), tol.eps_singular)
    v, w = vw[:, 0], vw[:, 1]
    lam_now = v * math.cos(theta_now) + w * math.sin(theta_now)
    if np.min(lam_now) < -tol.eps_feas:
        raise WalkStateError(
            f"facet {facet.indices} is not pierced at theta={theta_now!r} "
            f"(min coefficient {np.min(lam_now):.3e})"
        )
    idx = sorted(facet.indices)
    best_delta = None
    best_index = None
    for j, i in enumerate(idx):
        r = math.hypot(v[j], w[j])
        if r <= 1e-300:
            continue  # identically zero coefficient: never crosses
        # lam_j(theta) = r cos(theta - phi); downward crossing at phi + pi/2.
        down = math.atan2(w[j], v[j]) + 0.5 * math.pi
        delta = (down - theta_now) % TWO_PI
        if delta == 0.0:
            delta = TWO_PI
        if best_delta is None or delta < best_delta:
            best_delta = delta
            best_index = i
    if best_delta is None:
        return None
    return theta_now + best_delta, best_index


def pivot(points, facet, leaving, infinite_dir=None, tol=DEFAULT_TOL):
    """Minimal-ratio pivot across the ridge facet.indices minus {leaving}.

    g is the hyperplane rotation direction: <g, a_i> = 0 on the ridge and
    <g, a_leaving> = -1.  Among candidates k outside the facet with
    <g, a_k> > eps_feas, the entering index minimizes
    (1 - <h, a_k>) / <g, a_k> (0 replaces 1 for the vertex at infinity),
    ties broken by smallest index.  Returns (entering, new_facet) or None
    when no candidate exists, which certifies unboundedness beyond the exit
    angle."""
    points = np.asarray(points, dtype=float)
    if leaving not in facet.indices:
        raise ValueError("leaving index must belong to the facet")
    idx = sorted(facet.indices)
    rows, _ = basis_rows(points, idx, infinite_dir)
    rhs = np.array([-1.0 if i == leaving else 0.0 for i in idx])
    g = solve_linear(rows, rhs, tol.eps_singular)
    h = facet.normal

    n = points.shape[0]
    in_facet = set(facet.indices)
    best = None  # (ratio, index)
    den_all = points @ g
    num_all = 1.0 - points @ h
    for k in range(n):
        if k in in_facet:
            continue
        den = float(den_all[k])
        if den > tol.eps_feas:
            cand = (float(num_all[k]) / den, k)
            if best is None or cand < best:
                best = cand
    if infinite_dir is not None and INFINITY_INDEX not in in_facet:
        den = float(np.dot(g, infinite_dir))
        if den > tol.eps_feas:
            cand = (-float(np.dot(h, infinite_dir)) / den, INFINITY_INDEX)
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    entering = best[1]
    new_indices = [i for i in idx if i != leaving] + [entering]
    new_facet = make_facet(points, new_indices, infinite_dir, tol)
    return entering, new_facet


def _validate_step(points, old, new, infinite_dir, tol):
    shared = set(old.indices) & set(new.indices)
    if len(shared) != len(old.indices) - 1:
        raise WalkInvariantViolation("adjacent facets must share all but one index")
    if not all_below(points, new.normal, infinite_dir, tol):
        raise WalkInvariantViolation(f"facet {new.indices} is not valid (some point above)")


def walk(points, plane, start_facet, theta_start, theta_target,
         infinite_dir=None, tol=DEFAULT_TOL, max_pivots=None, validate=False):
    """Walk facet(q(theta)) from theta_start until the current facet's
    interval reaches theta_target.

    Returns a WalkOutcome whose status is OPTIMAL_FACET with the limit facet
    from the approaching side, or UNBOUNDED when the objective family leaves
    the cone of the polytope before reaching the target.  The trace records
    each visited facet with its half-open interval; intervals are contiguous
    and increasing and the final one is clipped at theta_target.
    """
    points = np.asarray(points, dtype=float)
    if not theta_target > theta_start:
        raise ValueError("theta_target must exceed theta_start")
    if max_pivots is None:
        max_pivots = 10 * points.shape[0] * points.shape[1] + 1_000_000
    if validate and not all_below(points, start_facet.normal, infinite_dir, tol):
        raise WalkInvariantViolation("start facet is not valid")

    trace = []
    current = start_facet
    theta = theta_start
    pivots = 0
    while True:
        hit = exit_angle(points, current, plane, theta, infinite_dir, tol)
        if hit is None:
            trace.append(TraceEntry(current, theta, theta_target))
            return WalkOutcome(OPTIMAL_FACET, current, pivots, trace)
        theta_exit, leaving = hit
        if theta_exit >= theta_target - tol.eps_angle:
            trace.append(TraceEntry(current, theta, theta_target))
            return WalkOutcome(OPTIMAL_FACET, current, pivots, trace)
        step = pivot(points, current, leaving, infinite_dir, tol)
        if step is None:
            trace.append(TraceEntry(current, theta, theta_exit))
            return WalkOutcome(UNBOUNDED, None, pivots, trace)
        _, new_facet = step
        if validate:
            _validate_step(points, current, new_facet, infinite_dir, tol)
        trace.append(TraceEntry(current, theta, theta_exit))
        current = new_facet
        theta = theta_exit
        pivots += 1
        if pivots > max_pivots:
            raise CycleSuspected(f"pivot cap {max_pivots} exceeded")


def sweep_full(points, plane, start_facet, theta_start=0.0,
               tol=DEFAULT_TOL, max_pivots=None, validate=False):
    """Sweep q through a full circle starting inside start_facet's interval.

    Requires the origin in the relative interior of the polytope's slice by
    the plane (every direction then pierces some facet, so unboundedness is
    impossible).  The trace partitions [theta_start, theta_start + 2*pi); the
    wrap-around facet may appear twice, once at each end.  pivots equals
    len(trace) - 1."""
    outcome = walk(points, plane, start_facet, theta_start, theta_start + TWO_PI,
                   infinite_dir=None, tol=tol, max_pivots=max_pivots, validate=validate)
    if outcome.status == UNBOUNDED:
        raise WalkStateError("unbounded during a full sweep: origin not interior to the slice")
    outcome.status = EXHAUSTED_ARC
    if validate:
        total = sum(e.theta_end - e.theta_start for e in outcome.trace)
        if abs(total - TWO_PI) > 1e-9:
            raise WalkInvariantViolation(f"sweep intervals cover {total!r}, expected 2*pi")
        if outcome.trace[-1].facet != outcome.trace[0].facet and len(outcome.trace) > 1:
            raise WalkInvariantViolation("full sweep did not close on its start facet")
        runs = []
        for e in outcome.trace:
            if not runs or runs[-1] != e.facet:
                runs.append(e.facet)
        interior_runs = runs[1:-1] if len(runs) > 1 else runs
        if len(set(interior_runs)) != len(interior_runs):
            raise WalkInvariantViolation("a facet appeared in two separate angular intervals")
    return outcome
