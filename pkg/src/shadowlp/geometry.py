"""Polar-polytope geometry primitives.

Conventions used across the package:

* A polytope is given by an (n, d) array of points a_1..a_n together with the
  implicit origin; an optional "vertex at infinity" is a direction u that adds
  the recession ray {t*u : t >= 0} to the hull.
* A facet is a d-element index set I.  Its normal h solves <h, a_i> = 1 for
  finite i in I and <h, u> = 0 if the infinite vertex belongs to I, so the
  facet's affine hull is {x : <h, x> = 1}.  A point x is "below" that
  hyperplane when <h, x> <= 1.
* The infinite vertex is index INFINITY_INDEX (-1); index tuples are kept
  sorted, which places the infinite vertex first when present.
* Natural logarithms everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

INFINITY_INDEX = -1


class SingularSystem(Exception):
    """A linear system failed the scaled-pivot singularity threshold."""


class NoViewpoint(Exception):
    """No admissible viewpoint exists for a hull edge (should not happen
    for polygons with vertex norms at most 1)."""


@dataclass(frozen=True)
class Tolerance:
    """Numeric thresholds shared by the walker, the oracle and the tests.

    eps_singular: scaled-pivot threshold below which a linear system is
        declared singular.
    eps_feas: slack allowed in feasibility / cone-membership / below tests.
    eps_angle: slack used when comparing sweep angles.
    """

    eps_singular: float = 1e-10
    eps_feas: float = 1e-9
    eps_angle: float = 1e-12

    def __post_init__(self):
        if not (self.eps_singular > 0 and self.eps_feas > 0 and self.eps_angle > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()


def solve_linear(matrix, rhs, eps_singular=DEFAULT_TOL.eps_singular):
    """Solve matrix @ x = rhs by Gaussian elimination with scaled partial
    pivoting.  Raises SingularSystem when a scaled pivot falls below
    eps_singular.  rhs may be a vector or a matrix of stacked columns."""
    a = np.array(matrix, dtype=float)
    b = np.array(rhs, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or b.shape[0] != n:
        raise ValueError("shape mismatch in solve_linear")
    single = b.ndim == 1
    if single:
        b = b[:, None]
    scale = np.max(np.abs(a), axis=1)
    if np.any(scale == 0.0):
        raise SingularSystem("zero row")
    for k in range(n - 1):
        p = k + int(np.argmax(np.abs(a[k:, k]) / scale[k:]))
        if abs(a[p, k]) <= eps_singular * scale[p]:
            raise SingularSystem("pivot below scaled threshold")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
            scale[[k, p]] = scale[[p, k]]
        m = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(m, a[k, k:])
        b[k + 1:] -= np.outer(m, b[k])
    if abs(a[n - 1, n - 1]) <= eps_singular * scale[n - 1]:
        raise SingularSystem("pivot below scaled threshold")
    x = np.empty_like(b)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x[:, 0] if single else x


def basis_rows(points, indices, infinite_dir=None):
    """Stack the basis vectors of an index set as rows, in sorted index
    order, substituting the infinite direction for INFINITY_INDEX.
    Returns (rows, finite_mask)."""
    idx = sorted(indices)
    d = points.shape[1]
    rows = np.empty((len(idx), d))
    finite = np.empty(len(idx), dtype=bool)
    for j, i in enumerate(idx):
        if i == INFINITY_INDEX:
            if infinite_dir is None:
                raise ValueError("index set uses the vertex at infinity but no direction given")
            rows[j] = infinite_dir
            finite[j] = False
        else:
            rows[j] = points[i]
            finite[j] = True
    return rows, finite


@dataclass(frozen=True)
class FacetIndexSet:
    """A candidate facet: d sorted indices plus the normal of its affine hull.

    Equality and hashing use the index tuple only; two facets are the same
    facet exactly when their index sets coincide."""

    indices: tuple
    normal: np.ndarray = field(compare=False, repr=False)

    @property
    def contains_infinite(self):
        return bool(self.indices) and self.indices[0] == INFINITY_INDEX

    @property
    def finite_indices(self):
        return tuple(i for i in self.indices if i != INFINITY_INDEX)


def facet_normal(points, indices, infinite_dir=None, tol=DEFAULT_TOL):
    """Normal h of the affine hull of an index set: <h, a_i> = 1 for finite
    members, <h, u> = 0 for the vertex at infinity.  Raises SingularSystem
    for degenerate index sets."""
    points = np.asarray(points, dtype=float)
    d = points.shape[1]
    if len(set(indices)) != d:
        raise ValueError("index set must contain exactly d distinct indices")
    rows, finite = basis_rows(points, indices, infinite_dir)
    rhs = finite.astype(float)
    return solve_linear(rows, rhs, tol.eps_singular)


def make_facet(points, indices, infinite_dir=None, tol=DEFAULT_TOL):
    """Build a FacetIndexSet with its normal computed from the points."""
    normal = facet_normal(points, indices, infinite_dir, tol)
    return FacetIndexSet(indices=tuple(sorted(indices)), normal=normal)


def all_below(points, normal, infinite_dir=None, tol=DEFAULT_TOL):
    """True when every point satisfies <h, a_i> <= 1 + eps_feas and, if a
    vertex at infinity is present, <h, u> <= eps_feas."""
    points = np.asarray(points, dtype=float)
    if np.max(points @ normal) > 1.0 + tol.eps_feas:
        return False
    if infinite_dir is not None and float(np.dot(normal, infinite_dir)) > tol.eps_feas:
        return False
    return True


def cone_coefficients(points, indices, direction, infinite_dir=None, tol=DEFAULT_TOL):
    """Coefficients lam solving sum_i lam_i a_i = direction over the index
    set's basis vectors (infinite vertex contributes its direction u).
    Returned in sorted index order.  A direction pierces the facet exactly
    when all coefficients are >= -eps_feas."""
    points = np.asarray(points, dtype=float)
    rows, _ = basis_rows(points, indices, infinite_dir)
    return solve_linear(rows.T, np.asarray(direction, dtype=float), tol.eps_singular)


def angular_distance(x, y):
    """Angle between the lines spanned by x and y:
    acos(|<x, y>| / (|x| |y|)), in [0, pi/2]."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if nx == 0.0 or ny == 0.0:
        raise ValueError("angular distance undefined for zero vectors")
    c = abs(float(np.dot(x, y))) / (nx * ny)
    return math.acos(min(1.0, c))


# Three fixed viewpoints at angles 90, 210, 330 degrees and norm 4.  For any
# convex polygon with vertex norms at most 1 and any of its edges, at least
# one viewpoint lies on the polygon's side of the edge line at distance >= 1,
# so the edge survives in the hull of polygon + viewpoint.
_VIEWPOINT_ANGLES = np.deg2rad([90.0, 210.0, 330.0])
VIEWPOINTS = 4.0 * np.stack([np.cos(_VIEWPOINT_ANGLES), np.sin(_VIEWPOINT_ANGLES)], axis=1)


def viewpoint_for_edge(polygon, edge, tol=DEFAULT_TOL):
    """Pick a viewpoint (label 1, 2 or 3) that keeps the given hull edge an
    edge of Conv(viewpoint, polygon) and sits at distance >= 1 from the edge
    line.  polygon is an (n, 2) array of points with norms <= 1; edge is a
    pair of indices into it.  Raises NoViewpoint if no viewpoint qualifies
    and ValueError if the pair is not a hull edge."""
    polygon = np.asarray(polygon, dtype=float)
    if polygon.ndim != 2 or polygon.shape[1] != 2 or polygon.shape[0] < 3:
        raise ValueError("polygon must be an (n, 2) array with n >= 3")
    if np.max(np.linalg.norm(polygon, axis=1)) > 1.0 + tol.eps_feas:
        raise ValueError("polygon vertices must have norm at most 1")
    k, m = edge
    a, b = polygon[k], polygon[m]
    t = b - a
    nt = float(np.linalg.norm(t))
    if nt <= tol.eps_feas:
        raise ValueError("degenerate edge")
    nu = np.array([-t[1], t[0]]) / nt
    c = float(np.dot(nu, a))
    side = polygon @ nu - c
    smax = float(np.max(side))
    smin = float(np.min(side))
    if smax > tol.eps_feas and smin < -tol.eps_feas:
        raise ValueError("edge is not a hull edge")
    sign = 1.0 if smax > tol.eps_feas else -1.0
    signed = sign * (VIEWPOINTS @ nu - c)
    best = -np.inf
    best_label = 0
    for i, s in enumerate(signed):
        # Same side as the polygon and at distance >= 1 from the edge line.
        if s >= 1.0 and s > best:
            best = s
            best_label = i + 1
    if best_label == 0:
        raise NoViewpoint("no viewpoint keeps this edge at distance >= 1")
    return best_label
