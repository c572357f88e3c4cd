"""Randomized Phase-I by constraint addition.

A unit program (all right-hand sides equal to 1) is solved by dropping a
random, far-away regular simplex of d extra constraints around a random
direction z0, so that facet(z0) is known by construction, then shadow-walking
from z0 to the true objective z.  The added block changes nothing whenever it
stays inside a numb set of the program, which happens with probability at
least 1/4 per attempt; attempts are repeated with fresh randomness until the
walk's terminal facet uses no added index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import randgen
from .geometry import (
    DEFAULT_TOL,
    SingularSystem,
    cone_coefficients,
    facet_normal,
    make_facet,
)
from .shadow_walk import UNBOUNDED, SweepPlane, walk

OPTIMAL = "optimal"
UNIT_UNBOUNDED = "unbounded"

MAX_RETRIES = 1000


class GaveUp(Exception):
    """All Phase-I retries were exhausted (astronomically unlikely for
    smoothed inputs; indicates degenerate or adversarial data)."""


@dataclass
class AddedBlock:
    """One attempt's added constraints: d smoothed vertices of a dilated
    regular simplex, its known piercing direction z0, the norm grid value
    2*m0 used for dilation, and the raw rotation and centers for
    diagnostics."""

    added_points: np.ndarray
    start_objective: np.ndarray
    norm_bound: float
    rotation: np.ndarray
    centers: np.ndarray


@dataclass
class UnitResult:
    status: str
    facet: object | None
    pivots_total: int
    iterations: int


def simplex_vertices(d, radius):
    """Vertices of a regular (d-1)-simplex with centroid at the last
    coordinate axis unit vector and circumradius `radius`, lying in the
    affine hyperplane {x : x_d = 1}.

    Construction: take f_i = e_i - (1/d) * ones (the centered coordinate
    frame inside the hyperplane ones-perp), scale each to norm `radius`, and
    rotate ones/sqrt(d) onto e_d."""
    anchor = np.zeros(d)
    anchor[d - 1] = 1.0
    f = np.eye(d) - np.full((d, d), 1.0 / d)
    f *= radius / math.sqrt(1.0 - 1.0 / d)
    u = np.full(d, 1.0 / math.sqrt(d))
    v = anchor
    # Rotation taking u to v, identity on the orthogonal complement of
    # span(u, v); well defined because <u, v> = 1/sqrt(d) > -1.
    s = u + v
    rot = np.eye(d) - np.outer(s, s) / (1.0 + float(np.dot(u, v))) + 2.0 * np.outer(v, u)
    vertices = anchor + f @ rot.T
    return anchor, vertices


def add_constraints(points, norm_bound, rotation, rng, tol=DEFAULT_TOL, smoothing_sigma=None):
    """One attempt at the added block.

    The unit simplex around e_d is rotated by the given orthogonal matrix,
    dilated by 2*norm_bound, and its vertices are smoothed with deviation
    2*norm_bound*added_sigma(d, n) (overridable for tests).  Returns None
    (Failure) when either postcondition check fails:
      cone check — z0 must lie in the cone of the added points,
      distance check — dist(0, aff(added points)) = 1/|h| must be at least
          max_i |a_i|.
    Both checks always run; their failure probability is tiny but the walk's
    correctness depends on them."""
    points = np.asarray(points, dtype=float)
    n, d = points.shape
    max_norm = float(np.max(np.linalg.norm(points, axis=1)))
    anchor, vertices = simplex_vertices(d, randgen.simplex_radius(d))
    z0 = 2.0 * norm_bound * (rotation @ anchor)
    centers = 2.0 * norm_bound * (vertices @ rotation.T)
    if smoothing_sigma is None:
        smoothing_sigma = randgen.added_sigma(d, n)
    added = randgen.gaussian(rng, (d, d), center=centers, sigma=2.0 * norm_bound * smoothing_sigma)
    try:
        lam = cone_coefficients(added, range(d), z0, tol=tol)
        h = facet_normal(added, range(d), tol=tol)
    except SingularSystem:
        return None
    if float(np.min(lam)) < -tol.eps_feas:
        return None  # cone check failed: z0 escaped the cone of the added block
    if 1.0 / float(np.linalg.norm(h)) < max_norm:
        return None  # distance check failed: block not far enough out
    return AddedBlock(added_points=added, start_objective=z0,
                      norm_bound=norm_bound, rotation=rotation, centers=centers)


def _default_rotation_dir(target):
    """Deterministic fallback plane direction: first coordinate axis, or the
    second when the target is itself along the first."""
    d = target.shape[0]
    e = np.zeros(d)
    axis = 0
    if abs(target[0]) >= (1.0 - 1e-9) * float(np.linalg.norm(target)):
        axis = 1
    e[axis] = 1.0
    return e


def solve_unit(points, objective, rng=None, tol=DEFAULT_TOL,
               validate=False, max_retries=MAX_RETRIES):
    """Solve the unit program max <z, x> s.t. <a_i, x> <= 1 for all i.

    Returns UnitResult with status "optimal" and facet(z) over the original
    indices, or status "unbounded" when z leaves the cone of the a_i.
    pivots_total sums the pivots of every walk including failed attempts;
    iterations counts attempts.  rng follows derive_rng's seed contract; each
    retry uses an independent substream."""
    points = np.asarray(points, dtype=float)
    n, d = points.shape
    if not (n > d >= 2):
        raise ValueError("need n > d >= 2")
    z = np.asarray(objective, dtype=float)
    norm_bound = randgen.norm_ceiling(float(np.max(np.linalg.norm(points, axis=1))))
    if isinstance(rng, np.random.Generator):
        rng = int(rng.integers(0, 2 ** 63))
    pivots_total = 0
    for attempt in range(max_retries):
        stream = randgen.derive_rng(rng, attempt)
        rotation = randgen.haar_rotation(d, stream)
        block = add_constraints(points, norm_bound, rotation, stream, tol)
        if block is None:
            continue
        full = np.vstack([points, block.added_points])
        start = make_facet(full, range(n, n + d), tol=tol)
        z0 = block.start_objective
        plane = SweepPlane.through(z0, z, rotation_dir=_default_rotation_dir(z))
        theta_target = plane.theta_of(z)
        if theta_target <= tol.eps_angle:
            continue  # z parallel to the random z0: the start facet would be the answer
        outcome = walk(full, plane, start, 0.0, theta_target,
                       tol=tol, validate=validate)
        pivots_total += outcome.pivots
        if outcome.status == UNBOUNDED:
            return UnitResult(UNIT_UNBOUNDED, None, pivots_total, attempt + 1)
        terminal = outcome.facet
        if all(i < n for i in terminal.indices):
            facet = make_facet(points, terminal.indices, tol=tol)
            return UnitResult(OPTIMAL, facet, pivots_total, attempt + 1)
    raise GaveUp(f"no clean solution in {max_retries} attempts")


def numb_halfspace_witness(points, objective, oracle_facet, tol=DEFAULT_TOL):
    """Normal h of the affine halfspace {x : <h, x> <= 1} below
    aff(Facet(z)), which is numb for a bounded unit program: adding any
    constraints inside it leaves the solution unchanged.  oracle_facet must
    be the independently computed facet pierced by the objective."""
    return facet_normal(points, oracle_facet.indices, tol=tol)
