"""Polyhedral ordering cones and cone-order filters for finite vector sets.

A cone is stored through its dual halfspace rows: ``C = {v : rows @ v >= 0}``.
Membership, interior membership and every scalarization formula downstream
reduce to signs and ratios of the dot products ``rows @ v``, so this is the
only representation the package needs.  Dominance filters implement the usual
minimal/maximal point notions: a point is minimal when no other point of the
set sits below it in the cone order.
"""

from __future__ import annotations

from typing import Hashable, Mapping

import numpy as np

from .errors import DimensionMismatch, InvalidCone, InvalidDirection

__all__ = [
    "EQ_TOL",
    "Cone",
    "Direction",
    "as_vector",
    "cone_contains",
    "cone_interior_contains",
    "efficient_points",
    "pareto_solutions",
    "strongly_solutions",
]

# Absolute tolerance under which two vectors count as the same point.  Sign
# tests of dominance stay exact; only the "distinct value" clause is fuzzy.
EQ_TOL = 1e-9

_CHUNK = 256  # row block size for the O(k^2) dominance sweeps


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Validate ``v`` as a finite 1-d float vector, optionally of length ``dim``."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"vector has non-finite entries: {arr}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.shape[0]}")
    return arr


def _find_interior_witness(rows: np.ndarray) -> np.ndarray | None:
    """Return some v with rows @ v > 0 strictly, or None if the interior is empty."""
    # Least squares on rows @ v = 1 settles almost every reasonable cone.
    v, *_ = np.linalg.lstsq(rows, np.ones(rows.shape[0]), rcond=None)
    if np.all(rows @ v > 0):
        return v
    # Degenerate row sets: fall back to maximizing the worst slack.
    from scipy.optimize import linprog

    m, n = rows.shape
    cost = np.zeros(n + 1)
    cost[-1] = -1.0  # maximize t
    a_ub = np.hstack([-rows, np.ones((m, 1))])  # rows @ v >= t
    res = linprog(
        cost,
        A_ub=a_ub,
        b_ub=np.zeros(m),
        bounds=[(-1.0, 1.0)] * n + [(None, 1.0)],
        method="highs",
    )
    if res.status == 0 and res.x is not None:
        v = res.x[:n]
        if np.all(rows @ v > 0):
            return v
    return None


def _is_standard_basis(rows: np.ndarray) -> bool:
    if rows.shape[0] != rows.shape[1]:
        return False
    order = np.lexsort(rows.T[::-1])
    return bool(np.array_equal(rows[order][::-1], np.eye(rows.shape[1])))


class Cone:
    """Pointed convex polyhedral ordering cone with nonempty interior.

    ``dual_rows`` is an (m, n) array of halfspace normals; the cone is
    ``{v : dual_rows @ v >= 0}`` and its interior replaces >= with >.
    Construction fails unless the rows have full column rank (pointedness)
    and a strictly interior witness exists.
    """

    __slots__ = ("dual_rows", "dim", "kind", "interior_witness", "_internal_direction")

    def __init__(self, dual_rows, *, interior_witness=None):
        rows = np.array(dual_rows, dtype=float, ndmin=2)
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 1:
            raise InvalidCone(f"dual rows must form a nonempty 2-d array, got shape {rows.shape}")
        if not np.all(np.isfinite(rows)):
            raise InvalidCone("dual rows contain non-finite entries")
        if np.any(np.all(rows == 0.0, axis=1)):
            raise InvalidCone("dual rows contain an all-zero row")
        if np.linalg.matrix_rank(rows) < rows.shape[1]:
            raise InvalidCone(
                "cone is not pointed: dual rows do not have full column rank, "
                "so some nonzero v satisfies rows @ v = 0"
            )
        rows.setflags(write=False)
        self.dual_rows = rows
        self.dim = rows.shape[1]
        self.kind = "orthant" if _is_standard_basis(rows) else "general"

        if interior_witness is not None:
            witness = as_vector(interior_witness, self.dim)
            if not np.all(rows @ witness > 0):
                raise InvalidCone("supplied interior witness is not strictly interior")
        else:
            witness = _find_interior_witness(rows)
            if witness is None:
                raise InvalidCone(
                    "cone has empty interior: no v with dual_rows @ v > 0 exists"
                )
        witness.setflags(write=False)
        self.interior_witness = witness
        self._internal_direction = None

    @classmethod
    def orthant(cls, dim: int) -> "Cone":
        """Nonnegative orthant of the given dimension."""
        return cls(np.eye(int(dim)), interior_witness=np.ones(int(dim)))

    def internal_direction(self) -> "Direction":
        """Default scalarization direction: the negated witness, sup-norm one."""
        if self._internal_direction is None:
            w = self.interior_witness
            self._internal_direction = Direction(-w / np.max(np.abs(w)), self)
        return self._internal_direction

    def __repr__(self):
        return f"Cone(kind={self.kind!r}, dim={self.dim}, rows={self.dual_rows.shape[0]})"


class Direction:
    """A direction e with dual_rows @ e < 0 strictly, i.e. e in -int(C).

    The per-row products ``denoms = dual_rows @ e`` are cached here so the
    scalarization inner loops divide without re-checking signs.
    """

    __slots__ = ("e", "cone", "denoms")

    def __init__(self, e, cone: Cone):
        self.e = as_vector(e, cone.dim)
        denoms = cone.dual_rows @ self.e
        if not np.all(denoms < 0):
            raise InvalidDirection(
                "direction not in -int(C): every dual row must satisfy row . e < 0"
            )
        self.cone = cone
        self.denoms = denoms

    def for_cone(self, cone: Cone) -> "Direction":
        """This direction revalidated against ``cone`` (no-op for the same cone)."""
        if cone is self.cone:
            return self
        return Direction(self.e, cone)

    def __repr__(self):
        return f"Direction({self.e.tolist()})"


def cone_contains(c: Cone, v) -> bool:
    """Whether v lies in the cone (all dual products nonnegative, exact signs)."""
    return bool(np.all(c.dual_rows @ as_vector(v, c.dim) >= 0.0))


def cone_interior_contains(c: Cone, v) -> bool:
    """Whether v lies strictly inside the cone (all dual products positive)."""
    return bool(np.all(c.dual_rows @ as_vector(v, c.dim) > 0.0))


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("expected a nonempty list of points")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain non-finite entries")
    return pts


def efficient_points(
    points,
    c: Cone,
    sense: str = "min",
    *,
    weak: bool = False,
    eq_tol: float = EQ_TOL,
) -> set[int]:
    """Indices of the cone-minimal (or maximal) points of a finite set.

    A point is minimal when no other point of the set dominates it: no p_j
    with ``p_i - p_j`` in C and ``p_j`` distinct from ``p_i`` (distinctness
    up to ``eq_tol``, so duplicated efficient values all survive).  With
    ``weak=True`` domination requires the cone interior and the distinctness
    clause drops out, since 0 is never interior.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    pts = _as_points(points)
    if pts.shape[1] != c.dim:
        raise DimensionMismatch(f"points have dimension {pts.shape[1]}, cone has {c.dim}")
    sign = 1.0 if sense == "min" else -1.0
    u = sign * (pts @ c.dual_rows.T)  # dominance in dual coordinates
    k = pts.shape[0]
    keep = np.ones(k, dtype=bool)
    for lo in range(0, k, _CHUNK):
        hi = min(lo + _CHUNK, k)
        diff = u[lo:hi, None, :] - u[None, :, :]  # p_i - p_j, rescaled
        if weak:
            dominated_by = (diff > 0.0).all(axis=2)
        else:
            dominated_by = (diff >= 0.0).all(axis=2)
            same = (
                np.abs(pts[lo:hi, None, :] - pts[None, :, :]).max(axis=2) <= eq_tol
            )
            dominated_by &= ~same
        keep[lo:hi] = ~dominated_by.any(axis=1)
    return set(np.flatnonzero(keep).tolist())


def _values_array(values: Mapping[Hashable, object]) -> tuple[list, np.ndarray]:
    if not values:
        raise ValueError("expected a nonempty id -> vector map")
    ids = list(values.keys())
    rows = [as_vector(values[i]) for i in ids]
    dims = {r.shape[0] for r in rows}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed value dimensions: {sorted(dims)}")
    return ids, np.vstack(rows)


def pareto_solutions(
    values: Mapping[Hashable, object],
    c: Cone,
    sense: str = "min",
    *,
    eq_tol: float = EQ_TOL,
) -> set:
    """Ids whose value is efficient among the map's values.

    Ties are kept: ids sharing an efficient value are all returned.
    """
    ids, pts = _values_array(values)
    eff = efficient_points(pts, c, sense, weak=False, eq_tol=eq_tol)
    return {ids[i] for i in eff}


def strongly_solutions(values: Mapping[Hashable, object], c: Cone, sense: str = "min") -> set:
    """Ids whose value dominates every value in the map (possibly none).

    For sense 'min' the winner w satisfies ``value - w in C`` for all values;
    'max' mirrors the test.  Strong winners are always Pareto winners too.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
    ids, pts = _values_array(values)
    if pts.shape[1] != c.dim:
        raise DimensionMismatch(f"values have dimension {pts.shape[1]}, cone has {c.dim}")
    sign = 1.0 if sense == "min" else -1.0
    u = sign * (pts @ c.dual_rows.T)
    out = set()
    for i in range(pts.shape[0]):
        if np.all(u - u[i] >= 0.0):
            out.add(ids[i])
    return out
