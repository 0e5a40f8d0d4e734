"""Concrete set representations and their finite point-cloud surrogates.

Every shape here is nonempty, closed and bounded by construction, which is
exactly what the order-theoretic machinery downstream assumes.  Continuous
shapes are represented by boundary samples only: for membership in ``A + C``
or ``A - C`` and for all scalarization values, the extreme behaviour of a
compact shape is attained on its boundary, so interior samples would be
dead weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DiscretizationError
from .geometry import Cone, as_vector

__all__ = [
    "Shape",
    "PointCloud",
    "Ball",
    "Box",
    "Segment",
    "Union",
    "DiscretizationPolicy",
    "Cloud",
    "discretize",
    "negate",
    "in_extended_set",
]


def _coords(values) -> tuple[float, ...]:
    out = tuple(float(x) for x in values)
    if not out:
        raise ValueError("empty coordinate tuple")
    if not all(np.isfinite(out)):
        raise ValueError(f"non-finite coordinates: {out}")
    return out


class Shape:
    """Base for the shape variants; gives them a common ``dim``."""

    @property
    def dim(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class PointCloud(Shape):
    points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        pts = tuple(_coords(p) for p in self.points)
        if not pts:
            raise ValueError("a point cloud needs at least one point")
        if len({len(p) for p in pts}) > 1:
            raise DimensionMismatch("point cloud mixes dimensions")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class Ball(Shape):
    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _coords(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius < 0:
            raise ValueError(f"ball radius must be nonnegative, got {self.radius}")

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class Box(Shape):
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo = _coords(self.lo)
        hi = _coords(self.hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("box corners have different dimensions")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"box needs lo <= hi componentwise, got lo={lo}, hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)


@dataclass(frozen=True)
class Segment(Shape):
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        a = _coords(self.a)
        b = _coords(self.b)
        if len(a) != len(b):
            raise DimensionMismatch("segment endpoints have different dimensions")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class Union(Shape):
    parts: tuple[Shape, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a union needs at least one part")
        if len({p.dim for p in parts}) > 1:
            raise DimensionMismatch("union mixes dimensions")
        object.__setattr__(self, "parts", parts)

    @property
    def dim(self) -> int:
        return self.parts[0].dim


def negate(s: Shape) -> Shape:
    """Pointwise negation -S, preserving the variant."""
    if isinstance(s, PointCloud):
        return PointCloud(tuple(tuple(-x for x in p) for p in s.points))
    if isinstance(s, Ball):
        return Ball(tuple(-x for x in s.center), s.radius)
    if isinstance(s, Box):
        return Box(tuple(-x for x in s.hi), tuple(-x for x in s.lo))
    if isinstance(s, Segment):
        return Segment(tuple(-x for x in s.a), tuple(-x for x in s.b))
    if isinstance(s, Union):
        return Union(tuple(negate(p) for p in s.parts))
    raise TypeError(f"not a shape: {s!r}")


@dataclass(frozen=True)
class DiscretizationPolicy:
    """How continuous boundaries turn into finite clouds.

    ``samples_per_curve`` points per ball boundary / segment / box perimeter;
    ``prune`` additionally precomputes the cone-extreme subsets of the cloud,
    which is what the membership and scalarization code actually consumes.
    """

    samples_per_curve: int = 512
    prune: bool = True

    def __post_init__(self):
        if self.samples_per_curve < 4:
            raise ValueError("samples_per_curve must be at least 4")


class Cloud:
    """Finite stand-in for a shape: points plus optional extreme subsets.

    ``tag`` records provenance: 'exact' clouds enumerate the represented set
    completely, 'sampled' clouds approximate a continuous boundary.  Callers
    choose tolerances accordingly.
    """

    __slots__ = ("points", "tag", "mins", "maxs")

    def __init__(self, points, tag: str, mins=None, maxs=None):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("cloud needs a nonempty (k, n) point array")
        if tag not in ("exact", "sampled"):
            raise ValueError(f"unknown provenance tag {tag!r}")
        pts.setflags(write=False)
        self.points = pts
        self.tag = tag
        self.mins = None if mins is None else np.asarray(mins, dtype=float)
        self.maxs = None if maxs is None else np.asarray(maxs, dtype=float)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def lower_support(self) -> np.ndarray:
        """Points that matter on the lower side (generate A + C)."""
        return self.points if self.mins is None else self.mins

    def upper_support(self) -> np.ndarray:
        """Points that matter on the upper side (generate A - C)."""
        return self.points if self.maxs is None else self.maxs

    def negated(self) -> "Cloud":
        mins = None if self.maxs is None else -self.maxs
        maxs = None if self.mins is None else -self.mins
        return Cloud(-self.points, self.tag, mins=mins, maxs=maxs)

    def __repr__(self):
        return f"Cloud({self.points.shape[0]} pts, dim={self.dim}, tag={self.tag!r})"


def _skyline2_keep(u: np.ndarray) -> np.ndarray:
    """Mask of rows not strictly dominated in 2-d dual coordinates.

    Row j kills row i when u_j <= u_i componentwise and u_j != u_i; exact
    duplicates survive together.
    """
    k = u.shape[0]
    order = np.lexsort((u[:, 1], u[:, 0]))
    su = u[order]
    new_group = np.empty(k, dtype=bool)
    new_group[0] = True
    new_group[1:] = su[1:, 0] > su[:-1, 0]
    starts = np.flatnonzero(new_group)
    group_of = np.cumsum(new_group) - 1
    group_min1 = su[starts, 1]  # sorted by u1 within a group
    before = np.empty(len(starts))
    before[0] = np.inf
    if len(starts) > 1:
        before[1:] = np.minimum.accumulate(group_min1)[:-1]
    dominated = (before[group_of] <= su[:, 1]) | (su[:, 1] > group_min1[group_of])
    keep = np.ones(k, dtype=bool)
    keep[order] = ~dominated
    return keep


def _extreme_subset(pts: np.ndarray, cone: Cone, sense: str) -> np.ndarray:
    """Cone-extreme rows of ``pts`` (strict dominance removed, duplicates kept)."""
    u = pts @ cone.dual_rows.T
    if sense == "max":
        u = -u
    if u.shape[1] == 2:
        return pts[_skyline2_keep(u)]
    k = pts.shape[0]
    keep = np.ones(k, dtype=bool)
    for lo in range(0, k, 256):
        hi = min(lo + 256, k)
        diff = u[lo:hi, None, :] - u[None, :, :]
        dominated_by = (diff >= 0.0).all(axis=2) & (diff > 0.0).any(axis=2)
        keep[lo:hi] = ~dominated_by.any(axis=1)
    return pts[keep]


def _sample_segment(seg: Segment, n: int) -> np.ndarray:
    return np.linspace(seg.a, seg.b, max(2, n))


def _sample_box2(box: Box, n: int) -> np.ndarray:
    c00 = np.array(box.lo)
    c11 = np.array(box.hi)
    c10 = np.array([box.hi[0], box.lo[1]])
    c01 = np.array([box.lo[0], box.hi[1]])
    per_edge = max(2, n // 4)
    edges = [(c00, c10), (c10, c11), (c11, c01), (c01, c00)]
    pts = np.vstack([np.linspace(a, b, per_edge) for a, b in edges])
    return np.unique(pts, axis=0)


def _sample_ball2(ball: Ball, n: int) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(n) / n
    ring = np.column_stack([np.cos(theta), np.sin(theta)])
    return np.unique(np.asarray(ball.center) + ball.radius * ring, axis=0)


def _raw_samples(s: Shape, policy: DiscretizationPolicy) -> tuple[np.ndarray, str]:
    if isinstance(s, PointCloud):
        return np.asarray(s.points, dtype=float), "exact"
    if isinstance(s, Segment):
        return _sample_segment(s, policy.samples_per_curve), "sampled"
    if isinstance(s, Ball):
        if s.dim != 2:
            raise DiscretizationError(
                f"ball boundary sampling is implemented for dimension 2 only, got {s.dim}"
            )
        return _sample_ball2(s, policy.samples_per_curve), "sampled"
    if isinstance(s, Box):
        if s.dim != 2:
            raise DiscretizationError(
                f"box boundary sampling is implemented for dimension 2 only, got {s.dim}"
            )
        return _sample_box2(s, policy.samples_per_curve), "sampled"
    if isinstance(s, Union):
        parts = [_raw_samples(p, policy) for p in s.parts]
        pts = np.unique(np.vstack([p for p, _ in parts]), axis=0)
        tag = "exact" if all(t == "exact" for _, t in parts) else "sampled"
        return pts, tag
    raise TypeError(f"not a shape: {s!r}")


def discretize(s: Shape, p: DiscretizationPolicy | None = None, c: Cone | None = None) -> Cloud:
    """Turn a shape into a cloud, optionally with precomputed extreme subsets.

    Point clouds pass through untouched (tag 'exact'); segments become evenly
    spaced samples including both endpoints; 2-d boxes get perimeter samples
    with all corners; 2-d balls get evenly spaced boundary points starting at
    angle zero; unions concatenate.  With ``p.prune`` and a cone given, the
    min- and max-extreme subsets are attached for downstream use.
    """
    if p is None:
        p = DiscretizationPolicy()
    pts, tag = _raw_samples(s, p)
    mins = maxs = None
    if p.prune and c is not None:
        if pts.shape[1] != c.dim:
            raise DimensionMismatch(f"shape has dimension {pts.shape[1]}, cone has {c.dim}")
        mins = _extreme_subset(pts, c, "min")
        maxs = _extreme_subset(pts, c, "max")
    return Cloud(pts, tag, mins=mins, maxs=maxs)


def _covered_above(support: np.ndarray, queries: np.ndarray, cone: Cone, strict: bool) -> np.ndarray:
    """For each query q: does some support point a satisfy q - a in C (int C)?"""
    us = support @ cone.dual_rows.T
    uq = queries @ cone.dual_rows.T
    if us.shape[1] == 2:
        order = np.argsort(us[:, 0], kind="stable")
        u0 = us[order, 0]
        pref_min1 = np.minimum.accumulate(us[order, 1])
        side = "left" if strict else "right"
        idx = np.searchsorted(u0, uq[:, 0], side=side)
        out = np.zeros(queries.shape[0], dtype=bool)
        hit = idx > 0
        if strict:
            out[hit] = pref_min1[idx[hit] - 1] < uq[hit, 1]
        else:
            out[hit] = pref_min1[idx[hit] - 1] <= uq[hit, 1]
        return out
    out = np.zeros(queries.shape[0], dtype=bool)
    for lo in range(0, queries.shape[0], 256):
        hi = min(lo + 256, queries.shape[0])
        diff = uq[lo:hi, None, :] - us[None, :, :]
        inside = (diff > 0.0).all(axis=2) if strict else (diff >= 0.0).all(axis=2)
        out[lo:hi] = inside.any(axis=1)
    return out


def members_of_extended_set(
    A: Cloud, queries: np.ndarray, c: Cone, side: str, *, strict: bool = False
) -> np.ndarray:
    """Vectorized membership of query points in A + C ('upper') or A - C ('lower')."""
    if side == "upper":
        return _covered_above(A.lower_support(), queries, c, strict)
    if side == "lower":
        return _covered_above(-A.upper_support(), -queries, c, strict)
    raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")


def in_extended_set(A: Cloud, y, c: Cone, side: str) -> bool:
    """Whether y lies in A + C (side 'upper') or in A - C (side 'lower')."""
    q = as_vector(y, A.dim)
    if A.dim != c.dim:
        raise DimensionMismatch(f"cloud has dimension {A.dim}, cone has {c.dim}")
    return bool(members_of_extended_set(A, q[None, :], c, side)[0])
