"""Geometry of the hexagonal macro cell.

By symmetry of the hexagon (macro BSs at the centre and the six vertices)
it is enough to study one equilateral triangle of side ``d`` with a macro
BS on each vertex. Users are uniform on that triangle and ``r1`` is the
distance to the closest vertex, which never exceeds ``d / sqrt(3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import DomainError

SQRT3 = math.sqrt(3.0)


class Point2D(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class CellGeometry:
    """Analysis triangle of a hexagonal cell with radius ``d``.

    Vertices are placed at ``(0, 0)``, ``(d, 0)`` and ``(d/2, sqrt(3) d/2)``.
    """

    d: float
    vertices: tuple[Point2D, Point2D, Point2D] = field(init=False, repr=False)

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0):
            raise DomainError(f"cell radius d must be positive and finite, got {self.d!r}")
        d = float(self.d)
        verts = (Point2D(0.0, 0.0), Point2D(d, 0.0), Point2D(0.5 * d, 0.5 * SQRT3 * d))
        object.__setattr__(self, "vertices", verts)

    @property
    def area(self) -> float:
        return SQRT3 * self.d**2 / 4.0

    @property
    def max_distance(self) -> float:
        """Largest possible distance to the closest macro BS (the circumradius)."""
        return self.d / SQRT3

    @property
    def centroid(self) -> Point2D:
        xs, ys = zip(*self.vertices)
        return Point2D(sum(xs) / 3.0, sum(ys) / 3.0)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)


def _check_support(r, d):
    if d <= 0:
        raise DomainError(f"d must be positive, got {d!r}")
    if r < 0 or r > d / SQRT3 * (1.0 + 1e-12):
        raise DomainError(f"r={r!r} outside [0, d/sqrt(3)] for d={d!r}")


def _edge_angle(r, d):
    """``arccos(d / 2r)`` for ``r >= d/2``, written as ``2 asin(sqrt((2r - d) / 4r))``.

    The direct form loses about half the digits just above ``d/2``; the
    half-angle form stays accurate there. Inputs below ``d/2`` map to 0.
    """
    excess = np.maximum(2.0 * r - d, 0.0)
    return 2.0 * np.arcsin(np.sqrt(np.clip(excess / (4.0 * np.maximum(r, d / 2.0)), 0.0, 0.5)))


def sector_union_area(r: float, d: float) -> float:
    """Area of the triangle covered by the three vertex discs of radius ``r``.

    Below ``d/2`` the three 60-degree sectors are disjoint. Above it each
    pair of neighbouring sectors overlaps in half a lens, and the three
    half lenses are subtracted from the sector total.
    """
    _check_support(r, d)
    sectors = math.pi * r * r / 2.0
    if r <= d / 2.0:
        return sectors
    half_chord = 0.5 * math.sqrt(max((2.0 * r - d) * (2.0 * r + d), 0.0))
    overlap = 3.0 * (r * r * float(_edge_angle(r, d)) - 0.5 * d * half_chord)
    return sectors - overlap


def f1_cdf(r, d: float):
    """CDF of the distance from a uniform user to the closest macro BS.

    Accepts scalars or arrays. Values are clamped to 0 below the support
    and to 1 beyond ``d / sqrt(3)``.
    """
    if d <= 0:
        raise DomainError(f"d must be positive, got {d!r}")
    r_arr = np.asarray(r, dtype=float)
    rc = np.clip(r_arr, 0.0, d / SQRT3)
    q = (rc / d) ** 2
    near = (2.0 * math.pi / SQRT3) * q
    acos_term = _edge_angle(rc, d)
    root = np.sqrt(3.0 * np.maximum((2.0 * rc - d) * (2.0 * rc + d), 0.0)) / d
    far = near - (4.0 * SQRT3 * q * acos_term - root)
    out = np.where(rc <= d / 2.0, near, far)
    out = np.where(r_arr >= d / SQRT3, 1.0, out)
    out = np.where(r_arr <= 0.0, 0.0, out)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def f1_pdf(r: float, d: float) -> float:
    """Density of ``r1``, differentiated analytically from :func:`f1_cdf`.

    On the outer branch the derivatives of the arccos factor and the square
    root cancel, which leaves a density that is bounded and vanishes at
    ``d / sqrt(3)``.
    """
    if d <= 0:
        raise DomainError(f"d must be positive, got {d!r}")
    if not (0.0 < r < d / SQRT3):
        raise DomainError(f"f1_pdf is defined on the open interval (0, d/sqrt(3)), got r={r!r}")
    slope = 4.0 * math.pi * r / (SQRT3 * d * d)
    if r <= d / 2.0:
        return slope
    angle = 2.0 * math.asin(math.sqrt(min((2.0 * r - d) / (4.0 * r), 0.5)))
    return max(slope - 8.0 * SQRT3 * r * angle / (d * d), 0.0)


def _barycentric_point(vertices: np.ndarray, u, v):
    su = np.sqrt(u)
    w1 = 1.0 - su
    w2 = su * (1.0 - v)
    w3 = su * v
    return (
        w1 * vertices[0, 0] + w2 * vertices[1, 0] + w3 * vertices[2, 0],
        w1 * vertices[0, 1] + w2 * vertices[1, 1] + w3 * vertices[2, 1],
    )


def point_from_uniforms(geom: CellGeometry, u: float, v: float) -> Point2D:
    """Map ``(u, v)`` in the unit square to the triangle, uniformly."""
    x, y = _barycentric_point(geom.as_array(), u, v)
    return Point2D(float(x), float(y))


def sample_user_position(geom: CellGeometry, rng: np.random.Generator) -> Point2D:
    """Draw one user position uniformly on the analysis triangle."""
    u, v = rng.random(2)
    return point_from_uniforms(geom, u, v)


def sample_user_positions(geom: CellGeometry, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorised :func:`sample_user_position`, returns an ``(size, 2)`` array."""
    uv = rng.random((size, 2))
    x, y = _barycentric_point(geom.as_array(), uv[:, 0], uv[:, 1])
    return np.column_stack([x, y])


def contains(geom: CellGeometry, p, tol: float = 1e-9) -> bool:
    """True if ``p`` lies in the triangle, allowing ``tol * d`` of slack."""
    x, y = p
    d = geom.d
    slack = tol * d
    # Signed distances to the three edges, positive inside.
    e0 = y
    e1 = (SQRT3 * (d - x) - y) / 2.0
    e2 = (SQRT3 * x - y) / 2.0
    return min(e0, e1, e2) >= -slack


def nearest_macro_distance(p, geom: CellGeometry) -> float:
    """Distance from ``p`` to the closest of the three macro BSs."""
    if not contains(geom, p):
        raise DomainError(f"point {tuple(p)!r} lies outside the analysis triangle")
    x, y = p
    return min(math.hypot(x - vx, y - vy) for vx, vy in geom.vertices)


def nearest_macro_distances(points: np.ndarray, geom: CellGeometry) -> np.ndarray:
    """Vectorised :func:`nearest_macro_distance` for an ``(n, 2)`` array."""
    pts = np.asarray(points, dtype=float)
    verts = geom.as_array()
    dist = np.linalg.norm(pts[:, None, :] - verts[None, :, :], axis=-1)
    return dist.min(axis=1)
