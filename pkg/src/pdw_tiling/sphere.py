"""Spherical trigonometry on the unit sphere.

Points are stored as (colatitude, longitude) pairs measured from the north
pole; longitude increases counter-clockwise seen from outside the sphere,
which is the orientation used for rotation systems throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TAU = 2.0 * math.pi
ANGULAR_TOL = 1e-9


class DegenerateTriangle(ValueError):
    pass


class RankDeficient(ValueError):
    pass


def _clamp(x: float) -> float:
    return max(-1.0, min(1.0, x))


@dataclass(frozen=True)
class SphericalPoint:
    colatitude: float
    longitude: float = 0.0

    def __post_init__(self):
        theta = float(self.colatitude)
        if theta < -ANGULAR_TOL or theta > math.pi + ANGULAR_TOL:
            raise ValueError(f"colatitude {theta} outside [0, pi]")
        theta = min(max(theta, 0.0), math.pi)
        lon = float(self.longitude) % TAU
        if lon >= TAU:  # tiny negatives round up to 2pi
            lon = 0.0
        if theta == 0.0 or theta == math.pi:
            lon = 0.0
        object.__setattr__(self, "colatitude", theta)
        object.__setattr__(self, "longitude", lon)

    @property
    def xyz(self) -> np.ndarray:
        s = math.sin(self.colatitude)
        return np.array([s * math.cos(self.longitude),
                         s * math.sin(self.longitude),
                         math.cos(self.colatitude)])

    @classmethod
    def from_xyz(cls, v) -> "SphericalPoint":
        v = np.asarray(v, dtype=float)
        v = v / np.linalg.norm(v)
        theta = math.atan2(math.hypot(v[0], v[1]), v[2])
        if abs(v[0]) < 1e-300 and abs(v[1]) < 1e-300:
            return cls(theta, 0.0)
        return cls(theta, math.atan2(v[1], v[0]))


@dataclass(frozen=True)
class GeodesicArc:
    start: SphericalPoint
    end: SphericalPoint

    def __post_init__(self):
        d = geodesic_distance(self.start, self.end)
        if d < ANGULAR_TOL or d > math.pi - ANGULAR_TOL:
            raise ValueError("arc endpoints coincide or are antipodal")

    @property
    def length(self) -> float:
        return geodesic_distance(self.start, self.end)

    def sample(self, segments: int) -> np.ndarray:
        """Points along the minor arc, endpoints included (slerp)."""
        p, q = self.start.xyz, self.end.xyz
        omega = self.length
        t = np.linspace(0.0, 1.0, segments + 1)[:, None]
        return (np.sin((1 - t) * omega) * p + np.sin(t * omega) * q) / math.sin(omega)


@dataclass(frozen=True)
class OrthogonalTransform:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("expected a 3x3 matrix")
        if not np.allclose(m.T @ m, np.eye(3), atol=1e-12, rtol=0):
            raise ValueError("matrix is not orthogonal")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def determinant(self) -> int:
        return 1 if np.linalg.det(self.matrix) > 0 else -1

    def apply(self, p: SphericalPoint) -> SphericalPoint:
        return SphericalPoint.from_xyz(self.matrix @ p.xyz)

    def __matmul__(self, other: "OrthogonalTransform") -> "OrthogonalTransform":
        return OrthogonalTransform(self.matrix @ other.matrix)

    def __eq__(self, other):
        if not isinstance(other, OrthogonalTransform):
            return NotImplemented
        return bool(np.allclose(self.matrix, other.matrix, atol=1e-9, rtol=0))

    __hash__ = None


def _vec(p) -> np.ndarray:
    return p.xyz if isinstance(p, SphericalPoint) else np.asarray(p, dtype=float)


def geodesic_distance(p, q) -> float:
    u, v = _vec(p), _vec(q)
    # atan2 keeps full precision for nearly equal and nearly antipodal points
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def cos_side(side_a: float, side_b: float, angle_c: float) -> float:
    """Cosine of the side opposite ``angle_c`` (spherical law of cosines)."""
    return (math.cos(side_a) * math.cos(side_b)
            + math.sin(side_a) * math.sin(side_b) * math.cos(angle_c))


def angle_from_sides(opposite: float, adjacent1: float, adjacent2: float,
                     tol: float = ANGULAR_TOL) -> float:
    denom = math.sin(adjacent1) * math.sin(adjacent2)
    if abs(denom) < 1e-15:
        raise DegenerateTriangle("adjacent side of length 0 or pi")
    c = (math.cos(opposite) - math.cos(adjacent1) * math.cos(adjacent2)) / denom
    if abs(c) > 1.0 + tol:
        raise DegenerateTriangle(f"cosine {c} outside [-1, 1]")
    return math.acos(_clamp(c))


def triangle_exists(A: float, B: float, C: float) -> bool:
    """Angle conditions under which a spherical triangle with these angles exists."""
    return (0 < A < math.pi and 0 < B < math.pi and 0 < C < math.pi
            and A + B + C > math.pi
            and -A + B + C < math.pi
            and A - B + C < math.pi
            and A + B - C < math.pi)


def triangle_area(A: float, B: float, C: float) -> float:
    if not triangle_exists(A, B, C):
        raise DegenerateTriangle(f"no spherical triangle with angles {(A, B, C)}")
    return A + B + C - math.pi


def corner_angle(vertex, start, end) -> float:
    """Counter-clockwise angle at ``vertex`` from the arc towards ``start``
    to the arc towards ``end``, seen from outside the sphere. In [0, 2pi)."""
    p, u, w = _vec(vertex), _vec(start), _vec(end)
    tu = u - np.dot(p, u) * p
    tw = w - np.dot(p, w) * p
    ang = math.atan2(float(np.dot(p, np.cross(tu, tw))), float(np.dot(tu, tw)))
    return ang % TAU


def _frame(p0: np.ndarray, p1: np.ndarray) -> np.ndarray | None:
    """Orthonormal frame (p0, e2, e3) with p1 in the span of the first two."""
    n = np.cross(p0, p1)
    norm = np.linalg.norm(n)
    if norm < 1e-8:
        return None
    e3 = n / norm
    return np.column_stack([p0, np.cross(e3, p0), e3])


def fit_transform(src: Sequence, dst: Sequence, det: int | None = None,
                  tol: float = ANGULAR_TOL) -> OrthogonalTransform | None:
    """Orthogonal map sending ``src[i]`` to ``dst[i]`` for every i.

    ``det`` selects rotations (+1), improper maps (-1) or either (None).
    Returns None when no such map exists within ``tol``.
    """
    if len(src) != len(dst):
        raise ValueError("src and dst differ in length")
    if len(src) < 3:
        raise ValueError("need at least three points")
    S = np.array([_vec(p) for p in src])
    D = np.array([_vec(p) for p in dst])
    if np.linalg.matrix_rank(S, tol=1e-8) < 3:
        raise RankDeficient("source points lie on one great circle")
    # two non-parallel points fix the frame; take the best conditioned pair
    i = 0
    j = 1 + int(np.argmax(np.linalg.norm(np.cross(S[i], S[1:]), axis=1)))
    fs, fd = _frame(S[i], S[j]), _frame(D[i], D[j])
    if fs is None or fd is None:
        return None
    signs = (1, -1) if det is None else (det,)
    for sign in signs:
        fd_s = fd.copy()
        fd_s[:, 2] *= sign
        m = fd_s @ fs.T
        img = S @ m.T
        err = np.arctan2(np.linalg.norm(np.cross(img, D), axis=1), np.einsum("ij,ij->i", img, D))
        if np.all(err <= tol):
            return OrthogonalTransform(m)
    return None


def arcs_cross(x: GeodesicArc, y: GeodesicArc, tol: float = ANGULAR_TOL) -> bool:
    """True iff the two arcs share a point interior to at least one of them."""
    p1, p2 = x.start.xyz, x.end.xyz
    q1, q2 = y.start.xyz, y.end.xyz
    n1 = np.cross(p1, p2)
    n1 /= np.linalg.norm(n1)
    n2 = np.cross(q1, q2)
    n2 /= np.linalg.norm(n2)

    def on_arc(v, a, b, n):
        return (np.dot(np.cross(a, v), n) >= -tol and np.dot(np.cross(v, b), n) >= -tol
                and np.dot(v, a + b) > 0)

    def is_end(v, a, b):
        return geodesic_distance(v, a) <= tol or geodesic_distance(v, b) <= tol

    axis = np.cross(n1, n2)
    if np.linalg.norm(axis) <= max(tol, 1e-15):
        # same great circle: overlap iff an endpoint sits strictly inside the other arc
        for v, (a, b, n) in ((q1, (p1, p2, n1)), (q2, (p1, p2, n1)),
                             (p1, (q1, q2, n2)), (p2, (q1, q2, n2))):
            if on_arc(v, a, b, n) and not is_end(v, a, b):
                return True
        same = ((is_end(p1, q1, q2) and is_end(p2, q1, q2))
                and geodesic_distance(p1, p2) > tol)
        return bool(same)
    axis /= np.linalg.norm(axis)
    for v in (axis, -axis):
        if on_arc(v, p1, p2, n1) and on_arc(v, q1, q2, n2):
            if not (is_end(v, p1, p2) and is_end(v, q1, q2)):
                return True
    return False
