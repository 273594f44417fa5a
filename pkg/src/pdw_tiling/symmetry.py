"""Orthogonal symmetries of vertex-edge structures on the sphere and their
Schoenflies classification."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from .maps import automorphism_f, automorphism_g, compose, rim
from .report import Report
from .sphere import ANGULAR_TOL, OrthogonalTransform, geodesic_distance

AXIS_TOL = 1e-6
MATRIX_TOL = 1e-9


class InconsistentGroup(ValueError):
    pass


class UnmatchedAxis(ValueError):
    pass


@dataclass(frozen=True)
class Structure:
    """Labelled points on the unit sphere joined by edges."""

    points: Mapping[str, np.ndarray]
    edges: frozenset

    @classmethod
    def of(cls, obj) -> "Structure":
        if isinstance(obj, Structure):
            return obj
        # anything tiling-like: a chart over a map plus coordinates
        pts = {v: p.xyz for v, p in obj.coordinates.items()}
        return cls(pts, frozenset(obj.chart.map.edges))

    @classmethod
    def from_arrays(cls, points: Sequence, edges: Sequence) -> "Structure":
        pts = {str(i): np.asarray(p, float) / np.linalg.norm(p) for i, p in enumerate(points)}
        return cls(pts, frozenset(frozenset((str(u), str(v))) for u, v in edges))

    def neighbours(self) -> Dict[str, List[str]]:
        out = {v: [] for v in self.points}
        for e in self.edges:
            u, v = tuple(e)
            out[u].append(v)
            out[v].append(u)
        return {v: sorted(n) for v, n in out.items()}


def _axis_sign(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    k = next(i for i in range(3) if abs(v[i]) > 1e-9)
    return v if v[k] > 0 else -v


def _eigvec(m: np.ndarray, value: float) -> np.ndarray:
    w, vecs = np.linalg.eig(m)
    k = int(np.argmin(np.abs(w - value)))
    return _axis_sign(np.real(vecs[:, k]))


def _order(m: np.ndarray, limit: int = 120) -> int:
    p = np.eye(3)
    for n in range(1, limit + 1):
        p = p @ m
        if np.allclose(p, np.eye(3), atol=MATRIX_TOL):
            return n
    raise InconsistentGroup("operation of infinite or excessive order")


@dataclass(frozen=True)
class SymmetryOperation:
    transform: OrthogonalTransform
    permutation: Optional[Mapping[str, str]] = None

    @property
    def matrix(self) -> np.ndarray:
        return self.transform.matrix

    @property
    def det(self) -> int:
        return self.transform.determinant

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    @property
    def order(self) -> int:
        return _order(self.matrix)

    @property
    def kind(self) -> str:
        tr = self.trace
        if self.det == 1:
            return "identity" if abs(tr - 3) < MATRIX_TOL else "rotation"
        if abs(tr + 3) < MATRIX_TOL:
            return "inversion"
        return "reflection" if abs(tr - 1) < MATRIX_TOL else "improper_rotation"

    @property
    def axis(self) -> Optional[np.ndarray]:
        """Rotation axis, mirror normal or improper-rotation axis (sign canonical)."""
        kind = self.kind
        if kind in ("identity", "inversion"):
            return None
        return _eigvec(self.matrix, 1.0 if kind == "rotation" else -1.0)

    def describe(self) -> str:
        kind, ax = self.kind, self.axis
        if ax is None:
            return kind
        axis = "(" + ", ".join(f"{0.0 if abs(x) < 5e-7 else x:+.6f}" for x in ax) + ")"
        if kind == "reflection":
            return f"reflection, normal {axis}"
        return f"{kind} of order {self.order} about {axis}"


def _sort_key(op: SymmetryOperation):
    ax = op.axis
    return (-round(op.trace, 6), op.det * -1, tuple(np.round(ax, 6)) if ax is not None else ())


def _frames(p, q):
    e3 = np.cross(p, q)
    e3 /= np.linalg.norm(e3)
    return np.column_stack([p, np.cross(e3, p), e3])


def match_points(s1: Structure, s2: Structure, m: np.ndarray,
                 tol: float = ANGULAR_TOL) -> Optional[Dict[str, str]]:
    """Vertex bijection induced by ``m`` when it carries s1 onto s2 edges included."""
    ids2 = sorted(s2.points)
    arr2 = np.array([s2.points[v] for v in ids2])
    perm = {}
    for v, p in s1.points.items():
        img = m @ p
        d = np.arctan2(np.linalg.norm(np.cross(arr2, img), axis=1), arr2 @ img)
        k = int(np.argmin(d))
        if d[k] > tol:
            return None
        perm[v] = ids2[k]
    if len(set(perm.values())) != len(perm) or len(perm) != len(ids2):
        return None
    if {frozenset(perm[x] for x in e) for e in s1.edges} != set(s2.edges):
        return None
    return perm


def find_congruences(x, y, det: Optional[int] = None,
                     tol: float = ANGULAR_TOL) -> List[SymmetryOperation]:
    """All orthogonal maps carrying structure x onto structure y.

    A base vertex of least degree and one of its neighbours are sent to every
    compatible image pair; each of the two resulting frames is checked in full.
    """
    s1, s2 = Structure.of(x), Structure.of(y)
    if len(s1.points) != len(s2.points) or len(s1.edges) != len(s2.edges):
        return []
    n1, n2 = s1.neighbours(), s2.neighbours()
    base = min(s1.points, key=lambda v: (len(n1[v]), v))
    nb = n1[base][0]
    p, q = s1.points[base], s1.points[nb]
    length = geodesic_distance(p, q)
    src = _frames(p, q)
    signs = (1, -1) if det is None else (det,)
    found = []
    for xv in sorted(s2.points):
        if len(n2[xv]) != len(n1[base]):
            continue
        for yv in n2[xv]:
            P, Q = s2.points[xv], s2.points[yv]
            if abs(geodesic_distance(P, Q) - length) > tol:
                continue
            dst = _frames(P, Q)
            for sign in signs:
                d = dst.copy()
                d[:, 2] *= sign
                m = d @ src.T
                perm = match_points(s1, s2, m, tol)
                if perm is not None:
                    found.append(SymmetryOperation(OrthogonalTransform(m), perm))
    return sorted(found, key=_sort_key)


def find_symmetries(t, tol: float = ANGULAR_TOL) -> List[SymmetryOperation]:
    return find_congruences(t, t, tol=tol)


def is_symmetry(t, matrix, tol: float = ANGULAR_TOL) -> bool:
    s = Structure.of(t)
    return match_points(s, s, np.asarray(matrix, float), tol) is not None


def reflection_matrix(normal) -> np.ndarray:
    n = np.asarray(normal, float)
    n = n / np.linalg.norm(n)
    return np.eye(3) - 2 * np.outer(n, n)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    k = np.asarray(axis, float)
    k = k / np.linalg.norm(k)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * (K @ K)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class PointGroup:
    operations: tuple
    schoenflies: str

    @property
    def order(self) -> int:
        return len(self.operations)

    def census(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for op in self.operations:
            out[op.kind] = out.get(op.kind, 0) + 1
        return out


def _index(mats: Sequence[np.ndarray], m: np.ndarray) -> int:
    for i, x in enumerate(mats):
        if np.allclose(x, m, atol=MATRIX_TOL):
            return i
    return -1


def check_group(ops: Sequence[SymmetryOperation]):
    mats = [op.matrix for op in ops]
    if _index(mats, np.eye(3)) < 0:
        raise InconsistentGroup("identity missing")
    for a, b in itertools.product(mats, repeat=2):
        if _index(mats, a @ b) < 0:
            raise InconsistentGroup("not closed under composition")
    for a in mats:
        if _index(mats, a.T) < 0:
            raise InconsistentGroup("inverse missing")


def _parallel(u, v) -> bool:
    return abs(abs(float(np.dot(u, v))) - 1) < AXIS_TOL


def _perpendicular(u, v) -> bool:
    return abs(float(np.dot(u, v))) < AXIS_TOL


def proper_axes(ops: Sequence[SymmetryOperation]) -> List[tuple]:
    """(axis, highest order about it) for every proper rotation axis."""
    axes: List[list] = []
    for op in ops:
        if op.kind != "rotation":
            continue
        ax, n = op.axis, op.order
        for entry in axes:
            if _parallel(entry[0], ax):
                entry[1] = max(entry[1], n)
                break
        else:
            axes.append([ax, n])
    return [tuple(e) for e in axes]


def classify(ops: Sequence[SymmetryOperation]) -> PointGroup:
    ops = tuple(ops)
    check_group(ops)
    kinds = [op.kind for op in ops]
    has_inv = "inversion" in kinds
    mirrors = [op.axis for op in ops if op.kind == "reflection"]
    axes = proper_axes(ops)
    high = [a for a in axes if a[1] >= 3]

    if len(high) >= 2:
        top = max(n for _, n in high)
        if top == 5:
            sym = "Ih" if has_inv else "I"
        elif top == 4:
            sym = "Oh" if has_inv else "O"
        else:
            sym = "Th" if has_inv else ("Td" if mirrors else "T")
        return PointGroup(ops, sym)

    if not axes:
        sym = "Cs" if mirrors else ("Ci" if has_inv else "C1")
        return PointGroup(ops, sym)

    principal, n = max(axes, key=lambda a: a[1])
    perp2 = [a for a, k in axes if k == 2 and _perpendicular(a, principal)]
    sigma_h = any(_parallel(m, principal) for m in mirrors)
    sigma_v = [m for m in mirrors if _perpendicular(m, principal)]
    if len(perp2) >= n:
        if sigma_h:
            sym = f"D{n}h"
        elif len(sigma_v) >= n:
            sym = f"D{n}d"
        else:
            sym = f"D{n}"
    elif sigma_h:
        sym = f"C{n}h"
    elif len(sigma_v) >= n:
        sym = f"C{n}v"
    elif any(op.kind == "improper_rotation" and _parallel(op.axis, principal)
             and op.order == 2 * n for op in ops):
        sym = f"S{2 * n}"
    else:
        sym = f"C{n}"
    return PointGroup(ops, sym)


# -- the built tiling ----------------------------------------------------------

def described_axes(t) -> Dict[str, np.ndarray]:
    """The three axis descriptions of the twelve-tile tiling."""
    F = t.geometry.F
    xyz = {v: p.xyz for v, p in t.coordinates.items()}
    return {
        "poles": _axis_sign(xyz["N"]),
        "mid(v0,v1)": _axis_sign(xyz[rim(0, F)] + xyz[rim(1, F)]),
        "mid(v3,v4)": _axis_sign(xyz[rim(3, F)] + xyz[rim(4, F)]),
    }


def expected_automorphisms(F: int) -> Dict[str, dict]:
    g, f = automorphism_g(F), automorphism_f(F)
    return {"poles": g, "mid(v0,v1)": f, "mid(v3,v4)": compose(g, f)}


AUTOMORPHISM_NAMES = {"poles": "g", "mid(v0,v1)": "f", "mid(v3,v4)": "g∘f"}


def axes_report(ops: Sequence[SymmetryOperation], t) -> Report:
    rep = Report("rotation axes")
    described = described_axes(t)
    expected = expected_automorphisms(t.geometry.F)
    matched = {}
    for op in ops:
        if op.kind == "identity":
            continue
        ax = op.axis
        name = next((k for k, d in described.items()
                     if op.kind == "rotation" and _parallel(ax, d)), None)
        if name is None:
            raise UnmatchedAxis(f"{op.describe()} matches no described axis")
        matched[name] = op
        rep.add(f"axis {name} order 2", op.order == 2, f"order {op.order}")
        want = AUTOMORPHISM_NAMES[name]
        rep.add(f"axis {name} induces {want}", op.permutation == expected[name],
                "vertex permutation " + ("matches" if op.permutation == expected[name]
                                          else "differs"))
    for name in described:
        rep.add(f"axis {name} present", name in matched,
                "found" if name in matched else "no rotation about it")
    for (n1, a1), (n2, a2) in itertools.combinations(described.items(), 2):
        dot = abs(float(np.dot(a1, a2)))
        rep.add(f"{n1} ⟂ {n2}", dot <= 1e-9, f"|dot| {dot:.2e}", dot)
    rep.checks.extend(mirror_absence_report(t, list(described.values())).checks)
    return rep


def mirror_absence_report(t, axes: Sequence[np.ndarray]) -> Report:
    """Planes that would make the group D2h (perpendicular to a 2-fold axis)
    or D2d (bisecting two 2-fold axes) are not symmetries."""
    rep = Report("mirror planes")
    h = [a for a in axes if is_symmetry(t, reflection_matrix(a))]
    rep.add("no mirror perpendicular to a 2-fold axis (not D2h)", not h,
            f"{len(axes)} planes tested")
    d = []
    for a1, a2 in itertools.combinations(axes, 2):
        for n in (a1 + a2, a1 - a2):
            if is_symmetry(t, reflection_matrix(n)):
                d.append(n)
    rep.add("no mirror between two 2-fold axes (not D2d)", not d,
            f"{2 * len(list(itertools.combinations(axes, 2)))} planes tested")
    return rep


def point_group(t, tol: float = ANGULAR_TOL) -> PointGroup:
    return classify(find_symmetries(t, tol))
