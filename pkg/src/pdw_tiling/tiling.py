"""The explicit twelve-tile tiling: coordinates, verification and the
existence checks for its tile."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Mapping

import numpy as np

from .closed_form import sqrt1m
from .charts import SYMBOLS, Chart, chart_a, face_pattern_check, mirror_chart
from .maps import Vertex, face_corners, face_edges, rim
from .report import Check, Report
from .solver import GeometrySolution, solve_geometry
from .sphere import (ANGULAR_TOL, TAU, GeodesicArc, SphericalPoint, angle_from_sides,
                     arcs_cross, corner_angle, fit_transform, geodesic_distance,
                     triangle_exists)


class DegenerateTile(ValueError):
    pass


@dataclass(frozen=True)
class TilingGeometry:
    F: int
    a: float
    b: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    phi: float

    @classmethod
    def from_solution(cls, sol: GeometrySolution) -> "TilingGeometry":
        return cls(sol.F, **sol.values())

    def angle_values(self) -> Dict[str, float]:
        return {s: getattr(self, s) for s in SYMBOLS}

    def length(self, label: str) -> float:
        return {"a": self.a, "b": self.b}[label]


@dataclass(frozen=True)
class Tile:
    corners: tuple
    angle_types: tuple
    angles: tuple
    edge_labels: tuple
    lengths: tuple

    def ordered_corners(self) -> tuple:
        """Corner vertices in the order alpha, beta, gamma, delta."""
        pos = {s: v for v, s in zip(self.corners, self.angle_types)}
        return tuple(pos[s] for s in SYMBOLS)


@dataclass(frozen=True)
class Tiling:
    chart: Chart
    geometry: TilingGeometry
    coordinates: Mapping[Vertex, SphericalPoint]

    def xyz(self, v: Vertex) -> np.ndarray:
        return self.coordinates[v].xyz

    @property
    def tiles(self) -> List[Tile]:
        out = []
        for face in self.chart.map.trace_faces():
            corners = face_corners(face)
            edges = face_edges(face)
            out.append(Tile(
                corners=tuple(face),
                angle_types=tuple(self.chart.angles[c].single_symbol for c in corners),
                angles=tuple(corner_angle(self.xyz(v), self.xyz(u), self.xyz(w))
                             for u, v, w in corners),
                edge_labels=tuple(self.chart.lengths[e] for e in edges),
                lengths=tuple(geodesic_distance(*(self.coordinates[x] for x in e))
                              for e in edges),
            ))
        return out

    def with_point(self, v: Vertex, p: SphericalPoint) -> "Tiling":
        coords = dict(self.coordinates)
        coords[v] = p
        return replace(self, coordinates=coords)


def build_tiling(F: int = 12) -> Tiling:
    sol = solve_geometry(F)
    g = TilingGeometry.from_solution(sol)
    a, b, al, be, de, ph = g.a, g.b, g.alpha, g.beta, g.delta, g.phi
    base = [(b, 0.0), (math.pi - b, ph), (a, al), (math.pi - a, ph + de),
            (a, al + be), (math.pi - a, ph + de + be)]
    coords = {"N": SphericalPoint(0.0, 0.0), "S": SphericalPoint(math.pi, 0.0)}
    for i, (theta, rho) in enumerate(base):
        coords[rim(i, F)] = SphericalPoint(theta, rho)
        coords[rim(i + 6, F)] = SphericalPoint(theta, rho + math.pi)
    return Tiling(chart_a(F), g, coords)


def mirror_tiling(t: Tiling) -> Tiling:
    """Reflection in the plane of the meridian through v0."""
    coords = {v: SphericalPoint(p.colatitude, -p.longitude) for v, p in t.coordinates.items()}
    return Tiling(mirror_chart(t.chart), t.geometry, coords)


def tile_area(tile, tol: float = ANGULAR_TOL) -> float:
    """Spherical excess of a quadrangle: angle sum minus 2pi."""
    angles = tile.angles if isinstance(tile, Tile) else tuple(tile)
    area = sum(angles) - (len(angles) - 2) * math.pi
    if area <= tol:
        raise DegenerateTile(f"angle sum {sum(angles)} leaves no area")
    return area


# -- reports -----------------------------------------------------------------

def _within(name, errors, tol, report, what="max error"):
    err = max(errors, default=0.0)
    report.add(name, err <= tol, f"{what} {err:.3e} (tol {tol:g})", err)


def verify_tiling(t: Tiling, tol: float = ANGULAR_TOL) -> Report:
    rep = Report(f"tiling over pdw_{t.geometry.F}, tolerance {tol:g}")
    m = t.chart.map
    tiles = t.tiles
    vals = t.geometry.angle_values()

    bad = face_pattern_check(t.chart)
    rep.add("face pattern", not bad, "; ".join(bad) or f"all faces type {t.chart.tile_type}")

    _within("edge lengths", [abs(l - t.geometry.length(lab))
                             for tile in tiles for l, lab in zip(tile.lengths, tile.edge_labels)],
            tol, rep)
    _within("corner angles", [abs(ang - vals[s]) for tile in tiles
                              for ang, s in zip(tile.angles, tile.angle_types)], tol, rep)

    sums = []
    for v in m.vertices:
        p = t.xyz(v)
        sums.append(sum(corner_angle(p, t.xyz(u), t.xyz(w)) for u, _, w in m.angles_around(v)))
    _within("vertex angle sums", [abs(s - TAU) for s in sums], tol, rep)
    # a cyclic order read clockwise winds more than once around the vertex
    windings = [round(s / TAU) for s in sums]
    rep.add("orientation", all(w == 1 for w in windings),
            "cyclic orders counter-clockwise from outside" if all(w == 1 for w in windings)
            else f"windings {windings}")

    areas = [tile_area(tile.angles, tol=-math.inf) for tile in tiles]
    _within("tile areas", [abs(x - 4 * math.pi / t.geometry.F) for x in areas], tol, rep)
    total = sum(areas)
    rep.add("total area", abs(total - 4 * math.pi) <= tol,
            f"{total:.15f} vs 4π", abs(total - 4 * math.pi))

    rep.add("min degree", min(m.degree(v) for v in m.vertices) >= 3,
            f"min degree {min(m.degree(v) for v in m.vertices)}")

    rep.checks.append(congruence_check(t, tol))

    crossings = []
    edges = [tuple(e) for e in m.edges]
    arcs = [GeodesicArc(t.coordinates[u], t.coordinates[v]) for u, v in edges]
    for (e1, x), (e2, y) in itertools.combinations(zip(edges, arcs), 2):
        if arcs_cross(x, y, tol):
            crossings.append(f"{''.join(e1)}/{''.join(e2)}")
    rep.add("no crossings", not crossings,
            ", ".join(crossings) or f"{len(arcs) * (len(arcs) - 1) // 2} edge pairs clear")
    return rep


def congruence_check(t: Tiling, tol: float = ANGULAR_TOL) -> Check:
    """Every pair of tiles is related by an orthogonal map matching corner types."""
    tiles = t.tiles
    pts = [[t.coordinates[v] for v in tile.ordered_corners()] for tile in tiles]
    failures, dets = [], []
    for i, j in itertools.combinations(range(len(tiles)), 2):
        tr = fit_transform(pts[i], pts[j], det=None, tol=tol)
        if tr is None:
            failures.append(f"{'-'.join(tiles[i].corners)}~{'-'.join(tiles[j].corners)}")
    ref = reference_tile_index(t)
    for i in range(len(tiles)):
        tr = fit_transform(pts[i], pts[ref], det=None, tol=tol)
        dets.append(0 if tr is None else tr.determinant)
    detail = (f"{len(tiles) * (len(tiles) - 1) // 2} pairs congruent; onto reference tile "
              f"{dets.count(1)} by rotation, {dets.count(-1)} by reflection")
    return Check("congruence", not failures, "; ".join(failures) or detail)


def reference_tile_index(t: Tiling) -> int:
    """The tile N v2 v3 v4."""
    want = {"N", rim(2, t.geometry.F), rim(3, t.geometry.F), rim(4, t.geometry.F)}
    return next(i for i, tile in enumerate(t.tiles) if set(tile.corners) == want)


def tile_handedness(t: Tiling, tol: float = ANGULAR_TOL) -> List[int]:
    """Determinant of the corner-matching map of each tile onto the reference tile."""
    tiles = t.tiles
    ref = [t.coordinates[v] for v in tiles[reference_tile_index(t)].ordered_corners()]
    out = []
    for tile in tiles:
        tr = fit_transform([t.coordinates[v] for v in tile.ordered_corners()], ref, tol=tol)
        out.append(0 if tr is None else tr.determinant)
    return out


# -- existence of the tile ---------------------------------------------------

def diagonal_consistency(t, expected: float | None = None, tol: float = 1e-12) -> Report:
    """cos of the diagonal v2 v4 from triangle v2 N v4 and from triangle v2 v3 v4.

    ``t`` is a Tiling or a TilingGeometry.
    """
    g = t.geometry if isinstance(t, Tiling) else t
    if expected is None:
        expected = float(solve_geometry(g.F).cos_diagonal)
    via_pole = math.cos(g.a) ** 2 + math.sin(g.a) ** 2 * math.cos(g.beta)
    via_rim = (math.cos(g.a) * math.cos(g.b)
               + math.sin(g.a) * math.sin(g.b) * math.cos(g.delta))
    rep = Report("diagonal v2v4")
    rep.values.update(via_pole=via_pole, via_rim=via_rim, expected=expected)
    rep.add("via triangle v2 N v4", abs(via_pole - expected) <= tol,
            f"{via_pole:.15f} vs {expected:.15f}", abs(via_pole - expected))
    rep.add("via triangle v2 v3 v4", abs(via_rim - expected) <= tol,
            f"{via_rim:.15f} vs {expected:.15f}", abs(via_rim - expected))
    return rep


def exact_diagonal(sol: GeometrySolution) -> tuple:
    """The two diagonal cosines in exact arithmetic."""
    ca, cb = sol.a.cos, sol.b.cos
    sa, sb = sqrt1m(ca), sqrt1m(cb)
    via_pole = ca * ca + sa * sa * sol.beta.cos
    via_rim = ca * cb + sa * sb * sol.delta.cos
    return via_pole, via_rim


def existence_report(t: Tiling | None = None, tol: float = ANGULAR_TOL) -> Report:
    t = t or build_tiling()
    g = t.geometry
    rep = Report("existence of the quadrangle N v2 v3 v4")
    for c in diagonal_consistency(g).checks:
        rep.checks.append(c)
    # angle of triangle v2 v3 v4 at v2: sides v3v4 = b, v2v3 = a, v2v4 = pi - b
    at_v2 = angle_from_sides(g.b, g.a, math.pi - g.b)
    rep.values.update({
        "angle v3 v2 v4": at_v2,
        "phi": g.phi,
        "delta": g.delta,
        "gamma - angle v3 v2 v4": g.gamma - at_v2,
        "beta": g.beta,
        "alpha - phi": g.alpha - g.phi,
    })
    rep.add("delta = pi - angle v3 v2 v4", abs(g.delta - (math.pi - at_v2)) <= tol,
            f"{g.delta:.10f} vs {math.pi - at_v2:.10f}")
    tri1 = (g.phi, at_v2, g.delta)
    tri2 = (g.gamma - at_v2, g.beta, g.alpha - g.phi)
    rep.add("triangle v2 v3 v4 exists", triangle_exists(*tri1),
            "angles " + ", ".join(f"{x:.6f}" for x in tri1))
    rep.add("triangle v2 N v4 exists", triangle_exists(*tri2),
            "angles " + ", ".join(f"{x:.6f}" for x in tri2))
    lon = [t.coordinates[rim(i, g.F)].longitude for i in range(3)]
    rep.add("longitudes of v0, v1, v2 increase in [0, pi)",
            0 <= lon[0] < lon[1] < lon[2] < math.pi,
            ", ".join(f"{x:.6f}" for x in lon))
    return rep
