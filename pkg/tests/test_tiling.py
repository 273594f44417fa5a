import dataclasses
import math

import numpy as np
import pytest

from pdw_tiling.charts import chart_a, mirror_chart
from pdw_tiling.solver import solve_geometry
from pdw_tiling.sphere import SphericalPoint, fit_transform, geodesic_distance
from pdw_tiling.symmetry import match_points, Structure
from pdw_tiling.tiling import (DegenerateTile, build_tiling, congruence_check,
                               diagonal_consistency, exact_diagonal, existence_report,
                               mirror_tiling, tile_area, tile_handedness, verify_tiling)


def test_coordinates(tiling):
    g = tiling.geometry
    c = tiling.coordinates
    assert c["v6"].colatitude == pytest.approx(g.b) and c["v6"].longitude == pytest.approx(math.pi)
    assert geodesic_distance(c["v0"], c["v1"]) == pytest.approx(g.a, abs=1e-12)
    assert geodesic_distance(c["N"], c["v3"]) == pytest.approx(math.pi - g.a, abs=1e-12)
    assert tiling.chart == chart_a(12)
    assert build_tiling().coordinates == tiling.coordinates


def test_verify_passes(tiling):
    rep = verify_tiling(tiling)
    assert rep.ok, str(rep)
    names = {c.name for c in rep.checks}
    assert {"edge lengths", "corner angles", "vertex angle sums", "total area", "congruence",
            "no crossings", "min degree", "orientation", "face pattern"} <= names


def test_perturbed_vertex_fails(tiling):
    p = tiling.coordinates["v2"]
    bad = tiling.with_point("v2", SphericalPoint(p.colatitude, p.longitude + 1e-3))
    rep = verify_tiling(bad)
    assert not rep["edge lengths"].passed


def test_mirror_passes(tiling):
    m = mirror_tiling(tiling)
    assert m.chart == mirror_chart(tiling.chart)
    assert verify_tiling(m).ok


def test_tile_areas(tiling):
    areas = [tile_area(t) for t in tiling.tiles]
    assert all(a == pytest.approx(math.pi / 3, abs=1e-12) for a in areas)
    assert sum(areas) == pytest.approx(4 * math.pi, abs=1e-12)
    with pytest.raises(DegenerateTile):
        tile_area([math.pi / 2] * 4)


def test_diagonal(tiling):
    rep = diagonal_consistency(tiling)
    assert rep.ok
    assert rep.values["via_pole"] == pytest.approx(5 / 9, abs=1e-12)
    assert rep.values["via_rim"] == pytest.approx(5 / 9, abs=1e-12)
    off = dataclasses.replace(tiling.geometry, delta=tiling.geometry.delta + 0.01)
    assert not diagonal_consistency(off).ok
    pole, rim = exact_diagonal(solve_geometry(12))
    assert abs(float(pole) - float(rim)) < 1e-15 and str(pole) == str(rim) == "5/9"


def test_existence(tiling):
    rep = existence_report(tiling)
    assert rep.ok, str(rep)
    v = rep.values
    assert v["angle v3 v2 v4"] == pytest.approx(math.acos(-5 / (2 * math.sqrt(7))), abs=1e-12)
    assert v["gamma - angle v3 v2 v4"] == pytest.approx(v["alpha - phi"], abs=1e-12)
    assert v["delta"] == pytest.approx(math.pi - v["angle v3 v2 v4"], abs=1e-12)


def test_congruence_and_handedness(tiling):
    assert congruence_check(tiling).passed
    def pts(*corners):
        tile = next(t for t in tiling.tiles if set(t.corners) == set(corners))
        return [tiling.coordinates[v] for v in tile.ordered_corners()]

    ref = pts("N", "v2", "v3", "v4")
    # S v5 v6 v7 carries the pattern the other way round: a mirror image
    assert fit_transform(ref, pts("S", "v5", "v6", "v7"), det=1) is None
    assert fit_transform(ref, pts("S", "v5", "v6", "v7"), det=-1) is not None
    # the orbit of the reference tile under f, g and g o f
    for corners in (("N", "v8", "v9", "v10"), ("S", "v11", "v10", "v9"), ("S", "v5", "v4", "v3")):
        assert fit_transform(ref, pts(*corners), det=1) is not None
    dets = tile_handedness(tiling)
    assert sorted(dets) == [-1] * 8 + [1] * 4


def _apply(t, m):
    return dataclasses.replace(t, coordinates={
        v: SphericalPoint.from_xyz(m @ p.xyz) for v, p in t.coordinates.items()})


def test_half_turn_about_poles_induces_g(tiling):
    s = Structure.of(tiling)
    m = np.diag([-1.0, -1.0, 1.0])  # rho -> rho + pi
    perm = match_points(s, s, m)
    assert perm == {v: (f"v{(int(v[1:]) + 6) % 12}" if v[0] == "v" else v) for v in perm}


def test_flip_induces_f(tiling):
    # (theta, rho) -> (pi - theta, phi - rho)
    phi = tiling.geometry.phi
    mapped = {v: SphericalPoint(math.pi - p.colatitude, phi - p.longitude)
              for v, p in tiling.coordinates.items()}
    for v, p in mapped.items():
        w = {"N": "S", "S": "N"}.get(v) or f"v{(1 - int(v[1:])) % 12}"
        assert geodesic_distance(p, tiling.coordinates[w]) < 1e-12
