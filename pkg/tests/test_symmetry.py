import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import quaternion_matrix, unit_quaternions
from pdw_tiling.maps import automorphism_f, automorphism_g, compose
from pdw_tiling.sphere import OrthogonalTransform, SphericalPoint
from pdw_tiling.symmetry import (InconsistentGroup, Structure, SymmetryOperation,
                                 UnmatchedAxis, axes_report, check_group, classify,
                                 find_congruences, find_symmetries, mirror_absence_report,
                                 reflection_matrix, rotation_matrix)
from pdw_tiling.tiling import Tiling, mirror_tiling

PROPS = settings(max_examples=1000, deadline=None)


def octahedron():
    P = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    E = [(i, j) for i, j in itertools.combinations(range(6), 2) if np.dot(P[i], P[j]) == 0]
    return Structure.from_arrays(P, E)


def cube():
    P = list(itertools.product((-1, 1), repeat=3))
    E = [(i, j) for i, j in itertools.combinations(range(8), 2)
         if sum(a != b for a, b in zip(P[i], P[j])) == 1]
    return Structure.from_arrays(P, E)


def tetrahedron():
    P = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return Structure.from_arrays(P, list(itertools.combinations(range(4), 2)))


def ops_of(*mats):
    return [SymmetryOperation(OrthogonalTransform(np.asarray(m, float))) for m in mats]


def test_tiling_group(tiling):
    ops = find_symmetries(tiling)
    assert len(ops) == 4
    assert [op.kind for op in ops].count("identity") == 1
    assert all(op.det == 1 for op in ops)
    assert all(op.order == 2 for op in ops if op.kind != "identity")
    g = classify(ops)
    assert g.schoenflies == "D2" and g.census() == {"identity": 1, "rotation": 3}


def test_axes(tiling):
    rep = axes_report(find_symmetries(tiling), tiling)
    assert rep.ok, str(rep)
    assert rep["axis poles induces g"].passed
    assert rep["axis mid(v0,v1) induces f"].passed
    assert rep["axis mid(v3,v4) induces g∘f"].passed
    perms = {tuple(sorted(op.permutation.items())) for op in find_symmetries(tiling)}
    want = [automorphism_g(12), automorphism_f(12),
            compose(automorphism_g(12), automorphism_f(12))]
    assert all(tuple(sorted(h.items())) in perms for h in want)


def test_unmatched_axis(tiling):
    bogus = ops_of(np.eye(3), rotation_matrix((1, 1, 0), math.pi))
    with pytest.raises(UnmatchedAxis):
        axes_report(bogus, tiling)


def test_no_mirror_planes(tiling):
    axes = [op.axis for op in find_symmetries(tiling) if op.kind == "rotation"]
    rep = mirror_absence_report(tiling, axes)
    assert rep.ok and len(rep.checks) == 2


def test_flowchart_examples():
    assert classify(ops_of(np.eye(3))).schoenflies == "C1"
    assert classify(ops_of(np.eye(3), -np.eye(3))).schoenflies == "Ci"
    assert classify(ops_of(np.eye(3), reflection_matrix((0, 0, 1)))).schoenflies == "Cs"
    r = rotation_matrix((0, 0, 1), math.pi / 2)
    c4 = [np.linalg.matrix_power(r, k) for k in range(4)]
    assert classify(ops_of(*c4)).schoenflies == "C4"
    s4 = r @ reflection_matrix((0, 0, 1))
    assert classify(ops_of(*[np.linalg.matrix_power(s4, k) for k in range(4)])).schoenflies \
        == "S4"
    sv = reflection_matrix((1, 0, 0))
    c4v = c4 + [m @ sv for m in c4]
    assert classify(ops_of(*c4v)).schoenflies == "C4v"
    sh = reflection_matrix((0, 0, 1))
    assert classify(ops_of(*(c4 + [m @ sh for m in c4]))).schoenflies == "C4h"
    d2 = [np.eye(3), np.diag([1, -1, -1.0]), np.diag([-1, 1, -1.0]), np.diag([-1, -1, 1.0])]
    assert classify(ops_of(*d2)).schoenflies == "D2"
    assert classify(ops_of(*(d2 + [-m for m in d2]))).schoenflies == "D2h"


def test_polyhedra():
    for s, n, sym in ((octahedron(), 48, "Oh"), (cube(), 48, "Oh"), (tetrahedron(), 24, "Td")):
        ops = find_symmetries(s)
        assert len(ops) == n
        assert classify(ops).schoenflies == sym


def test_d2d():
    # a tetrahedron stretched along z keeps D2d
    P = [(1, 1, 2), (-1, -1, 2), (1, -1, -2), (-1, 1, -2)]
    s = Structure.from_arrays(P, list(itertools.combinations(range(4), 2)))
    ops = find_symmetries(s)
    assert len(ops) == 8 and classify(ops).schoenflies == "D2d"


def test_closure_failure():
    with pytest.raises(InconsistentGroup):
        classify(ops_of(np.eye(3), rotation_matrix((0, 0, 1), math.pi / 2)))
    with pytest.raises(InconsistentGroup):
        check_group(ops_of(np.diag([1, -1, -1.0])))


def test_jitter_leaves_identity(tiling):
    rng = np.random.default_rng(7)
    coords = {v: SphericalPoint.from_xyz(p.xyz + rng.normal(0, 1e-3, 3))
              for v, p in tiling.coordinates.items()}
    ops = find_symmetries(Tiling(tiling.chart, tiling.geometry, coords))
    assert [op.kind for op in ops] == ["identity"]


def test_chirality(tiling):
    m = mirror_tiling(tiling)
    assert find_congruences(tiling, m, det=1) == []
    assert len(find_congruences(tiling, m, det=-1)) == 4
    assert classify(find_symmetries(m)).schoenflies == "D2"


@PROPS
@given(unit_quaternions())
def test_classification_invariant_under_rotation(tiling, quat):
    r = quaternion_matrix(quat)
    coords = {v: SphericalPoint.from_xyz(r @ p.xyz) for v, p in tiling.coordinates.items()}
    ops = find_symmetries(Tiling(tiling.chart, tiling.geometry, coords))
    assert len(ops) == 4 and classify(ops).schoenflies == "D2"
    mats = [op.matrix for op in ops]
    for a, b in itertools.product(mats, repeat=2):
        assert any(np.allclose(a @ b, c, atol=1e-9) for c in mats)
