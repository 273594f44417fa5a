"""TilingDocument JSON, OFF meshes and orthographic SVG views."""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence

import numpy as np

from .charts import Chart, parse_expr
from .maps import CombinatorialMap, vertex_key
from .solver import solve_geometry
from .sphere import GeodesicArc, SphericalPoint, corner_angle
from .tiling import Tiling, TilingGeometry

GEOMETRY_NAMES = ("a", "b", "alpha", "beta", "gamma", "delta", "phi")


# -- JSON ----------------------------------------------------------------------

def _closed_forms(F: int) -> Dict[str, str]:
    try:
        return {k: str(v) for k, v in solve_geometry(F).closed_forms().items()}
    except ValueError:
        return {}


def to_document(t: Tiling, symmetry: Optional[dict] = None) -> dict:
    """Plain-data form of a tiling; floats are written so they read back bit-exact."""
    g = t.geometry
    forms = _closed_forms(g.F)
    m = t.chart.map
    doc = {
        "faces": g.F,
        "tile_type": t.chart.tile_type,
        "geometry": {n: {"value": getattr(g, n), "closed_form": forms.get(n)}
                     for n in GEOMETRY_NAMES},
        "vertices": [{"id": v, "colatitude": t.coordinates[v].colatitude,
                      "longitude": t.coordinates[v].longitude,
                      "xyz": [float(x) for x in t.coordinates[v].xyz]}
                     for v in m.vertices],
        "rotation": {v: list(m.rotation[v]) for v in m.vertices},
        "edges": [{"u": u, "v": v, "label": t.chart.lengths[e]}
                  for e in m.edges for u, v in [sorted(e, key=vertex_key)]],
        "angles": [{"corner": list(a), "type": str(t.chart.angles[a])}
                   for a in sorted(t.chart.angles, key=lambda a: [vertex_key(x) for x in a])],
        "tiles": [list(f) for f in m.trace_faces()],
    }
    if symmetry is not None:
        doc["symmetry"] = symmetry
    return doc


def from_document(doc: dict) -> Tiling:
    m = CombinatorialMap({v: tuple(n) for v, n in doc["rotation"].items()})
    lengths = {frozenset((e["u"], e["v"])): e["label"] for e in doc["edges"]}
    angles = {tuple(a["corner"]): parse_expr(a["type"]) for a in doc["angles"]}
    chart = Chart(m, lengths, angles, doc.get("tile_type", 2))
    geom = TilingGeometry(doc["faces"], **{n: doc["geometry"][n]["value"]
                                           for n in GEOMETRY_NAMES})
    coords = {p["id"]: SphericalPoint(p["colatitude"], p["longitude"]) for p in doc["vertices"]}
    return Tiling(chart, geom, coords)


def symmetry_summary(t: Tiling) -> dict:
    from .symmetry import classify, find_symmetries

    ops = find_symmetries(t)
    return {"schoenflies": classify(ops).schoenflies,
            "operations": [{"kind": op.kind, "order": op.order,
                            "axis": None if op.axis is None else [float(x) for x in op.axis],
                            "matrix": op.matrix.tolist()} for op in ops]}


def dumps(t: Tiling, symmetry: bool = True) -> str:
    return json.dumps(to_document(t, symmetry_summary(t) if symmetry else None),
                      indent=1, ensure_ascii=False)


def save_json(t: Tiling, path, symmetry: bool = True):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(t, symmetry) + "\n")


def load_json(path) -> Tiling:
    with open(path, encoding="utf-8") as fh:
        return from_document(json.load(fh))


# -- OFF -----------------------------------------------------------------------

def _edge_samples(t: Tiling, u, v, segments: int) -> np.ndarray:
    return GeodesicArc(t.coordinates[u], t.coordinates[v]).sample(segments)


def corner_angle_of(t: Tiling, face, i: int) -> float:
    n = len(face)
    u, v, w = face[i - 1], face[i], face[(i + 1) % n]
    return corner_angle(t.coordinates[v].xyz, t.coordinates[u].xyz, t.coordinates[w].xyz)


def _unit(p):
    return p / np.linalg.norm(p)


def mesh(t: Tiling, segments: int = 32) -> tuple:
    """Closed triangle mesh with shared edge samples.

    Each quadrangle is cut along the diagonal from its largest corner into two
    geodesic triangles, and each of those is subdivided on a barycentric grid
    of ``segments`` steps per side, pushed out to the sphere.
    """
    if segments < 1:
        raise ValueError("need at least one segment per edge")
    n = segments
    verts: List[np.ndarray] = []
    index: Dict[tuple, int] = {}

    def vid(key, make):
        if key not in index:
            index[key] = len(verts)
            verts.append(make())
        return index[key]

    def edge_point(u, v, k):
        # k steps from u towards v; keyed by the sorted pair so neighbours agree
        if k == 0:
            return vid((u,), lambda: t.coordinates[u].xyz)
        if k == n:
            return vid((v,), lambda: t.coordinates[v].xyz)
        a, b = sorted((u, v), key=vertex_key)
        if (a, b) != (u, v):
            k = n - k
        pa, pb = t.coordinates[a].xyz, t.coordinates[b].xyz
        return vid((a, b, k), lambda: _unit((n - k) * pa + k * pb))

    faces = []
    for face in t.chart.map.trace_faces():
        k = int(np.argmax([corner_angle_of(t, face, i) for i in range(len(face))]))
        walk = face[k:] + face[:k]
        for tri in ((walk[0], walk[1], walk[2]), (walk[2], walk[3], walk[0])):
            P = [t.coordinates[v].xyz for v in tri]
            if np.linalg.det(np.array(P)) < 0:  # outward normals
                tri = (tri[0], tri[2], tri[1])
                P = [P[0], P[2], P[1]]

            def grid(i, j, tri=tri, P=P):
                # i steps towards tri[1], j towards tri[2]
                if j == 0:
                    return edge_point(tri[0], tri[1], i)
                if i == 0:
                    return edge_point(tri[0], tri[2], j)
                if i + j == n:
                    return edge_point(tri[1], tri[2], j)
                return vid(("inner",) + tri + (i, j),
                           lambda: _unit((n - i - j) * P[0] + i * P[1] + j * P[2]))

            for i in range(n):
                for j in range(n - i):
                    faces.append((grid(i, j), grid(i + 1, j), grid(i, j + 1)))
                    if i + j < n - 1:
                        faces.append((grid(i + 1, j), grid(i + 1, j + 1), grid(i, j + 1)))
    return np.array(verts), faces


def to_off(t: Tiling, segments: int = 32) -> str:
    verts, faces = mesh(t, segments)
    n_edges = len({frozenset((f[i], f[(i + 1) % 3])) for f in faces for i in range(3)})
    lines = ["OFF", f"{len(verts)} {len(faces)} {n_edges}"]
    lines += [" ".join(f"{x:.17g}" for x in p) for p in verts]
    lines += ["3 " + " ".join(str(k) for k in f) for f in faces]
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> tuple:
    rows = [r for r in text.split("\n") if r.strip() and not r.startswith("#")]
    if rows[0].strip() != "OFF":
        raise ValueError("missing OFF header")
    nv, nf, _ = (int(x) for x in rows[1].split())
    verts = np.array([[float(x) for x in r.split()] for r in rows[2:2 + nv]])
    faces = [tuple(int(x) for x in r.split()[1:]) for r in rows[2 + nv:2 + nv + nf]]
    return verts, faces


# -- SVG -----------------------------------------------------------------------

def view_basis(view: Sequence[float]) -> np.ndarray:
    """Rows: screen right, screen up, towards the viewer."""
    d = np.asarray(view, float)
    n = np.linalg.norm(d)
    if d.shape != (3,) or not np.isfinite(n) or n < 1e-12:
        raise ValueError(f"bad view vector {list(view)!r}")
    d = d / n
    up = np.array([0.0, 0.0, 1.0]) if abs(d[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e2 = up - np.dot(up, d) * d
    e2 /= np.linalg.norm(e2)
    return np.array([np.cross(e2, d), e2, d])


def _runs(mask: np.ndarray) -> List[slice]:
    out, start = [], None
    for k, m in enumerate(mask):
        if m and start is None:
            start = k
        if not m and start is not None:
            out.append(slice(start, k))
            start = None
    if start is not None:
        out.append(slice(start, len(mask)))
    return out


def to_svg(t: Tiling, view: Sequence[float] = (0.0, 0.0, 1.0), segments: int = 32,
           size: int = 400, labels: bool = True) -> str:
    """Orthographic view of the near hemisphere; b-edges drawn thick."""
    basis = view_basis(view)
    r = size * 0.45
    c = size / 2

    def xy(p):
        q = basis @ p
        return c + r * q[0], c - r * q[1]

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<circle cx="{c:.3f}" cy="{c:.3f}" r="{r:.3f}" fill="white" '
           f'stroke="#999" stroke-width="0.5"/>']
    for e in t.chart.map.edges:
        u, v = sorted(e, key=vertex_key)
        pts = _edge_samples(t, u, v, segments)
        front = pts @ basis[2] >= 0
        width = 3.0 if t.chart.lengths[e] == "b" else 1.0
        for run in _runs(front):
            seg = pts[run]
            if len(seg) < 2:
                continue
            d = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(xy, seg))
            out.append(f'<polyline points="{d}" fill="none" stroke="black" '
                       f'stroke-width="{width}" stroke-linecap="round"/>')
    for v in t.chart.map.vertices:
        p = t.coordinates[v].xyz
        if p @ basis[2] < 0:
            continue
        x, y = xy(p)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2" fill="black"/>')
        if labels:
            out.append(f'<text x="{x + 4:.3f}" y="{y - 4:.3f}" font-size="10" '
                       f'font-family="sans-serif">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def parse_view(text: str) -> np.ndarray:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad view vector {text!r}") from None
    if len(vals) != 3:
        raise ValueError(f"bad view vector {text!r}")
    view_basis(vals)
    return np.array(vals)


def mid_view(t: Tiling, u, v) -> np.ndarray:
    p = t.coordinates[u].xyz + t.coordinates[v].xyz
    return p / np.linalg.norm(p)

