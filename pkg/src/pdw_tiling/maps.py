"""Combinatorial maps given by rotation systems, and pseudo-double wheels.

A vertex ``v`` carries a cyclic order ``O_v`` of its neighbours. The angles
around ``v`` are the triples ``(u, v, w)`` where ``w`` directly follows ``u``
in ``O_v``. Rim vertices of a pseudo-double wheel are named ``v0 .. v{F-1}``
and the two apexes ``N`` and ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

Vertex = str
Edge = frozenset
Angle = Tuple[Vertex, Vertex, Vertex]


class InvalidF(ValueError):
    pass


class UnknownVertex(KeyError):
    pass


class InconsistentRotationSystem(ValueError):
    pass


def vertex_key(v: Vertex):
    if v == "N":
        return (0, 0, "")
    if v == "S":
        return (1, 0, "")
    if v.startswith("v") and v[1:].isdigit():
        return (2, int(v[1:]), "")
    return (3, 0, v)


def rim(i: int, F: int) -> Vertex:
    return f"v{i % F}"


def rim_index(v: Vertex) -> int:
    return int(v[1:])


def _canonical_cycle(seq: Iterable[Vertex]) -> Tuple[Vertex, ...]:
    seq = tuple(seq)
    if not seq:
        return seq
    k = min(range(len(seq)), key=lambda i: vertex_key(seq[i]))
    return seq[k:] + seq[:k]


@dataclass(frozen=True, eq=False)
class CombinatorialMap:
    rotation: Mapping[Vertex, Tuple[Vertex, ...]]
    _succ: Dict = field(init=False, repr=False)

    def __post_init__(self):
        rot = {v: _canonical_cycle(nbrs) for v, nbrs in self.rotation.items()}
        for v, nbrs in rot.items():
            if len(set(nbrs)) != len(nbrs):
                raise InconsistentRotationSystem(f"repeated neighbour at {v}")
            for u in nbrs:
                if u not in rot or v not in rot[u]:
                    raise InconsistentRotationSystem(f"edge {v}{u} is not symmetric")
        succ = {}
        for v, nbrs in rot.items():
            for i, u in enumerate(nbrs):
                succ[v, u] = nbrs[(i + 1) % len(nbrs)]
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "_succ", succ)

    def __eq__(self, other):
        if not isinstance(other, CombinatorialMap):
            return NotImplemented
        return self.rotation == other.rotation

    def __hash__(self):
        return hash(tuple(sorted(self.rotation.items(), key=lambda kv: vertex_key(kv[0]))))

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.rotation, key=vertex_key))

    @property
    def edges(self) -> Tuple[Edge, ...]:
        es = {frozenset((v, u)) for v, nbrs in self.rotation.items() for u in nbrs}
        return tuple(sorted(es, key=edge_key))

    def degree(self, v: Vertex) -> int:
        return len(self.neighbours(v))

    def neighbours(self, v: Vertex) -> Tuple[Vertex, ...]:
        try:
            return self.rotation[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def successor(self, v: Vertex, u: Vertex) -> Vertex:
        return self._succ[v, u]

    def angles_around(self, v: Vertex) -> list:
        nbrs = self.neighbours(v)
        return [(u, v, self._succ[v, u]) for u in nbrs]

    def angles(self) -> list:
        return [a for v in self.vertices for a in self.angles_around(v)]

    def mirror(self) -> "CombinatorialMap":
        return CombinatorialMap({v: tuple(reversed(n)) for v, n in self.rotation.items()})

    def trace_faces(self) -> list:
        """Face boundary walks; a walk ``(w0, w1, ...)`` has corner
        ``(w[i-1], w[i], w[i+1])`` at ``w[i]``."""
        seen = set()
        faces = []
        for v in self.vertices:
            for u in self.rotation[v]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(b)
                    a, b = b, self._succ[b, a]
                if (a, b) != (u, v):
                    raise InconsistentRotationSystem("face walk did not close")
                faces.append(_canonical_cycle(walk))
        V, E, F = len(self.rotation), len(self.edges), len(faces)
        if V - E + F != 2:
            raise InconsistentRotationSystem(f"V - E + F = {V - E + F}, not a sphere")
        return sorted(faces, key=lambda f: [vertex_key(x) for x in f])


def edge_key(e: Edge):
    return tuple(sorted(vertex_key(v) for v in e))


def face_corners(face: Tuple[Vertex, ...]) -> list:
    n = len(face)
    return [(face[i - 1], face[i], face[(i + 1) % n]) for i in range(n)]


def face_edges(face: Tuple[Vertex, ...]) -> list:
    """Edge between corner i and corner i+1 of the walk."""
    n = len(face)
    return [frozenset((face[i], face[(i + 1) % n])) for i in range(n)]


def _check_F(F: int):
    if not isinstance(F, int) or F % 2 or F < 6:
        raise InvalidF(f"F must be an even integer >= 6, got {F!r}")


def pseudo_double_wheel(F: int) -> CombinatorialMap:
    _check_F(F)
    rot = {
        "N": tuple(rim(2 * i, F) for i in range(F // 2)),
        "S": tuple(rim(-2 * i + 1, F) for i in range(F // 2)),
    }
    for i in range(F):
        if i % 2 == 0:
            rot[rim(i, F)] = (rim(i - 1, F), rim(i + 1, F), "N")
        else:
            rot[rim(i, F)] = (rim(i + 1, F), rim(i - 1, F), "S")
    return CombinatorialMap(rot)


def edge_class(e: Edge) -> str:
    if "N" in e:
        return "northern"
    if "S" in e:
        return "southern"
    return "non-meridian"


# -- automorphisms -----------------------------------------------------------

MapAutomorphism = Dict[Vertex, Vertex]


def automorphism_f(F: int) -> MapAutomorphism:
    _check_F(F)
    h = {"N": "S", "S": "N"}
    h.update({rim(i, F): rim(1 - i, F) for i in range(F)})
    return h


def automorphism_g(F: int) -> MapAutomorphism:
    _check_F(F)
    h = {"N": "N", "S": "S"}
    h.update({rim(i, F): rim(i + 6, F) for i in range(F)})
    return h


def compose(h1: MapAutomorphism, h2: MapAutomorphism) -> MapAutomorphism:
    """``h1 o h2``."""
    return {v: h1[h2[v]] for v in h2}


def inverse(h: MapAutomorphism) -> MapAutomorphism:
    return {w: v for v, w in h.items()}


def is_automorphism(m: CombinatorialMap, h: Mapping[Vertex, Vertex]) -> bool:
    verts = set(m.rotation)
    if set(h) != verts or set(h.values()) != verts:
        return False
    for v, nbrs in m.rotation.items():
        image = _canonical_cycle(h[u] for u in nbrs)
        if m.rotation[h[v]] != image:
            return False
    return True


def automorphisms(m: CombinatorialMap) -> list:
    """All orientation-preserving automorphisms; each is fixed by the image of one dart."""
    v0 = m.vertices[0]
    u0 = m.rotation[v0][0]
    found = []
    for x in m.vertices:
        if m.degree(x) != m.degree(v0):
            continue
        for y in m.rotation[x]:
            h = _extend(m, v0, u0, x, y)
            if h is not None:
                found.append(h)
    return sorted(found, key=lambda h: [vertex_key(h[v]) for v in m.vertices])


def _extend(m, v0, u0, x, y):
    h = {v0: x}
    stack = [(v0, u0, y)]
    while stack:
        v, u, hu = stack.pop()
        nbrs, tgt = m.rotation[v], m.rotation[h[v]]
        if len(nbrs) != len(tgt):
            return None
        i, j = nbrs.index(u), tgt.index(hu)
        for k in range(len(nbrs)):
            a, b = nbrs[(i + k) % len(nbrs)], tgt[(j + k) % len(tgt)]
            if a in h:
                if h[a] != b:
                    return None
            else:
                h[a] = b
                stack.append((a, v, h[v]))
    if len(set(h.values())) != len(h) or len(h) != len(m.rotation):
        return None
    return h if is_automorphism(m, h) else None
