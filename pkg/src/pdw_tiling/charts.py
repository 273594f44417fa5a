"""Charts: a map together with edge-length labels and symbolic corner angles.

Angle values are affine combinations of the four tile angles
``alpha, beta, gamma, delta`` with rational coefficients, plus a rational
multiple of pi. Every vertex is constrained to an angle sum of 2*pi.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping

from .maps import (Angle, CombinatorialMap, Edge, MapAutomorphism, automorphisms, edge_key,
                   face_corners, face_edges, is_automorphism, pseudo_double_wheel, rim,
                   vertex_key)

SYMBOLS = ("alpha", "beta", "gamma", "delta")
GLYPHS = {"alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ"}
LABELS = ("a", "b", "c")


class NotMultipleOf6(ValueError):
    pass


class UnassignedAngle(KeyError):
    pass


class NotAutomorphism(ValueError):
    pass


@dataclass(frozen=True)
class AngleExpr:
    """``sum(coeffs[i] * SYMBOLS[i]) + pi_coeff * pi`` with exact coefficients."""

    coeffs: tuple = (Fraction(0),) * 4
    pi_coeff: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "pi_coeff", Fraction(self.pi_coeff))

    @classmethod
    def symbol(cls, name: str) -> "AngleExpr":
        c = [Fraction(0)] * 4
        c[SYMBOLS.index(name)] = Fraction(1)
        return cls(tuple(c))

    @classmethod
    def pi(cls, k=1) -> "AngleExpr":
        return cls(pi_coeff=Fraction(k))

    def __add__(self, other: "AngleExpr") -> "AngleExpr":
        return AngleExpr(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                         self.pi_coeff + other.pi_coeff)

    def __neg__(self) -> "AngleExpr":
        return AngleExpr(tuple(-a for a in self.coeffs), -self.pi_coeff)

    def __sub__(self, other: "AngleExpr") -> "AngleExpr":
        return self + (-other)

    def __mul__(self, k) -> "AngleExpr":
        k = Fraction(k)
        return AngleExpr(tuple(a * k for a in self.coeffs), self.pi_coeff * k)

    __rmul__ = __mul__

    @property
    def is_constant(self) -> bool:
        return not any(self.coeffs)

    @property
    def single_symbol(self) -> str | None:
        """Name of the symbol if the expression is exactly one bare symbol."""
        nz = [i for i, c in enumerate(self.coeffs) if c]
        if len(nz) == 1 and self.coeffs[nz[0]] == 1 and self.pi_coeff == 0:
            return SYMBOLS[nz[0]]
        return None

    def evaluate(self, values: Mapping[str, float]) -> float:
        return (sum(float(c) * values[s] for c, s in zip(self.coeffs, SYMBOLS) if c)
                + float(self.pi_coeff) * math.pi)

    def substitute(self, solution: Mapping[str, "AngleExpr"]) -> "AngleExpr":
        out = AngleExpr.pi(self.pi_coeff)
        for c, s in zip(self.coeffs, SYMBOLS):
            if c:
                out = out + solution.get(s, AngleExpr.symbol(s)) * c
        return out

    def permute(self, perm: Mapping[str, str]) -> "AngleExpr":
        c = [Fraction(0)] * 4
        for i, s in enumerate(SYMBOLS):
            c[SYMBOLS.index(perm.get(s, s))] += self.coeffs[i]
        return AngleExpr(tuple(c), self.pi_coeff)

    def __str__(self):
        parts = []
        for c, s in zip(self.coeffs, SYMBOLS):
            if c:
                parts.append(_term(c, GLYPHS[s]))
        if self.pi_coeff or not parts:
            parts.append(_term(self.pi_coeff, "π") if self.pi_coeff else "0")
        out = "+".join(parts).replace("+-", "-")
        return out

    def ascii(self) -> str:
        s = str(self)
        for name, g in GLYPHS.items():
            s = s.replace(g, name)
        return s.replace("π", "pi")


def _term(c: Fraction, name: str) -> str:
    if c == 1:
        return name
    if c == -1:
        return "-" + name
    if c.denominator == 1:
        return f"{c.numerator}{name}"
    num = {1: "", -1: "-"}.get(c.numerator, str(c.numerator))
    return f"{num}{name}/{c.denominator}"


def parse_expr(text: str) -> AngleExpr:
    """Parse ``str``/``ascii`` output of single terms joined by + or -."""
    t = text.replace(" ", "")
    for name, g in GLYPHS.items():
        t = t.replace(name, g)
    t = t.replace("pi", "π")
    expr = AngleExpr()
    for tok in t.replace("-", "+-").split("+"):
        if not tok or tok == "0":
            continue
        num, _, den = tok.partition("/")
        name = num.lstrip("-0123456789")
        coef = num[: len(num) - len(name)]
        coef = Fraction({"": 1, "-": -1}.get(coef) or int(coef))
        if den:
            coef /= int(den)
        if name == "π":
            expr = expr + AngleExpr.pi(coef)
        else:
            sym = next(s for s, g in GLYPHS.items() if g == name)
            expr = expr + AngleExpr.symbol(sym) * coef
    return expr


ALPHA, BETA, GAMMA, DELTA = (AngleExpr.symbol(s) for s in SYMBOLS)
TWO_PI = AngleExpr.pi(2)

# corner symbols in cyclic order, then the label of the edge from corner i to i+1
TILE_PATTERNS = {
    2: (SYMBOLS, ("a", "a", "a", "b")),
    4: (SYMBOLS, ("a", "a", "b", "c")),
}

# relabelling of tile corners that maps a tile pattern onto its own mirror image
PATTERN_SYMMETRIES = {
    2: ({}, {"alpha": "delta", "delta": "alpha", "beta": "gamma", "gamma": "beta"}),
    4: ({},),
}


def placements(tile_type: int) -> list:
    """All ways of laying the tile pattern on a 4-cycle: 4 rotations times 2 reflections.

    Each placement is ``(corner_symbols, edge_labels)`` indexed like a face walk.
    """
    syms, labels = TILE_PATTERNS[tile_type]
    out = []
    for s in range(4):
        out.append((tuple(syms[(s + i) % 4] for i in range(4)),
                    tuple(labels[(s + i) % 4] for i in range(4))))
        out.append((tuple(syms[(s - i) % 4] for i in range(4)),
                    tuple(labels[(s - i - 1) % 4] for i in range(4))))
    return sorted(set(out))


@dataclass(frozen=True, eq=False)
class Chart:
    map: CombinatorialMap
    lengths: Mapping[Edge, str]
    angles: Mapping[Angle, AngleExpr]
    tile_type: int = 2

    def __eq__(self, other):
        return charts_equal(self, other)

    def __hash__(self):
        return hash(self.key())

    @property
    def F(self) -> int:
        return len(self.map.trace_faces())

    def key(self):
        """Canonical hashable form used for sorting and set comparison."""
        ls = tuple(sorted(((edge_key(e), l) for e, l in self.lengths.items())))
        ks = tuple(sorted(((tuple(vertex_key(x) for x in a), k.coeffs, k.pi_coeff)
                           for a, k in self.angles.items())))
        rot = tuple(sorted((vertex_key(v), tuple(vertex_key(u) for u in n))
                           for v, n in self.map.rotation.items()))
        return (self.tile_type, rot, ls, ks)

    def angle(self, u, v, w) -> AngleExpr:
        try:
            return self.angles[u, v, w]
        except KeyError:
            raise UnassignedAngle((u, v, w)) from None


def alternating_length_assignment(F: int) -> Dict[Edge, str]:
    """b on N v_{6i}, v_{6i+1} S and v_{6i+3} v_{6i+4}; a elsewhere."""
    if not isinstance(F, int) or F % 2 or F < 10:
        raise ValueError(f"F must be an even integer >= 10, got {F!r}")
    if F % 6:
        raise NotMultipleOf6(f"F must be a multiple of 6, got {F}")
    m = pseudo_double_wheel(F)
    L = {e: "a" for e in m.edges}
    for i in range(F // 6):
        for e in (("N", rim(6 * i, F)), (rim(6 * i + 1, F), "S"),
                  (rim(6 * i + 3, F), rim(6 * i + 4, F))):
            L[frozenset(e)] = "b"
    return L


def vertex_type(chart: Chart, v) -> AngleExpr:
    total = AngleExpr()
    for a in chart.map.angles_around(v):
        total = total + chart.angle(*a)
    return total


def mirror_chart(chart: Chart) -> Chart:
    m = chart.map.mirror()
    K = {(u, v, w): chart.angles[w, v, u] for (u, v, w) in m.angles()
         if (w, v, u) in chart.angles}
    return Chart(m, dict(chart.lengths), K, chart.tile_type)


def apply_automorphism(chart: Chart, h: MapAutomorphism) -> Chart:
    """The chart ``(M, L o h^-1, K o h^-1)``."""
    if not is_automorphism(chart.map, h):
        raise NotAutomorphism("not an automorphism of the chart's map")
    L = {frozenset(h[x] for x in e): l for e, l in chart.lengths.items()}
    K = {(h[u], h[v], h[w]): k for (u, v, w), k in chart.angles.items()}
    return Chart(chart.map, L, K, chart.tile_type)


def relabel_symbols(chart: Chart, perm: Mapping[str, str]) -> Chart:
    K = {a: k.permute(perm) for a, k in chart.angles.items()}
    return Chart(chart.map, dict(chart.lengths), K, chart.tile_type)


def charts_equal(x: Chart, y: Chart) -> bool:
    if not isinstance(x, Chart) or not isinstance(y, Chart):
        return NotImplemented
    return (x.tile_type == y.tile_type and x.map == y.map
            and dict(x.lengths) == dict(y.lengths) and dict(x.angles) == dict(y.angles))


def symmetry_orbit(chart: Chart) -> list:
    """Images of ``chart`` under map automorphisms and tile-corner relabellings
    that fix the tile pattern."""
    seen = {}
    for h in automorphisms(chart.map):
        hc = apply_automorphism(chart, h)
        for perm in PATTERN_SYMMETRIES[chart.tile_type]:
            c = relabel_symbols(hc, perm) if perm else hc
            seen.setdefault(c.key(), c)
    return [seen[k] for k in sorted(seen)]


@functools.lru_cache(maxsize=256)
def _orbit_keys(chart: Chart) -> frozenset:
    return frozenset(c.key() for c in symmetry_orbit(chart))


def equal_up_to_symmetry(x: Chart, y: Chart) -> bool:
    orbit = _orbit_keys(x)
    if y.key() in orbit:
        return True
    if mirror_chart(y).map == x.map:
        return mirror_chart(y).key() in orbit
    return False


def face_pattern_check(chart: Chart) -> list:
    allowed = set(placements(chart.tile_type))
    violations = []
    for face in chart.map.trace_faces():
        if len(face) != 4:
            violations.append(f"face {face}: not a quadrangle")
            continue
        syms = []
        for corner in face_corners(face):
            k = chart.angles.get(corner)
            syms.append(k.single_symbol if k is not None else None)
        labels = tuple(chart.lengths.get(e) for e in face_edges(face))
        if (tuple(syms), labels) not in allowed:
            shown = ",".join(str(s) for s in syms)
            violations.append(f"face {'-'.join(face)}: corners ({shown}) edges "
                              f"{''.join(str(l) for l in labels)} match no type-"
                              f"{chart.tile_type} placement")
    return violations


# fundamental domain of the F/6-periodic chart: rim corners for v0..v5,
# then corners at N and S; indices are offsets from 6i
_RIM_CORNERS = [
    ((-1, 0, 1), "gamma"), ((1, 0, "N"), "delta"), (("N", 0, -1), "alpha"),
    ((2, 1, 0), "gamma"), ((0, 1, "S"), "delta"), (("S", 1, 2), "alpha"),
    ((1, 2, 3), "beta"), ((3, 2, "N"), "gamma"), (("N", 2, 1), "beta"),
    ((4, 3, 2), "delta"), ((2, 3, "S"), "gamma"), (("S", 3, 4), "alpha"),
    ((3, 4, 5), "delta"), ((5, 4, "N"), "gamma"), (("N", 4, 3), "alpha"),
    ((6, 5, 4), "beta"), ((4, 5, "S"), "gamma"), (("S", 5, 6), "beta"),
    ((0, "N", 2), "alpha"), ((2, "N", 4), "beta"), ((4, "N", 6), "delta"),
    ((1, "S", -1), "alpha"), ((-1, "S", -3), "beta"), ((-3, "S", -5), "delta"),
]


def chart_a(F: int = 12) -> Chart:
    """The periodic type-2 chart over pdw_F with the alternating length assignment."""
    L = alternating_length_assignment(F)
    m = pseudo_double_wheel(F)
    K = {}
    for i in range(F // 6):
        for corner, sym in _RIM_CORNERS:
            key = tuple(x if isinstance(x, str) else rim(6 * i + x, F) for x in corner)
            K[key] = AngleExpr.symbol(sym)
    return Chart(m, L, K, 2)
