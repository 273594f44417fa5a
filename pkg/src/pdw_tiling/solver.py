"""Angle systems of charts, pruning lemmas, chart enumeration and the
closed-form solve of the alternating twelve-tile chart.

All linear algebra is exact (``fractions.Fraction``) with constants measured
in units of pi. Feasibility of the strict bounds ``0 < x < 2*pi`` over the
free parameters is decided by Fourier-Motzkin elimination.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Sequence

from .charts import (PATTERN_SYMMETRIES, SYMBOLS, AngleExpr, Chart,
                     alternating_length_assignment, equal_up_to_symmetry,
                     face_pattern_check, placements, vertex_type)
from .closed_form import ClosedForm, Surd, cos_pi, sin_pi, sqrt1m
from .maps import face_corners, face_edges, pseudo_double_wheel, rim_index


class SearchSpaceExceeded(RuntimeError):
    pass


class NoSolution(ValueError):
    pass


# -- linear systems ----------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    """Equations ``expr == 0`` over the tile angles with bounds 0 < x < 2*pi."""

    equations: tuple = ()
    labels: tuple = ()

    def __iter__(self):
        return iter(self.equations)

    def __len__(self):
        return len(self.equations)

    def text(self) -> list:
        out = []
        for e in self.equations:
            rhs = AngleExpr.pi(-e.pi_coeff)
            lhs = AngleExpr(e.coeffs)
            out.append(f"{lhs} = {rhs}")
        return out


def area_equation(F: int) -> AngleExpr:
    # alpha + beta + gamma + delta - 2pi = 4pi/F
    return AngleExpr((1, 1, 1, 1), Fraction(-2) - Fraction(4, F))


def build_system(chart: Chart, F: int | None = None) -> LinearSystem:
    F = chart.F if F is None else F
    eqs, labels = [], []
    for v in chart.map.vertices:
        eqs.append(vertex_type(chart, v) - AngleExpr.pi(2))
        labels.append(v)
    eqs.append(area_equation(F))
    labels.append("area")
    return LinearSystem(tuple(eqs), tuple(labels))


@dataclass(frozen=True)
class Unsolvable:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class AngleSolution:
    """Each symbol as an affine expression in the free symbols."""

    values: Mapping[str, AngleExpr]
    free: tuple
    rows: tuple = field(default=(), repr=False)

    def __getitem__(self, s: str) -> AngleExpr:
        return self.values[s]

    @property
    def is_parametric(self) -> bool:
        return bool(self.free)

    def as_system(self) -> LinearSystem:
        return LinearSystem(self.rows, tuple("reduced" for _ in self.rows))

    def with_equations(self, *exprs: AngleExpr):
        return solve_system(LinearSystem(self.rows + tuple(exprs)))

    def evaluate(self, expr: AngleExpr) -> AngleExpr:
        return expr.substitute(self.values)

    def relation(self, x: AngleExpr, y: AngleExpr) -> str:
        """'forced', 'impossible' or 'undetermined' for ``x == y``."""
        d = self.evaluate(x - y)
        if d.is_constant:
            return "forced" if d.pi_coeff == 0 else "impossible"
        return "undetermined" if self.with_equations(d) else "impossible"

    def numeric(self, params: Mapping[str, float] | None = None) -> Dict[str, float]:
        params = dict(params or {})
        return {s: self.values[s].evaluate(params) for s in SYMBOLS}

    def __str__(self):
        return ", ".join(f"{_glyph(s)}={self.values[s]}" for s in SYMBOLS)


def _glyph(s):
    return AngleExpr.symbol(s).__str__()


def _row(e: AngleExpr) -> tuple:
    return tuple(e.coeffs) + (-e.pi_coeff,)


def _rref(rows: Sequence[tuple]):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    # pivot from delta down so the earliest symbols stay free (delta = 8pi/F - alpha)
    for col in (3, 2, 1, 0):
        p = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][col]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m, pivots, r


def _fm_feasible(constraints: list, nvars: int) -> bool:
    """Does some point satisfy every ``coeffs . t + const > 0``?"""
    cons = [(tuple(c), k) for c, k in constraints]
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for c, k in cons:
            (pos if c[var] > 0 else neg if c[var] < 0 else rest).append((c, k))
        new = set(rest)
        for (cp, kp), (cn, kn) in itertools.product(pos, neg):
            a, b = cp[var], -cn[var]
            c = tuple(b * x + a * y for x, y in zip(cp, cn))
            new.add(_normalize(c, b * kp + a * kn))
        cons = list(new)
    return all(k > 0 for _, k in cons)


def _normalize(c, k):
    scale = max((abs(x) for x in c), default=0) or abs(k) or 1
    return tuple(x / scale for x in c), k / scale


@lru_cache(maxsize=200_000)
def _solve_rows(rows: frozenset):
    m, pivots, rank = _rref(sorted(rows))
    for row in m[rank:]:
        if row[4] != 0:
            return Unsolvable("contradictory equations")
    free = tuple(s for i, s in enumerate(SYMBOLS) if i not in pivots)
    values = {s: AngleExpr.symbol(s) for s in free}
    reduced = []
    for r, col in enumerate(pivots):
        row = m[r]
        expr = AngleExpr.pi(row[4])
        for j in range(4):
            if j != col and row[j] != 0:
                expr = expr - AngleExpr.symbol(SYMBOLS[j]) * row[j]
        values[SYMBOLS[col]] = expr
        reduced.append(AngleExpr(tuple(row[:4]), -row[4]))
    # strict bounds 0 < x < 2 (units of pi) over the free symbols
    idx = [SYMBOLS.index(s) for s in free]
    cons = []
    for s in SYMBOLS:
        e = values[s]
        c = tuple(e.coeffs[i] for i in idx)
        cons.append((c, e.pi_coeff))
        cons.append((tuple(-x for x in c), 2 - e.pi_coeff))
    if not _fm_feasible(cons, len(free)):
        bad = [s for s in SYMBOLS if values[s].is_constant
               and not 0 < values[s].pi_coeff < 2]
        why = f"{_glyph(bad[0])}={values[bad[0]]} violates 0<x<2π" if bad \
            else "bounds 0<x<2π infeasible"
        return Unsolvable(why)
    return AngleSolution(values, free, tuple(reduced))


def solve_system(system) -> AngleSolution | Unsolvable:
    eqs = system.equations if isinstance(system, LinearSystem) else tuple(system)
    return _solve_rows(frozenset(_row(e) for e in eqs))


# -- pruning lemmas ----------------------------------------------------------

class Verdict(enum.Enum):
    VIOLATED = "violated"
    SATISFIED = "satisfied"
    UNDETERMINED = "undetermined"


ALPHA, BETA, GAMMA, DELTA = (AngleExpr.symbol(s) for s in SYMBOLS)


def _must_differ(sol: AngleSolution, pairs) -> Verdict:
    states = [sol.relation(x, y) for x, y in pairs]
    if "forced" in states:
        return Verdict.VIOLATED
    if all(s == "impossible" for s in states):
        return Verdict.SATISFIED
    return Verdict.UNDETERMINED


def lemma_opposite(tile_type: int, sol: AngleSolution) -> Verdict:
    """Opposite corners of the tile differ: beta != delta and alpha != gamma
    (type 2); alpha != gamma (type 4)."""
    pairs = [(ALPHA, GAMMA)] + ([(BETA, DELTA)] if tile_type == 2 else [])
    return _must_differ(sol, pairs)


def lemma_forbidden_3valent(chart: Chart) -> Verdict:
    """Type 4: no 3-valent vertex of type Z+2δ or Z+β+δ."""
    if chart.tile_type != 4:
        return Verdict.SATISFIED
    complete = True
    for v in chart.map.vertices:
        corners = chart.map.angles_around(v)
        if len(corners) != 3:
            continue
        ks = [chart.angles.get(a) for a in corners]
        if any(k is None for k in ks):
            complete = False
            continue
        syms = [k.single_symbol for k in ks]
        if syms.count("delta") >= 2 or ("delta" in syms and "beta" in syms):
            return Verdict.VIOLATED
    return Verdict.SATISFIED if complete else Verdict.UNDETERMINED


def lemma_trapezoid(sol: AngleSolution) -> Verdict:
    """Type 2: alpha == delta exactly when beta == gamma."""
    ad, bg = sol.relation(ALPHA, DELTA), sol.relation(BETA, GAMMA)
    if ad == "forced" and not sol.with_equations(BETA - GAMMA):
        return Verdict.VIOLATED
    if bg == "forced" and not sol.with_equations(ALPHA - DELTA):
        return Verdict.VIOLATED
    if ad == bg and ad != "undetermined":
        return Verdict.SATISFIED
    return Verdict.UNDETERMINED


def aux_hypotheses(chart: Chart) -> bool:
    """A vertex meeting exactly three a-edges, and a 3-valent vertex with two
    a-edges and one b-edge."""
    m, L = chart.map, chart.lengths
    labels = {v: sorted(L.get(frozenset((v, u))) or "?" for u in m.neighbours(v))
              for v in m.vertices}
    return (any(l == ["a", "a", "a"] for l in labels.values())
            and any(l == ["a", "a", "b"] for l in labels.values()))


def lemma_aux(chart: Chart, sol: AngleSolution) -> Verdict:
    """Type 2 under :func:`aux_hypotheses`: alpha != delta and beta != gamma."""
    if chart.tile_type != 2 or not aux_hypotheses(chart):
        return Verdict.SATISFIED
    return _must_differ(sol, [(ALPHA, DELTA), (BETA, GAMMA)])


def lemma_verdicts(chart: Chart, sol: AngleSolution) -> Dict[str, Verdict]:
    out = {"opposite": lemma_opposite(chart.tile_type, sol),
           "forbidden_3valent": lemma_forbidden_3valent(chart)}
    if chart.tile_type == 2:
        out["trapezoid"] = lemma_trapezoid(sol)
        out["aux"] = lemma_aux(chart, sol)
    return out


# -- closed-form geometry ----------------------------------------------------

@dataclass(frozen=True)
class GeometrySolution:
    F: int
    a: ClosedForm
    b: ClosedForm
    alpha: ClosedForm
    beta: ClosedForm
    gamma: ClosedForm
    delta: ClosedForm
    phi: ClosedForm
    cos_diagonal: Surd
    rejected_inner_product: Surd

    NAMES = ("a", "b", "alpha", "beta", "gamma", "delta", "phi")

    def closed_forms(self) -> Dict[str, ClosedForm]:
        return {n: getattr(self, n) for n in self.NAMES}

    def values(self) -> Dict[str, float]:
        return {n: getattr(self, n).value for n in self.NAMES}


def _check_multiple_of_6(F: int):
    if not isinstance(F, int) or F < 12 or F % 6:
        raise ValueError(f"F must be a multiple of 6 and at least 12, got {F!r}")


def cos_a_from_faces(F: int) -> float:
    """cos a = -cos(8pi/F) / (1 - cos(8pi/F)) in floating point."""
    c = math.cos(8 * math.pi / F)
    return -c / (1 - c)


def solve_geometry(F: int) -> GeometrySolution:
    """Edge lengths, angles and the longitude offset of the alternating chart over pdw_F.

    Raises NoSolution unless cos a > 0, which among multiples of 6 holds only for F = 12.
    """
    _check_multiple_of_6(F)
    q8 = Fraction(8, F)
    c8 = cos_pi(q8)
    if c8 is None or float(-c8 / (1 - c8)) <= 0:
        if cos_a_from_faces(F) > 0:  # pragma: no cover - cannot happen for F % 6 == 0
            raise NoSolution(f"cos(8π/{F}) has no supported closed form")
        raise NoSolution(f"no solution: cos a ≤ 0 for F={F}")
    cos_a = -c8 / (1 - c8)
    sin_a = sqrt1m(cos_a)
    beta = ClosedForm.pi(Fraction(4, F))
    cos_diag = cos_a * cos_a + (1 - cos_a.square()) * beta.cos
    # v2 v4 has length pi - b
    cos_b = -cos_diag
    sin_b = sqrt1m(cos_b)
    # cos(pi - a) = cos b cos a + sin b sin a cos alpha
    cos_alpha = (-cos_a - cos_b * cos_a) / (sin_b * sin_a)
    sin_alpha = sqrt1m(cos_alpha)
    # delta = 8pi/F - alpha
    cos_delta = c8 * cos_alpha + sin_pi(q8) * sin_alpha
    delta = ClosedForm.arccos(cos_delta)
    if not 0 < delta.value < math.pi:
        raise NoSolution("delta outside (0, pi)")
    # cos a = cos b cos(pi-b) + sin b sin(pi-b) cos phi
    cos_phi = (cos_a + cos_b * cos_b) / (sin_b * sin_b)
    sin_phi = sqrt1m(cos_phi)
    accepted = longitude_inner_product(cos_a, cos_b, cos_alpha, cos_phi, sin_phi)
    rejected = longitude_inner_product(cos_a, cos_b, cos_alpha, cos_phi, -sin_phi)
    if accepted != cos_a:
        raise NoSolution("positive longitude branch inconsistent")
    return GeometrySolution(
        F=F, a=ClosedForm.arccos(cos_a), b=ClosedForm.arccos(cos_b),
        alpha=ClosedForm.arccos(cos_alpha), beta=beta,
        gamma=ClosedForm.pi(2 - q8), delta=delta, phi=ClosedForm.arccos(cos_phi),
        cos_diagonal=cos_diag, rejected_inner_product=rejected)


def longitude_inner_product(cos_a, cos_b, cos_alpha, cos_phi, sin_phi) -> Surd:
    """<v1, v2> for v1 = (pi - b, +-phi), v2 = (a, alpha); the sign rides on sin_phi."""
    sin_a, sin_b = sqrt1m(cos_a), sqrt1m(cos_b)
    sin_alpha = sqrt1m(cos_alpha)
    cos_diff = cos_alpha * cos_phi + sin_alpha * sin_phi  # cos(alpha - phi)
    return sin_b * sin_a * cos_diff + (-cos_b) * cos_a


# -- enumeration -------------------------------------------------------------

@dataclass
class SearchConfig:
    face_budget: int = 24
    prune: bool = True
    geometric_filter: bool = True


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    pruned: int = 0
    rejected: Dict[str, int] = field(default_factory=dict)

    def reject(self, why: str):
        self.rejected[why] = self.rejected.get(why, 0) + 1


def _tile_types(tile_type) -> tuple:
    if tile_type in ("both", None):
        return (2, 4)
    t = int(tile_type)
    if t not in (2, 4):
        raise ValueError(f"tile type must be 2, 4 or 'both', got {tile_type!r}")
    return (t,)


def wheel_faces(F: int) -> list:
    """Faces of pdw_F in the order they are visited around the wheel."""
    faces = pseudo_double_wheel(F).trace_faces()

    def start(face):
        idx = sorted(rim_index(v) for v in face if v not in ("N", "S"))
        for i in idx:
            if {(i + k) % F for k in range(3)} == set(idx):
                return i
        raise AssertionError(face)
    return sorted(faces, key=start)


def _candidates(face, L0: Mapping, tile_type: int) -> list:
    out = []
    edges = face_edges(face)
    for syms, labels in placements(tile_type):
        if all((L0[e] == "b") == (lab == "b") for e, lab in zip(edges, labels)):
            out.append((syms, labels))
    return out


def _vertex_row(m, K, v) -> tuple:
    e = AngleExpr.pi(-2)
    for a in m.angles_around(v):
        e = e + K[a]
    return _row(e)


def passes_final_filter(chart: Chart, stats: SearchStats | None = None,
                        geometric: bool = True) -> bool:
    """Leaf test shared by the pruned search and the brute-force oracle."""
    stats = stats or SearchStats()
    if face_pattern_check(chart):
        stats.reject("face pattern")
        return False
    sol = solve_system(build_system(chart))
    if not sol:
        stats.reject("linear system")
        return False
    if any(v is Verdict.VIOLATED for v in lemma_verdicts(chart, sol).values()):
        stats.reject("lemma")
        return False
    if geometric and not geometric_filter(chart, sol):
        stats.reject("geometry")
        return False
    return True


def geometric_filter(chart: Chart, sol: AngleSolution) -> bool:
    """Plug the closed-form geometry into the chart's angle system."""
    try:
        geo = solve_geometry(chart.F)
    except (NoSolution, ValueError):
        return False
    vals = {s: getattr(geo, s).value for s in SYMBOLS}
    # corner names are only fixed up to the symmetries of the tile pattern
    for perm in PATTERN_SYMMETRIES[chart.tile_type]:
        named = {perm.get(s, s): v for s, v in vals.items()}
        if all(abs(e.evaluate(named)) <= 1e-9 for e in sol.rows):
            return True
    return False


def enumerate_charts(F: int, tile_type="both", length_assignment: Mapping | None = None,
                     config: SearchConfig | None = None,
                     stats: SearchStats | None = None) -> list:
    """All charts over pdw_F with the given b-edges that survive the angle system,
    the pruning lemmas and the geometric filter. Edges not labelled b may take
    length a or c."""
    config = config or SearchConfig()
    stats = stats if stats is not None else SearchStats()
    if F > config.face_budget:
        raise SearchSpaceExceeded(f"F={F} exceeds the face budget {config.face_budget}")
    L0 = dict(length_assignment) if length_assignment is not None \
        else alternating_length_assignment(F)
    m = pseudo_double_wheel(F)
    faces = wheel_faces(F)
    # step after which every corner of a vertex is placed
    last = {}
    for i, face in enumerate(faces):
        for v in face:
            last[v] = i
    completes = [[v for v in m.vertices if last[v] == i] for i in range(len(faces))]
    area_row = _row(area_equation(F))

    found = {}
    for t in _tile_types(tile_type):
        cands = [_candidates(f, L0, t) for f in faces]
        K, Lab = {}, {}

        def dfs(i, rows):
            stats.nodes += 1
            if i == len(faces):
                stats.leaves += 1
                chart = Chart(m, dict(Lab), dict(K), t)
                if passes_final_filter(chart, stats, config.geometric_filter):
                    found.setdefault(chart.key(), chart)
                return
            face = faces[i]
            for syms, labels in cands[i]:
                edges = face_edges(face)
                if any(Lab.get(e, lab) != lab for e, lab in zip(edges, labels)):
                    continue
                new_e = [e for e in edges if e not in Lab]
                for e, lab in zip(edges, labels):
                    Lab.setdefault(e, lab)
                for c, s in zip(face_corners(face), syms):
                    K[c] = AngleExpr.symbol(s)
                new_rows = rows | {_vertex_row(m, K, v) for v in completes[i]}
                if not config.prune or _partial_ok(m, K, Lab, L0, t, completes[i], new_rows):
                    dfs(i + 1, new_rows)
                else:
                    stats.pruned += 1
                for c in face_corners(face):
                    del K[c]
                for e in new_e:
                    del Lab[e]

        dfs(0, frozenset({area_row}))
    return [found[k] for k in sorted(found)]


def _partial_ok(m, K, Lab, L0, t, done, rows) -> bool:
    if not done:
        return True
    partial = Chart(m, {**L0, **Lab} if t == 2 else dict(Lab), K, t)
    if t == 4 and lemma_forbidden_3valent(partial) is Verdict.VIOLATED:
        return False
    sol = _solve_rows(rows)
    if not sol:
        return False
    if lemma_opposite(t, sol) is Verdict.VIOLATED:
        return False
    if t == 2 and (lemma_trapezoid(sol) is Verdict.VIOLATED
                   or lemma_aux(partial, sol) is Verdict.VIOLATED):
        return False
    return True


def brute_force_charts(F: int, tile_type="both", length_assignment: Mapping | None = None,
                       geometric: bool = True, stats: SearchStats | None = None) -> list:
    """Oracle for :func:`enumerate_charts`: every combination of per-face placements,
    each complete leaf tested with no pruning during the search."""
    stats = stats if stats is not None else SearchStats()
    L0 = dict(length_assignment) if length_assignment is not None \
        else alternating_length_assignment(F)
    m = pseudo_double_wheel(F)
    faces = m.trace_faces()
    found = {}
    for t in _tile_types(tile_type):
        cands = [_candidates(f, L0, t) for f in faces]
        for combo in itertools.product(*cands):
            stats.leaves += 1
            K, Lab, ok = {}, {}, True
            for face, (syms, labels) in zip(faces, combo):
                for e, lab in zip(face_edges(face), labels):
                    if Lab.setdefault(e, lab) != lab:
                        ok = False
                for c, s in zip(face_corners(face), syms):
                    K[c] = AngleExpr.symbol(s)
            if not ok:
                stats.reject("edge mismatch")
                continue
            chart = Chart(m, Lab, K, t)
            if passes_final_filter(chart, stats, geometric):
                found.setdefault(chart.key(), chart)
    return [found[k] for k in sorted(found)]


def unique_up_to_symmetry(charts: Sequence[Chart]) -> list:
    reps = []
    for c in charts:
        if not any(equal_up_to_symmetry(r, c) for r in reps):
            reps.append(c)
    return reps
