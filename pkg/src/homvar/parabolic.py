"""Parabolic data for G/P_S: tangent roots, grading, classification, Y1."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .dynkin import (DiagramError, DiagramSpec, DynkinDiagram, Root, RootSystem,
                     build_diagram, build_root_system, dual_diagram, identify,
                     pairing, weyl_orbit)


class InconsistencyError(AssertionError):
    """Two independent criteria disagreed; always a bug."""


@dataclass(frozen=True)
class ParabolicSpec:
    spec: DiagramSpec
    S: frozenset[int]

    def __post_init__(self):
        S = frozenset(int(s) for s in self.S)
        object.__setattr__(self, "S", S)
        if not S:
            raise DiagramError("S must be nonempty")
        bad = [s for s in S if not 1 <= s <= self.spec.rank]
        if bad:
            raise DiagramError(f"nodes {bad} not in {self.spec}")

    @classmethod
    def parse(cls, text: str) -> "ParabolicSpec":
        m = re.fullmatch(r"\s*([A-Za-z]\d+)\s*/\s*P\s*(?:(\d+)|\{([\d,\s]+)\}|(\d+(?:,\d+)+))\s*",
                         text)
        if not m:
            raise DiagramError(f"cannot parse {text!r}; expected e.g. E6/P1 or D6/P{{3,5}}")
        spec = DiagramSpec.parse(m.group(1))
        listed = m.group(3) or m.group(4)
        nodes = [m.group(2)] if m.group(2) else [t for t in listed.split(",") if t.strip()]
        return cls(spec, frozenset(int(t) for t in nodes))

    def __str__(self) -> str:
        s = sorted(self.S)
        tail = str(s[0]) if len(s) == 1 else "{" + ",".join(map(str, s)) + "}"
        return f"{self.spec}/P{tail}"

    @property
    def diagram(self) -> DynkinDiagram:
        return build_diagram(self.spec)

    @property
    def roots(self) -> RootSystem:
        return build_root_system(self.spec)


@dataclass(frozen=True)
class MarkedDiagram:
    diagram: DynkinDiagram
    marks: dict = field(default_factory=dict)

    @property
    def is_point(self) -> bool:
        return not any(self.marks.values())

    def marked(self) -> tuple[int, ...]:
        return tuple(sorted(n for n, m in self.marks.items() if m))

    def dimension(self) -> int:
        """dim of the homogeneous space: one factor per marked component."""
        tot = 0
        for comp in self.diagram.components():
            S = [n for n in comp if self.marks.get(n)]
            if S:
                R = build_root_system(self.diagram.subdiagram(comp))
                tot += len(_delta_X(R, S))
        return tot

    def describe(self) -> str:
        if self.is_point:
            return "point"
        parts = []
        for comp in self.diagram.components():
            S = [n for n in comp if self.marks.get(n)]
            if not S:
                continue
            spec, iso = identify(self.diagram.subdiagram(comp))
            loc = sorted(iso[n] for n in S)
            tail = str(loc[0]) if len(loc) == 1 else "{" + ",".join(map(str, loc)) + "}"
            parts.append(f"{spec}/P{tail}")
        return " x ".join(parts)

    def to_json(self) -> dict:
        return {"nodes": list(self.diagram.nodes),
                "edges": [[e.i, e.j, e.bond, e.arrow] for e in self.diagram.edges],
                "marks": {str(k): v for k, v in sorted(self.marks.items()) if v},
                "variety": self.describe(), "dim": self.dimension()}


def point() -> MarkedDiagram:
    return MarkedDiagram(DynkinDiagram((), ()), {})


def _delta_X(R: RootSystem, S: Iterable[int]) -> list[Root]:
    idx = [R.idx(s) for s in S]
    return [b for b in R.positive_roots if any(b[k] > 0 for k in idx)]


def delta_X(R: RootSystem, S: Iterable[int]) -> list[Root]:
    return _delta_X(R, S)


def dimension(ps: ParabolicSpec) -> int:
    return len(_delta_X(ps.roots, ps.S))


def flag_dimension(spec: DiagramSpec, S: Iterable[int]) -> int:
    S = list(S)
    return len(_delta_X(build_root_system(spec), S)) if S else 0


# ------------------------------------------------------------------ grading

@dataclass(frozen=True)
class GradedPiece:
    degree: tuple[int, ...]
    roots: tuple[Root, ...]
    lowest_root: Root
    h_highest_weight: dict  # node of D\S -> mark

    @property
    def dim(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class Grading:
    ps: ParabolicSpec
    pieces: tuple[GradedPiece, ...]
    levi_components: tuple[tuple[int, ...], ...]

    def piece(self, degree) -> GradedPiece:
        if isinstance(degree, int):
            degree = (degree,)
        return next(p for p in self.pieces if p.degree == tuple(degree))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(p.dim for p in self.pieces)


def levi_nodes(ps: ParabolicSpec) -> tuple[int, ...]:
    return tuple(n for n in ps.diagram.nodes if n not in ps.S)


def levi_weight_of_root(R: RootSystem, beta, S) -> dict:
    """Marks of beta restricted to the Levi, i.e. n(beta, alpha_j) for j not in S."""
    return {n: pairing(R, beta, n) for n in R.nodes if n not in S}


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def grading(ps: ParabolicSpec) -> Grading:
    R = ps.roots
    Ss = sorted(ps.S)
    idx = [R.idx(s) for s in Ss]
    groups: dict[tuple, list[Root]] = {}
    for b in _delta_X(R, Ss):
        groups.setdefault(tuple(b[k] for k in idx), []).append(b)
    pieces = []
    for deg in sorted(groups, key=lambda a: (sum(a), a)):
        roots = groups[deg]
        minimal = [b for b in roots if not any(c != b and _leq(c, b) for c in roots)]
        if len(minimal) != 1:
            raise InconsistencyError(f"piece {deg} of {ps} has {len(minimal)} minimal roots")
        low = minimal[0]
        hw = {n: -m for n, m in levi_weight_of_root(R, low, ps.S).items()}
        if any(v < 0 for v in hw.values()):
            raise InconsistencyError(f"piece {deg} of {ps}: non-dominant weight {hw}")
        pieces.append(GradedPiece(deg, tuple(roots), low, hw))
    comps = ps.diagram.components(levi_nodes(ps))
    g = Grading(ps, tuple(pieces), tuple(comps))
    _check_marking_recipe(ps, g)
    return g


def marking_recipe(ps: ParabolicSpec, i: int) -> dict:
    """Marks of the degree-e_i piece read off the diagram: neighbours of i
    outside S, with multiplicity given by the bond when the arrow points
    away from i."""
    d = ps.diagram
    marks = {n: 0 for n in levi_nodes(ps)}
    for nb in d.neighbors(i):
        if nb in ps.S:
            continue
        e = d.edge(i, nb)
        marks[nb] = e.bond if e.arrow == nb else 1
    return marks


def _check_marking_recipe(ps: ParabolicSpec, g: Grading) -> None:
    Ss = sorted(ps.S)
    for i in Ss:
        deg = tuple(int(s == i) for s in Ss)
        if g.piece(deg).h_highest_weight != marking_recipe(ps, i):
            raise InconsistencyError(f"marking recipe disagrees for {ps}, node {i}")


def levi_factors(ps: ParabolicSpec, marks: dict) -> list[tuple[DiagramSpec, dict, dict]]:
    """Per Levi component: (Bourbaki type, global->local map, local marks)."""
    d = ps.diagram
    out = []
    for comp in d.components(levi_nodes(ps)):
        spec, iso = identify(d.subdiagram(comp))
        out.append((spec, iso, {iso[n]: marks.get(n, 0) for n in comp}))
    return out


# ------------------------------------------------------------- classification

def is_cominuscule(R: RootSystem, i: int) -> bool:
    return R.highest_root[R.idx(i)] == 1


def _dual_highest_coefficient(R: RootSystem, i: int) -> int:
    Rd = build_root_system(dual_diagram(R.diagram))
    return Rd.highest_root[Rd.idx(i)]


def is_minuscule_weight(R: RootSystem, i: int, cross_check: Optional[bool] = None) -> bool:
    dual = _dual_highest_coefficient(R, i) == 1
    if cross_check is None:
        cross_check = R.rank <= 6
    if cross_check:
        from .reps import weyl_dim_R
        lam = [0] * R.rank
        lam[R.idx(i)] = 1
        orbit = weyl_orbit(R, lam, R.nodes)
        via_orbit = len(orbit) == weyl_dim_R(R, lam)
        if via_orbit != dual:
            raise InconsistencyError(f"minuscule criteria disagree at node {i}")
    return dual


def is_exposed_short(R: RootSystem, S: Iterable[int], j: int) -> bool:
    S = set(S)
    if j not in S:
        raise ValueError(f"{j} not in S")
    d = R.diagram
    rest = [n for n in d.nodes if n not in S - {j}]
    comp = next(c for c in d.components(rest) if j in c)
    L = d.root_lengths
    by_diagram = any(L[n] > L[j] for n in comp)
    # root criterion
    out_idx = [R.idx(n) for n in S - {j}]
    aj = R.simple(j)
    by_roots = any(abs(pairing(R, b, j)) > 1 for b in R.positive_roots
                   if b != aj and all(b[k] == 0 for k in out_idx))
    if by_diagram != by_roots:
        raise InconsistencyError(f"exposed-short criteria disagree at {j}")
    return by_diagram


@dataclass(frozen=True)
class Y1Factor:
    diagram: DynkinDiagram
    marked: int
    degree: int

    @property
    def minuscule(self) -> bool:
        if self.degree != 1:
            return False
        R = build_root_system(self.diagram)
        return is_cominuscule(R, self.marked)

    def describe(self) -> str:
        spec, iso = identify(self.diagram)
        base = f"{spec}/P{iso[self.marked]}"
        return base if self.degree == 1 else f"v{self.degree}({base})"

    def dimension(self) -> int:
        return len(_delta_X(build_root_system(self.diagram), [self.marked]))


@dataclass(frozen=True)
class ClosedOrbitModel:
    factors: tuple[Y1Factor, ...]

    @property
    def minuscule(self) -> bool:
        return all(f.minuscule for f in self.factors)

    def dimension(self) -> int:
        return sum(f.dimension() for f in self.factors)

    def describe(self) -> str:
        return " x ".join(f.describe() for f in self.factors) or "empty"


def closed_orbit_Y1(R: RootSystem, S: Iterable[int], i: int) -> ClosedOrbitModel:
    S = set(S)
    if i not in S:
        raise ValueError(f"{i} not in S")
    d = R.diagram
    rest = [n for n in d.nodes if n not in S]
    factors = []
    for comp in d.components(rest):
        nbs = [n for n in comp if d.edge(i, n) is not None]
        if not nbs:
            continue
        (nb,) = nbs
        e = d.edge(i, nb)
        deg = e.bond if e.arrow == nb else 1
        factors.append(Y1Factor(d.subdiagram(comp), nb, deg))
    return ClosedOrbitModel(tuple(factors))
