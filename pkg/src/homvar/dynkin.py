"""Dynkin diagrams, root systems and Weyl-group utilities (Bourbaki labels).

Roots live in simple-root coordinates, weights in fundamental-weight
coordinates.  Everything is exact: integer Cartan entries and ``Fraction``
inner products with long roots normalized to length 2.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence


class DiagramError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    def __init__(self, what: str, count: int, limit: int):
        super().__init__(f"{what}: guard of {limit} exceeded (reached {count})")
        self.count = count
        self.limit = limit


class Root(tuple):
    """Coefficients (m_j) over the simple roots."""

    def __new__(cls, coeffs: Iterable[int]):
        return super().__new__(cls, tuple(int(c) for c in coeffs))

    @property
    def height(self) -> int:
        return sum(self)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self) if c)

    def __neg__(self) -> "Root":
        return Root(-c for c in self)


class Weight(tuple):
    """Marks in the fundamental-weight basis."""

    def __new__(cls, marks: Iterable[int]):
        return super().__new__(cls, tuple(int(c) for c in marks))

    @property
    def dominant(self) -> bool:
        return all(c >= 0 for c in self)


def vadd(a, b, k=1):
    return tuple(x + k * y for x, y in zip(a, b))


_RANK_RULES = {"A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None),
               "E": (6, 8), "F": (4, 4), "G": (2, 2)}


@dataclass(frozen=True, order=True)
class DiagramSpec:
    series: str
    rank: int

    def __post_init__(self):
        s = self.series.upper()
        object.__setattr__(self, "series", s)
        if s not in _RANK_RULES:
            raise DiagramError(f"unknown series {self.series!r}")
        lo, hi = _RANK_RULES[s]
        if self.rank < lo or (hi is not None and self.rank > hi):
            bound = f"rank >= {lo}" if hi is None else (
                f"rank = {lo}" if lo == hi else f"{lo} <= rank <= {hi}")
            raise DiagramError(f"{s}{self.rank}: series {s} requires {bound}")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DiagramSpec":
        m = re.fullmatch(r"\s*([A-Za-z])(\d+)\s*", text)
        if not m:
            raise DiagramError(f"cannot parse diagram {text!r}")
        return cls(m.group(1), int(m.group(2)))


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    bond: int = 1
    arrow: Optional[int] = None  # node carrying the shorter root

    def other(self, k: int) -> int:
        return self.j if k == self.i else self.i


@dataclass(frozen=True)
class DynkinDiagram:
    """Possibly disconnected diagram on arbitrary integer node labels."""
    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]
    spec: Optional[DiagramSpec] = None

    def __post_init__(self):
        ns = set(self.nodes)
        for e in self.edges:
            if e.i not in ns or e.j not in ns or e.i == e.j:
                raise DiagramError(f"bad edge {e}")
            if (e.bond > 1) != (e.arrow is not None) or (e.arrow is not None and e.arrow not in (e.i, e.j)):
                raise DiagramError(f"bad arrow on {e}")

    @cached_property
    def _adj(self) -> dict[int, dict[int, Edge]]:
        adj = {n: {} for n in self.nodes}
        for e in self.edges:
            adj[e.i][e.j] = e
            adj[e.j][e.i] = e
        return adj

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def index(self, node: int) -> int:
        return self._index[node]

    @cached_property
    def _index(self) -> dict[int, int]:
        return {n: k for k, n in enumerate(self.nodes)}

    def neighbors(self, node: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[node]))

    def edge(self, a: int, b: int) -> Optional[Edge]:
        return self._adj[a].get(b)

    def subdiagram(self, nodes: Iterable[int]) -> "DynkinDiagram":
        keep = set(nodes)
        ns = tuple(n for n in self.nodes if n in keep)
        es = tuple(e for e in self.edges if e.i in keep and e.j in keep)
        return DynkinDiagram(ns, es)

    def components(self, nodes: Optional[Iterable[int]] = None) -> list[tuple[int, ...]]:
        left = set(self.nodes if nodes is None else nodes)
        out = []
        while left:
            start = min(left)
            comp, todo = {start}, [start]
            while todo:
                a = todo.pop()
                for b in self._adj[a]:
                    if b in left and b not in comp:
                        comp.add(b)
                        todo.append(b)
            left -= comp
            out.append(tuple(sorted(comp)))
        return sorted(out)

    @cached_property
    def root_lengths(self) -> dict[int, Fraction]:
        """(alpha_i, alpha_i), longest simple root of each component = 2."""
        lengths: dict[int, Fraction] = {}
        for comp in self.components():
            rel = {comp[0]: Fraction(1)}
            todo = [comp[0]]
            while todo:
                a = todo.pop()
                for b, e in self._adj[a].items():
                    if b in rel:
                        continue
                    if e.bond == 1:
                        rel[b] = rel[a]
                    elif e.arrow == b:
                        rel[b] = rel[a] / e.bond
                    else:
                        rel[b] = rel[a] * e.bond
                    todo.append(b)
            top = max(rel.values())
            for n, v in rel.items():
                lengths[n] = 2 * v / top
        return lengths

    def form(self, a: int, b: int) -> Fraction:
        """(alpha_a, alpha_b)."""
        L = self.root_lengths
        if a == b:
            return L[a]
        if b not in self._adj[a]:
            return Fraction(0)
        return -max(L[a], L[b]) / 2

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """cartan[a][b] = n(alpha_a, alpha_b) = 2(alpha_a, alpha_b)/(alpha_b, alpha_b)."""
        rows = []
        for a in self.nodes:
            row = []
            for b in self.nodes:
                v = 2 * self.form(a, b) / self.root_lengths[b]
                assert v.denominator == 1
                row.append(int(v))
            rows.append(tuple(row))
        return tuple(rows)

    def is_tree(self) -> bool:
        return len(self.edges) == len(self.nodes) - len(self.components())

    def relabel(self, mapping: dict[int, int]) -> "DynkinDiagram":
        ns = tuple(mapping[n] for n in self.nodes)
        es = tuple(Edge(mapping[e.i], mapping[e.j], e.bond,
                        None if e.arrow is None else mapping[e.arrow]) for e in self.edges)
        return DynkinDiagram(ns, es)


def _path(n: int) -> list[Edge]:
    return [Edge(k, k + 1) for k in range(1, n)]


def build_diagram(spec: DiagramSpec | str) -> DynkinDiagram:
    if isinstance(spec, str):
        spec = DiagramSpec.parse(spec)
    s, n = spec.series, spec.rank
    nodes = tuple(range(1, n + 1))
    if s == "A":
        edges = _path(n)
    elif s == "B":
        edges = _path(n - 1) + [Edge(n - 1, n, 2, n)]
    elif s == "C":
        edges = _path(n - 1) + [Edge(n - 1, n, 2, n - 1)]
    elif s == "D":
        edges = _path(n - 1) + [Edge(n - 2, n)]
    elif s == "E":
        edges = [Edge(1, 3), Edge(2, 4)] + [Edge(k, k + 1) for k in range(3, n)]
    elif s == "F":
        edges = [Edge(1, 2), Edge(2, 3, 2, 3), Edge(3, 4)]
    else:
        edges = [Edge(1, 2, 3, 1)]
    return DynkinDiagram(nodes, tuple(edges), spec)


# ---------------------------------------------------------------- root systems

@dataclass(frozen=True)
class RootSystem:
    diagram: DynkinDiagram
    positive_roots: tuple[Root, ...]
    cartan: tuple[tuple[int, ...], ...]
    length_class: tuple[str, ...]

    @property
    def nodes(self) -> tuple[int, ...]:
        return self.diagram.nodes

    @property
    def rank(self) -> int:
        return self.diagram.rank

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.positive_roots) | frozenset(-r for r in self.positive_roots)

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_set

    def simple(self, node: int) -> Root:
        return Root(1 if n == node else 0 for n in self.nodes)

    def idx(self, node: int) -> int:
        return self.diagram.index(node)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """(a, b) for vectors in simple-root coordinates."""
        d = self.diagram
        tot = Fraction(0)
        for x, na in zip(a, d.nodes):
            if x:
                for y, nb in zip(b, d.nodes):
                    if y:
                        tot += x * y * d.form(na, nb)
        return tot

    def length(self, beta: Sequence[int]) -> Fraction:
        return self.inner(beta, beta)

    def is_long(self, beta: Sequence[int]) -> bool:
        return self.length(beta) == max(self.length(r) for r in self.positive_roots
                                        if _same_component(self, r, beta))

    def root_to_weight(self, beta: Sequence[int]) -> Weight:
        """alpha_j = sum_i n(alpha_j, alpha_i) omega_i, extended linearly."""
        r = len(beta)
        return Weight(sum(beta[j] * self.cartan[j][i] for j in range(r)) for i in range(r))

    @cached_property
    def _inv_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(map(tuple, _invert([[Fraction(x) for x in row] for row in self.cartan])))

    def weight_to_root_coords(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Solve lam = sum_j c_j alpha_j, i.e. marks = c . cartan."""
        inv = self._inv_cartan
        r = len(lam)
        return tuple(sum(lam[i] * inv[i][j] for i in range(r)) for j in range(r))

    def weight_inner(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        c = self.weight_to_root_coords(lam)
        L = self.diagram.root_lengths
        return sum((c[i] * mu[i] * L[n] / 2 for i, n in enumerate(self.nodes)), Fraction(0))

    def coroot_pairing(self, lam: Sequence[int], beta: Sequence[int]) -> Fraction:
        """<lam, beta^vee> for a weight lam and a root beta."""
        L = self.diagram.root_lengths
        lb = self.length(beta)
        return sum((Fraction(beta[i] * L[n]) / lb * lam[i] for i, n in enumerate(self.nodes)),
                   Fraction(0))

    @cached_property
    def rho(self) -> Weight:
        return Weight([1] * self.rank)


def _same_component(R: RootSystem, a, b) -> bool:
    comps = R.diagram.components()
    na = R.nodes[next(i for i, x in enumerate(a) if x)]
    nb = R.nodes[next(i for i, x in enumerate(b) if x)]
    return any(na in c and nb in c for c in comps)


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def build_root_system(d: DynkinDiagram | DiagramSpec | str) -> RootSystem:
    if not isinstance(d, DynkinDiagram):
        d = build_diagram(d)
    return _build_root_system(d)


@lru_cache(maxsize=None)
def _build_root_system(d: DynkinDiagram) -> RootSystem:
    r = d.rank
    C = d.cartan
    simple = [Root(int(i == k) for i in range(r)) for k in range(r)]
    known = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                if beta == simple[i]:
                    continue
                # p: how far the alpha_i string extends downwards
                p, down = 0, beta
                while True:
                    down = Root(vadd(down, simple[i], -1))
                    if down in known:
                        p += 1
                    else:
                        break
                n_bi = sum(beta[j] * C[j][i] for j in range(r))
                q = p - n_bi
                if q > 0:
                    up = Root(vadd(beta, simple[i]))
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        nxt.sort(reverse=True)
        ordered.extend(nxt)
        layer = nxt
    ordered.sort(key=lambda b: (b.height, tuple(-x for x in b)))
    ordered = [ordered[k] for k in range(len(ordered))]
    # length classes relative to each simple component
    tmp = RootSystem(d, tuple(ordered), C, ())
    comps = d.components()
    longest = {}
    for comp in comps:
        longest[comp] = max(d.root_lengths[n] for n in comp)
    classes = []
    for b in ordered:
        node = d.nodes[b.support()[0]]
        comp = next(c for c in comps if node in c)
        classes.append("long" if tmp.length(b) == longest[comp] else "short")
    return RootSystem(d, tuple(ordered), C, tuple(classes))


def pairing(R: RootSystem, v: Root | Weight | Sequence[int], i: int) -> int:
    """n(v, alpha_i): for a Weight this is its i-th mark."""
    k = R.idx(i)
    if isinstance(v, Weight):
        return v[k]
    val = sum(v[j] * R.cartan[j][k] for j in range(R.rank))
    return int(val)


def reflect(R: RootSystem, beta: Sequence[int], alpha: Sequence[int]) -> Root:
    n = 2 * R.inner(beta, alpha) / R.inner(alpha, alpha)
    assert n.denominator == 1
    return Root(vadd(beta, alpha, -int(n)))


def simple_reflect_weight(R: RootSystem, lam: Sequence[int], i: int) -> Weight:
    k = R.idx(i)
    m = lam[k]
    return Weight(x - m * c for x, c in zip(lam, R.cartan[k]))


ORBIT_GUARD = 10**6


def weyl_orbit(R: RootSystem, lam: Sequence[int], generators: Iterable[int],
               guard: Optional[int] = None) -> set[Weight]:
    guard = ORBIT_GUARD if guard is None else guard
    gens = sorted(set(generators))
    start = Weight(lam)
    seen = {start}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        for i in gens:
            if w[R.idx(i)] == 0:
                continue
            v = simple_reflect_weight(R, w, i)
            if v not in seen:
                seen.add(v)
                if len(seen) > guard:
                    raise GuardExceeded("Weyl orbit", len(seen), guard)
                todo.append(v)
    return seen


def root_orbit(R: RootSystem, beta: Sequence[int], generators: Iterable[int]) -> set[Root]:
    gens = [R.simple(i) for i in sorted(set(generators))]
    seen = {Root(beta)}
    todo = [Root(beta)]
    while todo:
        b = todo.pop()
        for a in gens:
            c = reflect(R, b, a)
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return seen


def dual_diagram(d: DynkinDiagram) -> DynkinDiagram:
    """Arrows reversed: the diagram of the coroot system."""
    es = tuple(Edge(e.i, e.j, e.bond, None if e.arrow is None else e.other(e.arrow))
               for e in d.edges)
    return DynkinDiagram(d.nodes, es, None)


def adjoint_dim(R: RootSystem) -> int:
    return R.rank + 2 * len(R.positive_roots)


def expected_positive_count(spec: DiagramSpec) -> int:
    """Closed forms, used only as an oracle in tests."""
    n = spec.rank
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1),
            "E": {6: 36, 7: 63, 8: 120}.get(n), "F": 24, "G": 6}[spec.series]


def all_specs(max_rank: int = 8) -> list[DiagramSpec]:
    out = []
    for s in "ABCD":
        lo = _RANK_RULES[s][0]
        out += [DiagramSpec(s, n) for n in range(lo, max_rank + 1)]
    out += [DiagramSpec("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        out.append(DiagramSpec("F", 4))
    out.append(DiagramSpec("G", 2))
    return out


def diagram_ends(d: DynkinDiagram) -> list[int]:
    return [n for n in d.nodes if len(d.neighbors(n)) <= 1]


# ------------------------------------------------------------ identification

def isomorphisms(a: DynkinDiagram, b: DynkinDiagram) -> list[dict[int, int]]:
    """All arrow- and bond-preserving bijections nodes(a) -> nodes(b)."""
    if a.rank != b.rank or len(a.edges) != len(b.edges):
        return []
    order = []
    for comp in a.components():
        seen = [comp[0]]
        for n in seen:
            for m in a.neighbors(n):
                if m not in seen:
                    seen.append(m)
        order += seen
    out: list[dict[int, int]] = []

    def ok(x, y, mp):
        if len(a.neighbors(x)) != len(b.neighbors(y)):
            return False
        for x2, y2 in mp.items():
            ea, eb = a.edge(x, x2), b.edge(y, y2)
            if (ea is None) != (eb is None):
                return False
            if ea is not None:
                if ea.bond != eb.bond:
                    return False
                if ea.arrow is not None and mp.get(ea.arrow, y) != eb.arrow:
                    return False
        return True

    def rec(k, mp, used):
        if k == len(order):
            out.append(dict(mp))
            return
        x = order[k]
        for y in b.nodes:
            if y not in used and ok(x, y, mp):
                mp[x] = y
                used.add(y)
                rec(k + 1, mp, used)
                used.discard(y)
                del mp[x]

    rec(0, {}, set())
    return out


def identify(d: DynkinDiagram) -> tuple[DiagramSpec, dict[int, int]]:
    """Bourbaki type of a connected diagram and an isomorphism node -> label.

    Among candidate isomorphisms prefer order-preserving ones, then the
    series order A..G, then the lexicographically smallest image.
    """
    if len(d.components()) != 1:
        raise DiagramError("identify expects a connected diagram")
    best = None
    for s in "ABCDEFG":
        try:
            spec = DiagramSpec(s, d.rank)
        except DiagramError:
            continue
        std = build_diagram(spec)
        for iso in isomorphisms(d, std):
            img = tuple(iso[n] for n in sorted(d.nodes))
            monotone = all(x < y for x, y in zip(img, img[1:]))
            key = (not monotone, "ABCDEFG".index(s), img)
            if best is None or key < best[0]:
                best = (key, spec, iso)
    if best is None:
        raise DiagramError("not a Dynkin diagram of finite type")
    return best[1], best[2]


def describe(d: DynkinDiagram) -> str:
    if not d.nodes:
        return "point"
    return " x ".join(str(identify(d.subdiagram(c))[0]) for c in d.components())
