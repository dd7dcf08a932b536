"""Weyl dimensions, Freudenthal multiplicities, Levi branching, plethysms and
normal-space tables for homogeneous varieties."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Optional, Sequence

from .dynkin import (DiagramSpec, GuardExceeded, RootSystem, Weight,
                     build_diagram, build_root_system, simple_reflect_weight, weyl_orbit)
from .parabolic import ParabolicSpec, grading, levi_nodes, marking_recipe

DIM_GUARD = 10**5


class UncoveredFamily(LookupError):
    pass


class NonUniqueConstituent(AssertionError):
    pass


# ------------------------------------------------------------------ Weyl / Freudenthal

@lru_cache(maxsize=None)
def _coroots(R: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    L = R.diagram.root_lengths
    out = []
    for b in R.positive_roots:
        lb = R.length(b)
        out.append(tuple(Fraction(b[i] * L[n]) / lb for i, n in enumerate(R.nodes)))
    return tuple(out)


def weyl_dim_R(R: RootSystem, lam: Sequence[int]) -> int:
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {tuple(lam)} is not dominant")
    num = den = Fraction(1)
    for cv in _coroots(R):
        r = sum(cv)
        num *= r + sum(c * x for c, x in zip(cv, lam))
        den *= r
    d = num / den
    assert d.denominator == 1
    return int(d)


def weyl_dim(spec: DiagramSpec | str, lam: Sequence[int]) -> int:
    return weyl_dim_R(build_root_system(spec), lam)


@lru_cache(maxsize=None)
def _gram(R: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    r = R.rank
    unit = [[int(i == j) for j in range(r)] for i in range(r)]
    return tuple(tuple(R.weight_inner(unit[i], unit[j]) for j in range(r)) for i in range(r))


def _ip(G, a, b) -> Fraction:
    tot = Fraction(0)
    for i, x in enumerate(a):
        if x:
            row = G[i]
            for j, y in enumerate(b):
                if y:
                    tot += x * y * row[j]
    return tot


def dominant_rep(R: RootSystem, mu: Sequence[int]) -> Weight:
    mu = Weight(mu)
    while True:
        k = next((k for k, x in enumerate(mu) if x < 0), None)
        if k is None:
            return mu
        mu = simple_reflect_weight(R, mu, R.nodes[k])


@lru_cache(maxsize=None)
def _dominant_mults(R: RootSystem, lam: Weight) -> dict:
    pos = [R.root_to_weight(b) for b in R.positive_roots]
    dom = {lam}
    todo = [lam]
    while todo:
        mu = todo.pop()
        for a in pos:
            nu = Weight(x - y for x, y in zip(mu, a))
            if nu.dominant and nu not in dom:
                dom.add(nu)
                todo.append(nu)
    G = _gram(R)
    lr = tuple(x + 1 for x in lam)
    top = _ip(G, lr, lr)
    level = lambda mu: sum(R.weight_to_root_coords(tuple(x - y for x, y in zip(lam, mu))))
    mults = {}
    for mu in sorted(dom, key=level):
        if mu == lam:
            mults[mu] = 1
            continue
        s = Fraction(0)
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                d = dominant_rep(R, nu)
                if d not in dom:
                    break
                s += mults[d] * _ip(G, nu, a)
                k += 1
        mr = tuple(x + 1 for x in mu)
        m = 2 * s / (top - _ip(G, mr, mr))
        assert m.denominator == 1 and m > 0
        mults[mu] = int(m)
    return mults


def weights_with_mults_R(R: RootSystem, lam: Sequence[int], guard: int = DIM_GUARD) -> dict:
    lam = Weight(lam)
    if R.rank == 0:
        return {lam: 1}
    dim = weyl_dim_R(R, lam)
    if dim > guard:
        raise GuardExceeded("module dimension", dim, guard)
    out = {}
    for mu, m in _dominant_mults(R, lam).items():
        for w in weyl_orbit(R, mu, R.nodes, guard=guard):
            out[w] = m
    assert sum(out.values()) == dim
    return out


def weights_with_mults(spec: DiagramSpec | str, lam: Sequence[int], guard: int = DIM_GUARD) -> dict:
    return weights_with_mults_R(build_root_system(spec), lam, guard)


def fundamental(R: RootSystem, i: int, c: int = 1) -> Weight:
    return Weight(c if n == i else 0 for n in R.nodes)


def parse_weight(text: str, rank: int) -> Weight:
    """'w7', '2w1+w3', '0,0,1' or '[0,0,1]'."""
    t = text.strip().strip("[]()").replace(" ", "")
    if "w" in t.lower():
        marks = [0] * rank
        for term in t.lower().split("+"):
            c, _, i = term.partition("w")
            if not i.isdigit():
                raise ValueError(f"bad weight term {term!r}")
            i = int(i)
            if not 1 <= i <= rank:
                raise ValueError(f"node {i} out of range")
            marks[i - 1] += int(c) if c else 1
        return Weight(marks)
    marks = [int(x) for x in t.split(",")]
    if len(marks) != rank:
        raise ValueError(f"expected {rank} marks")
    return Weight(marks)


# ------------------------------------------------------------------ Levi branching

def levi_root_system(spec: DiagramSpec, S: Iterable[int]) -> RootSystem:
    d = build_diagram(spec)
    S = set(S)
    return build_root_system(d.subdiagram(n for n in d.nodes if n not in S))


def peel(RL: RootSystem, weights: Counter, guard: int = DIM_GUARD) -> dict:
    """Decompose a character (Counter of Levi weights) into irreducibles."""
    weights = Counter({w: m for w, m in weights.items() if m})
    out: dict = {}
    level = lambda w: sum(RL.weight_to_root_coords(w)) if RL.rank else 0
    while weights:
        top = max(weights, key=lambda w: (level(w), w))
        m = weights[top]
        if m < 0 or not Weight(top).dominant:
            raise AssertionError(f"peeling failed at {top} (mult {m})")
        out[Weight(top)] = out.get(Weight(top), 0) + m
        for w, k in weights_with_mults_R(RL, top, guard).items():
            weights[w] -= m * k
            if weights[w] == 0:
                del weights[w]
    return out


@dataclass(frozen=True)
class IrrepSum:
    """Levi constituents with S-grading labels: (grade, weight) -> multiplicity."""
    levi: RootSystem
    terms: tuple[tuple[tuple[int, ...], Weight, int], ...]

    def dims(self) -> list[tuple[tuple[int, ...], Weight, int, int]]:
        return [(g, w, m, weyl_dim_R(self.levi, w)) for g, w, m in self.terms]

    def total_dim(self) -> int:
        return sum(m * d for _, _, m, d in self.dims())

    def by_grade(self) -> dict:
        out: dict = {}
        for g, w, m, d in self.dims():
            out[g] = out.get(g, 0) + m * d
        return dict(sorted(out.items()))

    def constituents(self) -> set[Weight]:
        return {w for _, w, _ in self.terms}


def restrict_to_levi(spec: DiagramSpec | str, lam: Sequence[int], S: Iterable[int],
                     guard: int = DIM_GUARD) -> IrrepSum:
    if isinstance(spec, str):
        spec = DiagramSpec.parse(spec)
    R = build_root_system(spec)
    S = sorted(set(S))
    RL = levi_root_system(spec, S)
    keep = [R.idx(n) for n in RL.nodes]
    sidx = [R.idx(s) for s in S]
    graded: dict = {}
    for mu, m in weights_with_mults_R(R, lam, guard).items():
        diff = R.weight_to_root_coords(tuple(x - y for x, y in zip(lam, mu)))
        g = tuple(int(diff[k]) for k in sidx)
        w = tuple(mu[k] for k in keep)
        graded.setdefault(g, Counter())[w] += m
    terms = []
    for g in sorted(graded, key=lambda a: (sum(a), a)):
        for w, m in sorted(peel(RL, graded[g], guard).items()):
            terms.append((g, w, m))
    return IrrepSum(RL, tuple(terms))


# ------------------------------------------------------------------ partitions

def partitions(n: int, max_len: Optional[int] = None, max_part: Optional[int] = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, None if max_len is None else max_len - 1, first):
            yield (first,) + rest


def schur_dim(part: Sequence[int], r: int) -> int:
    """dim S_part(C^r) by the hook-content formula."""
    part = [p for p in part if p]
    if len(part) > r:
        return 0
    conj = [sum(1 for p in part if p > j) for j in range(part[0])] if part else []
    num = den = 1
    for i, p in enumerate(part):
        for j in range(p):
            num *= r + j - i
            den *= (p - j - 1) + (conj[j] - i - 1) + 1
    return num // den


def cauchy_sym(kind: str, j: int, ranks: Sequence[int]) -> list:
    """Constituents of S^j of E*(x)Q, S^2E, or L^2E as partitions."""
    if kind == "tensor":
        r = min(ranks)
        return [(p, p) for p in partitions(j, r)]
    r = ranks[0]
    out = []
    for p in partitions(j):
        q = tuple(2 * x for x in p) if kind == "sym2" else (
            tuple(x for x in p for _ in range(2)) if kind == "wedge2" else None)
        if q is None:
            raise ValueError(f"unknown kind {kind!r}")
        if len(q) <= r:
            out.append(q)
    return out


def cauchy_dim(kind: str, j: int, ranks: Sequence[int]) -> int:
    parts = cauchy_sym(kind, j, ranks)
    if kind == "tensor":
        return sum(schur_dim(p, ranks[0]) * schur_dim(p, ranks[1]) for p, _ in parts)
    return sum(schur_dim(p, ranks[0]) for p in parts)


# ------------------------------------------------------------------ module expressions

class Expr:
    def dim(self, ranks: dict) -> int:
        raise NotImplementedError

    def __mul__(self, other):
        return Tensor((self, other))

    def __add__(self, other):
        return DSum((self, other))


@dataclass(frozen=True)
class Schur(Expr):
    bundle: str
    part: tuple[int, ...]
    dual: bool = False

    def dim(self, ranks):
        return schur_dim(self.part, ranks[self.bundle])

    def __str__(self):
        b = self.bundle + ("*" if self.dual else "")
        p = tuple(x for x in self.part if x)
        if not p:
            return "C"
        if all(x == 1 for x in p):
            return f"Λ^{len(p)}{b}" if len(p) > 1 else b
        if len(p) == 1:
            return f"S^{p[0]}{b}"
        return f"S_{''.join(map(str, p))}{b}"


def Wedge(bundle: str, a: int, dual: bool = False) -> Schur:
    return Schur(bundle, (1,) * a, dual)


def Sym(bundle: str, a: int, dual: bool = False) -> Schur:
    return Schur(bundle, (a,) if a else (), dual)


@dataclass(frozen=True)
class ReducedWedge(Expr):
    """Λ^<a>U = Λ^aU / (Ω ∧ Λ^{a-2}U) for a symplectic U."""
    bundle: str
    a: int

    def dim(self, ranks):
        m = ranks[self.bundle]
        if self.a > m // 2:
            return 0
        return comb(m, self.a) - (comb(m, self.a - 2) if self.a >= 2 else 0)

    def __str__(self):
        return f"Λ^<{self.a}>{self.bundle}" if self.a else "C"


@dataclass(frozen=True)
class Vector(Expr):
    """Defining module of an orthogonal group on a bundle."""
    bundle: str

    def dim(self, ranks):
        return ranks[self.bundle]

    def __str__(self):
        return self.bundle


@dataclass(frozen=True)
class Plethysm(Expr):
    """S^2 or Λ^2 of a module."""
    kind: str
    inner: Expr

    def dim(self, ranks):
        d = self.inner.dim(ranks)
        return d * (d + 1) // 2 if self.kind == "S2" else d * (d - 1) // 2

    def __str__(self):
        return f"{'S^2' if self.kind == 'S2' else 'Λ^2'}({self.inner})"


@dataclass(frozen=True)
class Named(Expr):
    name: str
    size: int

    def dim(self, ranks):
        return self.size

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Tensor(Expr):
    factors: tuple

    def dim(self, ranks):
        out = 1
        for f in self.factors:
            out *= f.dim(ranks)
        return out

    def __str__(self):
        return "⊗".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class DSum(Expr):
    terms: tuple

    def dim(self, ranks):
        return sum(t.dim(ranks) for t in self.terms)

    def __str__(self):
        return " ⊕ ".join(f"({t})" if isinstance(t, DSum) else str(t) for t in self.terms) or "0"


TRIVIAL = Named("C", 1)
ZERO = DSum(())


@dataclass(frozen=True)
class NormalTable:
    """Tangent and normal spaces N_1 = T, N_2, ... as H-modules."""
    family: str
    ranks: dict
    spaces: tuple  # index 0 is N_1 = T
    frames: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        dims = [e.dim(self.ranks) for e in self.spaces]
        return max(j + 1 for j, d in enumerate(dims) if d)

    def N(self, j: int) -> Expr:
        return self.spaces[j - 1] if 1 <= j <= len(self.spaces) else ZERO

    def dims(self) -> list[int]:
        return [e.dim(self.ranks) for e in self.spaces]


def _family(ps: ParabolicSpec) -> tuple[str, tuple]:
    s, n = ps.spec.series, ps.spec.rank
    if len(ps.S) != 1:
        raise UncoveredFamily(f"{ps}: only maximal parabolics are tabulated")
    (k,) = ps.S
    if s == "A":
        return "G", (k, n + 1)
    if s == "C" and k == n:
        return "Glag", (n,)
    if s == "D" and k in (n - 1, n) and n >= 4:
        return "Spinor", (n,)
    if (s == "D" and k == 1) or (s == "B" and k == 1):
        return "Quadric", (2 * n - 1 if s == "B" else 2 * n - 2,)
    if s == "E" and (n, k) in ((6, 1), (6, 6)):
        return "OP2", ()
    if s == "E" and (n, k) == (7, 7):
        return "E7", ()
    if s == "B" and k == n:
        return "OddSpinor", (n,)
    if s == "B" and k < n:
        return "Go", (k, 2 * n + 1)
    if s == "D" and k <= n - 2:
        return "Go", (k, 2 * n)
    if s == "C" and k < n:
        return "Gw", (k, n)
    raise UncoveredFamily(f"{ps} is not in the tabulated families")


def _ortho_pm(p: int, sign: str) -> Expr:
    inner = Wedge("E", p, True)
    even = p % 2 == 0
    kind = ("S2" if even else "L2") if sign == "+" else ("L2" if even else "S2")
    return Plethysm(kind, inner)


def normal_spaces(ps: ParabolicSpec) -> NormalTable:
    fam, par = _family(ps)
    n = ps.spec.rank
    if fam == "G":
        k, N = par
        l = min(k, N - k)
        sp = tuple(Tensor((Wedge("E", j, True), Wedge("Q", j))) for j in range(1, l + 1))
        frames = {"E": (tuple(range(1, k)), k), "Q": (tuple(range(k + 1, N)), N - k)}
        return NormalTable(f"G({k},{N})", {"E": k, "Q": N - k}, sp, frames)
    if fam == "Glag":
        sp = tuple(Schur("E", (2,) * j, True) for j in range(1, n + 1))
        return NormalTable(f"G_Lag({n},{2 * n})", {"E": n}, sp,
                           {"E": (tuple(range(1, n)), n)})
    if fam == "Spinor":
        (k,) = ps.S
        nodes = tuple(x for x in range(1, n + 1) if x != k)
        sp = tuple(Wedge("E", 2 * j, True) for j in range(1, n // 2 + 1))
        return NormalTable(f"S_{n}", {"E": n}, sp, {"E": (nodes, n)})
    if fam == "Quadric":
        (m,) = par
        return NormalTable(f"Q^{m}", {"U": m}, (Vector("U"), TRIVIAL), {})
    if fam == "OP2":
        return NormalTable("OP^2", {}, (Named("S16", 16), Named("V10", 10)), {})
    if fam == "E7":
        return NormalTable("G_w(O^3,O^6)", {}, (Named("J27", 27), Named("J27*", 27), TRIVIAL), {})
    if fam == "OddSpinor":
        sp = tuple(DSum((Wedge("E", 2 * p - 1, True), Wedge("E", 2 * p, True)))
                   for p in range(1, (n + 1) // 2 + 1))
        return NormalTable(f"B{n}/P{n}", {"E": n}, sp, {})
    if fam == "Go":
        k, N = par
        ranks = {"E": k, "U": N - 2 * k}
        sp = []
        for p in range(1, k + 2):
            terms = [Tensor((Wedge("E", p - a, True), Wedge("E", p, True), Wedge("U", a)))
                     for a in range(1, p + 1)]
            terms += [_ortho_pm(p, "+"), _ortho_pm(p - 1, "-")]
            sp.append(DSum(tuple(terms)))
        while sp and sp[-1].dim(ranks) == 0:
            sp.pop()
        return NormalTable(f"G_o({k},{N})", ranks, tuple(sp), {})
    if fam == "Gw":
        k, m = par
        ranks = {"E": k, "U": 2 * m - 2 * k}
        sp = []
        for p in range(1, k + 1):
            sp.append(DSum(tuple(Tensor((Wedge("U", d), Schur("E", (2,) * (p - d) + (1,) * d, True)))
                                 for d in range(p, -1, -1))))
        return NormalTable(f"G_w({k},{2 * m})", ranks, tuple(sp), {})
    raise UncoveredFamily(fam)


def embedding_weight(ps: ParabolicSpec) -> Weight:
    R = ps.roots
    return Weight(1 if n in ps.S else 0 for n in R.nodes)


def expected_highest_weight(ps: ParabolicSpec, table: NormalTable, j: int) -> Optional[dict]:
    """Global Levi marks of N_j read from the table, or None if only a
    dimension is tabulated."""
    expr = table.N(j)
    if table.family.startswith("Q^"):
        if j == 1:
            (i,) = ps.S
            return marking_recipe(ps, i)
        return {n: 0 for n in levi_nodes(ps)} if j == 2 else None
    if not table.frames:
        return None
    marks = {n: 0 for n in levi_nodes(ps)}
    factors = expr.factors if isinstance(expr, Tensor) else (expr,)
    for f in factors:
        if not isinstance(f, Schur):
            return None
        nodes, r = table.frames[f.bundle]
        part = list(f.part) + [0] * (r + 1)
        if len([x for x in f.part if x]) > r:
            return None
        for i in range(1, r):
            if f.dual:
                marks[nodes[i - 1]] += part[r - i - 1] - part[r - i]
            else:
                marks[nodes[i - 1]] += part[i - 1] - part[i]
    return marks


@dataclass
class NormalSpaceReport:
    ps: ParabolicSpec
    j: int
    common: list  # list of (levi weight dict, dim)
    expected: Optional[dict]
    expected_dim: int
    ok: bool

    def summary(self) -> str:
        got = ", ".join(f"{w} (dim {d})" for w, d in self.common) or "none"
        return f"{self.ps} N_{self.j}: common constituent {got}; expected dim {self.expected_dim}"


def tangent_character(ps: ParabolicSpec) -> Counter:
    g = grading(ps)
    R = ps.roots
    RLn = levi_nodes(ps)
    out = Counter()
    for piece in g.pieces:
        for b in piece.roots:
            out[tuple(-_pair(R, b, n) for n in RLn)] += 1
    return out


def _pair(R: RootSystem, b, n) -> int:
    k = R.idx(n)
    return sum(b[j] * R.cartan[j][k] for j in range(R.rank))


def sym_power_character(weights: Counter, j: int) -> Counter:
    items = sorted(weights.elements())
    out = Counter()
    for combo in combinations_with_replacement(range(len(items)), j):
        w = [0] * (len(items[0]) if items else 0)
        for c in combo:
            for t, x in enumerate(items[c]):
                w[t] += x
        out[tuple(w)] += 1
    return out


def verify_normal_space(ps: ParabolicSpec, j: int, guard: int = DIM_GUARD) -> NormalSpaceReport:
    table = normal_spaces(ps)
    RL = levi_root_system(ps.spec, ps.S)
    T = tangent_character(ps)
    size = comb(sum(T.values()) + j - 1, j)
    if size > guard:
        raise GuardExceeded("symmetric power", size, guard)
    sym = set(peel(RL, sym_power_character(T, j), guard))
    restricted = restrict_to_levi(ps.spec, embedding_weight(ps), ps.S, guard)
    if len(grading(ps).pieces) == 1:
        # T sits in degree one, so N_j can only live in grade j
        res = {w for g, w, _ in restricted.terms if sum(g) == j}
    else:
        res = restricted.constituents()
    common = sorted(sym & res)
    nodes = RL.nodes
    common_d = [({n: w[k] for k, n in enumerate(nodes)}, weyl_dim_R(RL, w)) for w in common]
    exp_dim = table.N(j).dim(table.ranks)
    if len(common) > 1:
        raise NonUniqueConstituent(f"{ps}, j={j}: {common_d}")
    expected = expected_highest_weight(ps, table, j) if exp_dim else None
    if exp_dim == 0:
        ok = not common
    elif expected is not None:
        ok = len(common_d) == 1 and common_d[0][0] == expected
    else:
        ok = len(common_d) == 1 and common_d[0][1] == exp_dim
    return NormalSpaceReport(ps, j, common_d, expected, exp_dim, ok)


# ------------------------------------------------------------------ exterior powers

def exterior_power_character(R: RootSystem, lam: Sequence[int], k: int,
                             guard: int = DIM_GUARD) -> Counter:
    """Character of Λ^k V_lam by a subset-sum recursion over weights."""
    items = []
    for w, m in sorted(weights_with_mults_R(R, lam, guard).items()):
        items += [w] * m
    if comb(len(items), k) > 50 * guard:
        raise GuardExceeded("exterior power", comb(len(items), k), 50 * guard)
    zero = (0,) * R.rank
    layers = [Counter({zero: 1})] + [Counter() for _ in range(k)]
    for w in items:
        for c in range(k, 0, -1):
            src = layers[c - 1]
            if not src:
                continue
            dst = layers[c]
            for mu, m in src.items():
                dst[tuple(x + y for x, y in zip(mu, w))] += m
    return layers[k]


def is_above(R: RootSystem, a, b) -> bool:
    """a - b is a nonzero non-negative combination of simple roots."""
    if tuple(a) == tuple(b):
        return False
    c = R.weight_to_root_coords(tuple(x - y for x, y in zip(a, b)))
    return all(x >= 0 for x in c)


def maximal_weights(R: RootSystem, char: Counter) -> list:
    ws = list(char)
    dom = [w for w in ws if all(x >= 0 for x in w)]
    return [w for w in dom if not any(is_above(R, v, w) for v in dom)]
