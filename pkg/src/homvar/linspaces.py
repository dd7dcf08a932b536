"""Lines and linear spaces on G/P_S, Tits shadows, ambient modules, and
recovering a Dynkin diagram from iterated closed orbits."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional

from .dynkin import (DiagramSpec, DynkinDiagram, Edge, Root, RootSystem, Weight,
                     build_diagram, build_root_system, diagram_ends, identify,
                     isomorphisms, reflect, simple_reflect_weight)
from .parabolic import (InconsistencyError, MarkedDiagram, ParabolicSpec, Y1Factor,
                        closed_orbit_Y1, delta_X, dimension, is_exposed_short, point)


class ExposedShortError(ValueError):
    """The node is an exposed short root; use exposed_planes_catalog."""


class NoLongRootError(InconsistencyError):
    pass


class UncoveredCatalog(LookupError):
    pass


class RecipeStuck(RuntimeError):
    pass


class KOutOfRange(ValueError):
    pass


def _as_spec(spec) -> DiagramSpec:
    return DiagramSpec.parse(spec) if isinstance(spec, str) else spec


# ------------------------------------------------------------------ shadows

def tits_shadow(spec, S: Iterable[int], S_prime: Iterable[int]) -> MarkedDiagram:
    """Shadow in G/P_S of a point of G/P_S'.

    Delete every node of S', mark S \\ S', keep the components carrying a mark.
    When S is contained in S' the shadow is a single point; an empty S'
    (a point of G/G) casts all of G/P_S.
    """
    d = build_diagram(_as_spec(spec))
    S, Sp = set(S), set(S_prime)
    marks = S - Sp
    if not marks:
        return point()
    keep = [n for n in d.nodes if n not in Sp]
    comps = [c for c in d.components(keep) if marks & set(c)]
    nodes = [n for c in comps for n in c]
    return MarkedDiagram(d.subdiagram(nodes), {n: 1 for n in sorted(marks)})


# -------------------------------------------------------------------- lines

@dataclass(frozen=True)
class LineFamily:
    class_node: int
    exposed_short: bool
    closed_orbit: MarkedDiagram
    closed_dim: int
    open_dim: Optional[int] = None
    delta0: Optional[Root] = None

    @property
    def dim(self) -> int:
        return self.open_dim if self.exposed_short else self.closed_dim

    def to_json(self) -> dict:
        return {"class": self.class_node, "exposed_short": self.exposed_short,
                "closed_orbit": self.closed_orbit.describe(),
                "closed_marks": list(self.closed_orbit.marked()),
                "closed_dim": self.closed_dim, "open_dim": self.open_dim,
                "delta0": None if self.delta0 is None else list(self.delta0)}


class LineClasses(tuple):
    def family(self, j: int) -> LineFamily:
        for f in self:
            if f.class_node == j:
                return f
        raise KeyError(j)


def line_marks(d: DynkinDiagram, S: Iterable[int], j: int) -> frozenset[int]:
    """(S \\ {j}) together with the neighbours of j."""
    S = set(S)
    return frozenset((S - {j}) | set(d.neighbors(j)))


def _is_support_highest(R: RootSystem, b: Root) -> bool:
    for k in b.support():
        up = list(b)
        up[k] += 1
        if R.is_root(up):
            return False
    return True


def find_delta0(R: RootSystem, S: Iterable[int], j: int) -> Root:
    """The long root p*alpha_j + gamma (p in {2,3}, gamma off S) that is the
    highest root of its own support, taking the smallest such support."""
    S = set(S)
    jx = R.idx(j)
    off = [R.idx(s) for s in S - {j}]
    cands = [b for b, cls in zip(R.positive_roots, R.length_class)
             if cls == "long" and b[jx] in (2, 3) and all(b[o] == 0 for o in off)
             and _is_support_highest(R, b)]
    if not cands:
        raise NoLongRootError(f"no long root found for exposed node {j}")
    h = min(b.height for b in cands)
    low = [b for b in cands if b.height == h]
    if len(low) != 1:
        raise NoLongRootError(f"{len(low)} candidate long roots at node {j}")
    return low[0]


def gamma_set(R: RootSystem, S: Iterable[int], delta0: Root) -> set[Root]:
    """(Delta_X - {d}) together with the differences beta - d that are roots."""
    base = [b for b in delta_X(R, S) if b != delta0]
    out = set(base)
    for b in base:
        c = Root(x - y for x, y in zip(b, delta0))
        if R.is_root(c):
            out.add(c)
    return out


def gamma_set_by_reflection(R: RootSystem, S: Iterable[int], delta0: Root) -> set[Root]:
    """(Delta_X - {d}) union s_d(Delta_X - {d})."""
    base = [b for b in delta_X(R, S) if b != delta0]
    return set(base) | {reflect(R, b, delta0) for b in base}


def line_classes(ps: ParabolicSpec) -> LineClasses:
    R = ps.roots
    d = ps.diagram
    out = []
    for j in sorted(ps.S):
        marks = line_marks(d, ps.S, j)
        closed = MarkedDiagram(d, {n: 1 for n in sorted(marks)})
        cdim = closed.dimension()
        if not is_exposed_short(R, ps.S, j):
            out.append(LineFamily(j, False, closed, cdim))
            continue
        d0 = find_delta0(R, ps.S, j)
        G = gamma_set(R, ps.S, d0)
        if len(G) != len(gamma_set_by_reflection(R, ps.S, d0)):
            raise InconsistencyError(f"Gamma counts disagree for {ps}, node {j}")
        out.append(LineFamily(j, True, closed, cdim, len(G), d0))
    return LineClasses(out)


@dataclass(frozen=True)
class ConeOfLines:
    """Lines of one class through a point, as a subvariety of P(T_1)."""
    diagram: MarkedDiagram
    exposed_short: bool
    dim: int                       # closed orbit H/P_{N(alpha)}
    base_dim: int                  # dim of the whole cone (open orbit if exposed)

    def describe(self) -> str:
        v = self.diagram.describe()
        if self.exposed_short:
            return f"two orbits: open of dim {self.base_dim}, closed {v} of dim {self.dim}"
        return v

    def to_json(self) -> dict:
        return {"variety": self.diagram.describe(), "marks": list(self.diagram.marked()),
                "exposed_short": self.exposed_short, "closed_dim": self.dim,
                "dim": self.base_dim}


def cone_of_lines(ps: ParabolicSpec, alpha: int) -> ConeOfLines:
    if alpha not in ps.S:
        raise ValueError(f"{alpha} not in S")
    d = ps.diagram
    Sp = (set(ps.S) - {alpha}) | set(d.neighbors(alpha))
    md = tits_shadow(ps.spec, Sp, ps.S)
    fam = line_classes(ps).family(alpha)
    X = dimension(ps)
    if md.dimension() != fam.closed_dim + 1 - X:
        raise InconsistencyError(f"cone of lines of {ps} at {alpha}: dimension mismatch")
    if fam.exposed_short:
        return ConeOfLines(md, True, md.dimension(), fam.open_dim + 1 - X)
    return ConeOfLines(md, False, md.dimension(), md.dimension())


# ------------------------------------------------------------------- planes

@dataclass(frozen=True)
class PlaneFamily:
    k: int
    removed_nodes: frozenset[int]
    chain: tuple[int, ...]
    parameter: MarkedDiagram

    def to_json(self) -> dict:
        return {"k": self.k, "removed_nodes": sorted(self.removed_nodes),
                "chain": list(self.chain), "parameter": self.parameter.describe(),
                "parameter_marks": list(self.parameter.marked()),
                "dim": self.parameter.dimension()}


def _chains(d: DynkinDiagram, S: set, alpha: int, k: int) -> list[tuple[int, ...]]:
    """Simply-laced paths of k nodes starting at alpha and avoiding S \\ {alpha}."""
    out = []

    def grow(path):
        if len(path) == k:
            out.append(tuple(path))
            return
        last = path[-1]
        for n in d.neighbors(last):
            if n in path or n in S:
                continue
            if d.edge(last, n).bond != 1:
                continue
            # a path must be an induced path (automatic on trees)
            grow(path + [n])

    grow([alpha])
    return out


def _check_not_exposed(ps: ParabolicSpec, alpha: int):
    if alpha not in ps.S:
        raise ValueError(f"{alpha} not in S")
    if is_exposed_short(ps.roots, ps.S, alpha):
        raise ExposedShortError(
            f"node {alpha} of {ps} is an exposed short root; see exposed_planes_catalog")


def planes(ps: ParabolicSpec, alpha: int, k: int) -> list[PlaneFamily]:
    _check_not_exposed(ps, alpha)
    if k < 1:
        raise ValueError("k must be positive")
    d = ps.diagram
    S = set(ps.S)
    found: dict[frozenset, tuple] = {}
    for ch in _chains(d, S, alpha, k):
        rim = {n for c in ch for n in d.neighbors(c)} - set(ch) - S
        key = frozenset(rim)
        if key not in found or ch < found[key]:
            found[key] = ch
    minimal = [B for B in found if not any(C < B for C in found)]
    out = []
    for B in sorted(minimal, key=lambda b: (len(b), sorted(b))):
        marks = sorted(B | (S - {alpha}))
        par = MarkedDiagram(d, {n: 1 for n in marks}) if marks else point()
        out.append(PlaneFamily(k, B, found[B], par))
    return out


def max_linear_space(ps: ParabolicSpec, alpha: int) -> int:
    _check_not_exposed(ps, alpha)
    d, S = ps.diagram, set(ps.S)
    k = 1
    while _chains(d, S, alpha, k + 1):
        k += 1
    return k


# -------------------------------------------------- exposed-short catalogue

@dataclass(frozen=True)
class CatalogFamily:
    kind: str                     # e.g. "P^4"
    dim: Optional[int]
    parameter: str
    components: int = 1
    orbits: Optional[int] = None
    closed_orbit: Optional[str] = None


@dataclass(frozen=True)
class CatalogEntry:
    space: str
    maximal: tuple[CatalogFamily, ...]
    families: tuple[CatalogFamily, ...] = ()
    notes: str = ""

    def to_json(self) -> dict:
        def fam(f):
            return {k: v for k, v in f.__dict__.items() if v is not None}
        return {"space": self.space, "maximal": [fam(f) for f in self.maximal],
                "families": [fam(f) for f in self.families], "notes": self.notes}


def _catalog_Cn(n: int, k: int) -> CatalogEntry:
    top = 2 * n - 2 * k + 1
    maximal = [CatalogFamily(f"P^{top}", None,
                             f"flags M^{k-1} < N^{k+top} < M^perp; orbits by rank of the form on N",
                             orbits=None)]
    fams = [CatalogFamily(f"P^l (l <= {top})", None,
                          "M^{k-1} < L < N^{k+l} < M^perp; C_n-orbits indexed by rank of the form on N")]
    if k >= 2:
        maximal.append(CatalogFamily(f"P^{k}", None,
                                     f"isotropic N^{k+1}; M^0 < L < N", orbits=2))
        fams.append(CatalogFamily(f"P^l (1 < l <= {k})", None,
                                  "M^{k-l} < L < N^{k+1} < M^perp, N isotropic", orbits=2))
    return CatalogEntry(f"C{n}/P{k}", tuple(maximal), tuple(fams),
                        "subvariety of G(k,2n); linear spaces come from the Grassmannian")


def _catalog_Bn(n: int) -> CatalogEntry:
    """Linear spaces of B_n/P_n = D_{n+1}/P_{n+1}, restratified under B_n."""
    big = ParabolicSpec(DiagramSpec("D", n + 1), frozenset({n + 1}))
    top = max_linear_space(big, n + 1)
    by_k = {k: planes(big, n + 1, k) for k in range(1, top + 2)}
    fams, maximal = [], []
    for k in range(1, top + 1):
        for pf in by_k[k]:
            rest = sorted(set(pf.removed_nodes) - {n, n + 1})
            closed = f"B{n}/P" + (",".join(map(str, rest)) if rest else str(n))
            cf = CatalogFamily(f"P^{k}", pf.parameter.dimension(), pf.parameter.describe(),
                               orbits=2 if rest else 1, closed_orbit=closed)
            fams.append(cf)
            if not any(q.chain[:k] == pf.chain for q in by_k[k + 1]):
                maximal.append(cf)
    return CatalogEntry(f"B{n}/P{n}", tuple(maximal), tuple(fams),
                        f"same variety as D{n+1}/P{n+1}; the closed B_n-orbit forgets the spin nodes")


def exposed_planes_catalog(ps: ParabolicSpec, alpha: int) -> CatalogEntry:
    if alpha not in ps.S or not is_exposed_short(ps.roots, ps.S, alpha):
        raise ValueError(f"node {alpha} of {ps} is not an exposed short root")
    s, n = ps.spec.series, ps.spec.rank
    if len(ps.S) == 1:
        if s == "C" and alpha < n:
            return _catalog_Cn(n, alpha)
        if s == "B" and alpha == n:
            return _catalog_Bn(n)
        if (s, alpha) == ("F", 4):
            return CatalogEntry("F4/P4", (
                CatalogFamily("P^5", 5, "Q^5 in P(T_2)"),
                CatalogFamily("P^4", 6, "Q^6 in P(T_1), equivalently P^2's on Q^5"),
                CatalogFamily("P^4", 6, "the two families of P^3's on Q^6", components=2)),
                (CatalogFamily("P^1", 23, "lines: A o B = 0", orbits=2, closed_orbit="F4/P3"),),
                "all other linear spaces lie in one of these; lines of the closed orbit have dim 20")
        if (s, alpha) == ("F", 3):
            return CatalogEntry("F4/P3", (
                CatalogFamily("P^3", None, "P^2 in a Q^4 fibre of the base locus over P^1"),
                CatalogFamily("P^2", None, "the P^1 base of the base locus")),
                (CatalogFamily("P^1", 24, "lines: AB = AC = 0, B o C = 0", orbits=2,
                               closed_orbit="F4/P{2,4}"),),
                "homogeneous lines form F4/P{2,4} of dim 22")
        if (s, alpha) == ("G", 1):
            return CatalogEntry("G2/P1", (
                CatalogFamily("P^2", 6, "G_Q(3,7) = Q^6; contains a special family ~ G2/P1"),),
                (CatalogFamily("P^1", 7, "lines: uv + vu = 0, i.e. G_Q(2,7)", orbits=2,
                               closed_orbit="G2/P2"),),
                "G2/P1 is the quadric Q^5")
    raise UncoveredCatalog(f"no catalogue entry for {ps} at node {alpha}")


# --------------------------------------------------------- ambient modules

AMBIENT_TAGS = ("full-exterior", "reduced-exterior", "bracket-kernel", "quotient")


@dataclass(frozen=True)
class AmbientModule:
    spec: DiagramSpec
    end_node: int
    k: int
    weight: Weight
    tag: str
    branch: tuple[int, ...]
    note: str = ""

    def to_json(self) -> dict:
        return {"spec": str(self.spec), "end": self.end_node, "k": self.k,
                "weight": list(self.weight), "tag": self.tag, "branch": list(self.branch),
                "note": self.note}


def branch(spec, end: int) -> tuple[int, ...]:
    """Chain of nodes from an end along single bonds, stopping at (and
    including) a trivalent node; a multiple bond towards a longer root is
    taken as the last step."""
    d = build_diagram(_as_spec(spec))
    if end not in diagram_ends(d):
        raise ValueError(f"{end} is not an end of {spec}")
    chain = [end]
    while True:
        last = chain[-1]
        new = [n for n in d.neighbors(last) if n not in chain]
        if len(new) != 1:
            break
        e = d.edge(last, new[0])
        if e.bond == 1:
            chain.append(new[0])
            continue
        if e.arrow == last:
            chain.append(new[0])
        break
    return tuple(chain)


def _fund(R: RootSystem, i: int, c: int = 1) -> Weight:
    return Weight(c if n == i else 0 for n in R.nodes)


def wedge_weight(spec, end: int, k: int) -> Weight:
    """Weight of mu_1 ^ ... ^ mu_k with mu_1 = omega_end and mu_{j+1} the
    reflection of mu_j in the j-th branch node."""
    spec = _as_spec(spec)
    R = build_root_system(spec)
    ch = branch(spec, end)
    mu = _fund(R, end)
    tot = list(mu)
    for j in range(k - 1):
        node = ch[min(j, len(ch) - 1)]
        if mu[R.idx(node)] != 1:
            raise KOutOfRange(f"weight walk leaves the extremal range at step {j + 1}")
        mu = simple_reflect_weight(R, mu, node)
        tot = [a + b for a, b in zip(tot, mu)]
    return Weight(tot)


def _past_branch(R: RootSystem, ch: tuple[int, ...]) -> Optional[Weight]:
    d = R.diagram
    last = ch[-1]
    new = [n for n in d.neighbors(last) if n not in ch]
    if len(new) == 2:
        a, b = new
        return Weight(x + y for x, y in zip(_fund(R, a), _fund(R, b)))
    if len(new) == 1:
        e = d.edge(last, new[0])
        if e.bond > 1 and e.arrow == new[0]:
            return _fund(R, new[0], e.bond)
    return None


# Veronese re-embeddings of a family past the branch
_SPECIAL = {("F", 4, 6): (1, 3, "F_5 is F4/P1 in its third Veronese re-embedding"),
            ("G", 1, 3): (1, 2, "F_2 is G2/P1 in its second Veronese re-embedding")}


def is_symplectic(R: RootSystem, lam) -> bool:
    from .reps import dominant_rep
    if tuple(dominant_rep(R, [-x for x in lam])) != tuple(lam):
        return False
    s = sum(R.coroot_pairing(lam, b) for b in R.positive_roots)
    return s % 2 == 1


def classify_ambient(R: RootSystem, end: int, k: int, weight) -> str:
    from .reps import weyl_dim_R
    if k == 1:
        return "full-exterior"
    V = _fund(R, end)
    N = weyl_dim_R(R, V)
    D = weyl_dim_R(R, weight)
    if D == comb(N, k):
        return "full-exterior"
    if is_symplectic(R, V) and D == comb(N, k) - comb(N, k - 2):
        return "reduced-exterior"
    adjoint = tuple(R.root_to_weight(R.highest_root)) == tuple(V)
    if adjoint and k == 2 and D == comb(N, 2) - N:
        return "bracket-kernel"
    return "quotient"


def ambient_module(spec, end_node: int, k: int) -> AmbientModule:
    spec = _as_spec(spec)
    R = build_root_system(spec)
    ch = branch(spec, end_node)
    p = len(ch)
    key = (spec.series, end_node, k)
    if key in _SPECIAL:
        node, c, note = _SPECIAL[key]
        w = _fund(R, node, c)
        return AmbientModule(spec, end_node, k, w, "quotient", ch, note)
    if not 1 <= k <= p + 1:
        raise KOutOfRange(f"k={k} outside 1..{p + 1} for {spec} end {end_node}")
    if k <= p:
        w = _fund(R, ch[k - 1])
        note = "fundamental weight along the branch"
    else:
        w = _past_branch(R, ch)
        if w is None:
            raise KOutOfRange(f"no extremal weight past the branch of {spec} at {end_node}")
        note = "first weight past the branch"
    walk = wedge_weight(spec, end_node, k)
    if tuple(walk) != tuple(w):
        raise InconsistencyError(f"wedge weight {walk} differs from {w}")
    return AmbientModule(spec, end_node, k, w, classify_ambient(R, end_node, k, w), ch, note)


# ------------------------------------------------------------ reconstruction

def variety_name(d: DynkinDiagram, marked: int, degree: int = 1) -> str:
    spec, iso = identify(d)
    s, n, i = spec.series, spec.rank, iso[marked]
    if s == "A":
        m = min(i, n + 1 - i)
        name = f"P^{n}" if m == 1 else f"G({m},{n + 1})"
    elif s == "B" and i == 1:
        name = f"Q^{2 * n - 1}"
    elif s == "C" and i == 1:
        name = f"P^{2 * n - 1}"
    elif s == "C" and i == n:
        name = f"LG({n},{2 * n})"
    elif s == "D" and i == 1:
        name = f"Q^{2 * n - 2}"
    elif s == "D" and i >= n - 1:
        name = f"S_{n}"
    elif s == "E" and n == 6 and i in (1, 6):
        name = "OP^2"
    else:
        name = f"{spec}/P{i}"
    return name if degree == 1 else f"v{degree}({name})"


def base_name(factors: Iterable[Y1Factor]) -> str:
    factors = sorted(factors, key=lambda f: (f.dimension(), f.describe()))
    names = [variety_name(f.diagram, f.marked, f.degree) for f in factors]
    if not names:
        return "P^0"
    return names[0] if len(names) == 1 else "Seg(" + "×".join(names) + ")"


@dataclass(frozen=True)
class TraceStep:
    level: int
    variety: str
    base: str
    factors: tuple[str, ...]


@dataclass(frozen=True)
class ReconstructionTrace:
    steps: tuple[TraceStep, ...]
    result: DynkinDiagram
    root_node: int
    isomorphism: dict = field(default_factory=dict)

    @property
    def chain(self) -> list[str]:
        """Base loci level by level, disjoint unions joined with ⊔."""
        levels: dict[int, list[str]] = {}
        for st in self.steps:
            levels.setdefault(st.level, []).append(st.base)
        return ["⊔".join(levels[k]) for k in sorted(levels)]

    def to_json(self) -> dict:
        return {"steps": [{"level": s.level, "variety": s.variety, "base": s.base,
                           "factors": list(s.factors)} for s in self.steps],
                "chain": self.chain,
                "result": {"nodes": list(self.result.nodes),
                           "edges": [[e.i, e.j, e.bond, e.arrow] for e in self.result.edges]},
                "isomorphism": {str(a): b for a, b in sorted(self.isomorphism.items())}}


def reconstruct_diagram(spec, i: int) -> ReconstructionTrace:
    spec = _as_spec(spec)
    full = build_diagram(spec)
    R = build_root_system(spec)
    if is_exposed_short(R, {i}, i):
        raise RecipeStuck(f"node {i} of {spec} is an exposed short root")
    nodes = [1]
    edges: list[Edge] = []
    steps = []
    todo = [(0, full, i, 1, 1)]      # level, diagram, marked node, new label, degree
    while todo:
        level, d, m, label, deg = todo.pop(0)
        Rd = build_root_system(d)
        if is_exposed_short(Rd, {m}, m):
            raise RecipeStuck(f"factor {variety_name(d, m)} is exposed short at its marked node")
        Y = closed_orbit_Y1(Rd, {m}, m)
        steps.append(TraceStep(level, variety_name(d, m, deg), base_name(Y.factors),
                               tuple(f.describe() for f in Y.factors)))
        for f in sorted(Y.factors, key=lambda f: (f.dimension(), f.describe())):
            new = len(nodes) + 1
            nodes.append(new)
            edges.append(Edge(label, new, f.degree, new if f.degree > 1 else None))
            todo.append((level + 1, f.diagram, f.marked, new, f.degree))
    result = DynkinDiagram(tuple(nodes), tuple(edges))
    isos = [mp for mp in isomorphisms(result, full) if mp[1] == i]
    if not isos:
        raise InconsistencyError(f"reconstruction of {spec} from node {i} failed")
    return ReconstructionTrace(tuple(steps), result, 1, isos[0])
