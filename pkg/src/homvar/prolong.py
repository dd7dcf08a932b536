"""Prolongations of linear systems of homogeneous forms, in exact arithmetic.

Monomials are exponent tuples; within a degree they are ordered
graded-lexicographically with x_0 largest, so echelon bases are canonical.
"""
from __future__ import annotations

import json
import random
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .dynkin import DiagramSpec, GuardExceeded
from .linalg import Echelon, nullspace, rank
from .parabolic import ParabolicSpec

POLY_GUARD = 20_000


def _key(exp: tuple) -> tuple:
    # Echelon picks the smallest key as pivot: make the glex-largest monomial smallest
    return tuple(-e for e in exp)


def _unkey(key: tuple) -> tuple:
    return tuple(-e for e in key)


def monomials(nvars: int, degree: int) -> list[tuple]:
    out = []
    for c in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_key)
    return out


def space_dim(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


# --------------------------------------------------------------------- Poly

@dataclass(frozen=True)
class Poly:
    nvars: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != self.nvars or sum(e) != self.degree:
                raise ValueError(f"monomial {e} is not of degree {self.degree} in {self.nvars} vars")
            if c != 0:
                clean[e] = c if isinstance(c, Fraction) else Fraction(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly") -> "Poly":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, self.degree, t)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c) -> "Poly":
        return Poly(self.nvars, self.degree, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, self.degree + other.degree, t)

    __rmul__ = scale

    def diff(self, i: int) -> "Poly":
        if self.degree == 0:
            return Poly(self.nvars, 0, {})
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return Poly(self.nvars, self.degree - 1, t)

    def __call__(self, point: Sequence):
        tot = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            tot = tot + v
        return tot

    def row(self) -> dict:
        return {_key(e): c for e, c in self.terms.items()}

    @classmethod
    def from_row(cls, nvars: int, degree: int, row: dict) -> "Poly":
        return cls(nvars, degree, {_unkey(k): v for k, v in row.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_key):
            c = self.terms[e]
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def const(nvars: int, c=1) -> Poly:
    return Poly(nvars, 0, {(0,) * nvars: c})


# --------------------------------------------------------------- PolySystem

@dataclass(frozen=True)
class PolySystem:
    """A linear span of forms of one degree, stored as a reduced echelon basis."""
    nvars: int
    degree: int
    basis: tuple[Poly, ...]

    @classmethod
    def span(cls, nvars: int, degree: int, polys: Iterable[Poly]) -> "PolySystem":
        e = Echelon()
        for p in polys:
            if p.is_zero():
                continue
            if p.degree != degree or p.nvars != nvars:
                raise ValueError("form of the wrong shape in span")
            e.add(p.row())
        return cls._from_echelon(nvars, degree, e)

    @classmethod
    def _from_echelon(cls, nvars, degree, e: Echelon) -> "PolySystem":
        return cls(nvars, degree, tuple(Poly.from_row(nvars, degree, r) for r in e.rows()))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def echelon(self) -> Echelon:
        e = Echelon()
        for p in self.basis:
            e.add(p.row())
        return e

    def contains(self, p: Poly) -> bool:
        if p.is_zero():
            return True
        if p.degree != self.degree:
            return False
        return self.echelon().contains(p.row())

    def issubspace(self, other: "PolySystem") -> bool:
        e = other.echelon()
        return all(e.contains(p.row()) for p in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySystem):
            return NotImplemented
        return (self.nvars, self.degree, self.basis) == (other.nvars, other.degree, other.basis)

    def __hash__(self):
        return hash((self.nvars, self.degree, len(self.basis)))

    def to_json(self) -> str:
        return json.dumps({
            "nvars": self.nvars, "degree": self.degree,
            "basis": [[[list(e), f"{c.numerator}/{c.denominator}"]
                       for e, c in sorted(p.terms.items(), key=lambda t: _key(t[0]))]
                      for p in self.basis]})

    @classmethod
    def from_json(cls, text: str) -> "PolySystem":
        d = json.loads(text)
        polys = [Poly(d["nvars"], d["degree"], {tuple(e): Fraction(c) for e, c in terms})
                 for terms in d["basis"]]
        return cls.span(d["nvars"], d["degree"], polys)


def full_space(nvars: int, degree: int) -> PolySystem:
    return PolySystem(nvars, degree, tuple(Poly(nvars, degree, {m: 1})
                                            for m in monomials(nvars, degree)))


def zero_space(nvars: int, degree: int) -> PolySystem:
    return PolySystem(nvars, degree, ())


def jacobian(A: PolySystem) -> PolySystem:
    if A.degree < 1:
        raise ValueError("Jacobian needs forms of degree >= 1")
    return PolySystem.span(A.nvars, A.degree - 1,
                           (p.diff(i) for p in A.basis for i in range(A.nvars)))


# ------------------------------------------------------------- prolongation

def _guard(nvars: int, degree: int, guard: int):
    n = space_dim(nvars, degree)
    if n > guard:
        raise GuardExceeded(f"dim S^{degree} in {nvars} variables", n, guard)


def _prolong_direct(A: PolySystem) -> PolySystem:
    """Unknowns are the coefficients of P; every partial of P must reduce to
    zero modulo A."""
    n, d = A.nvars, A.degree
    E = A.echelon()
    cols = monomials(n, d + 1)
    normal = {}
    for m in monomials(n, d):
        normal[m] = E.reduce({_key(m): Fraction(1)})
    eqs: dict = {}
    for idx, m in enumerate(cols):
        for v in range(n):
            if not m[v]:
                continue
            lower = list(m)
            lower[v] -= 1
            for col, c in normal[tuple(lower)].items():
                eqs.setdefault((v, col), {})[idx] = eqs.get((v, col), {}).get(idx, 0) + m[v] * c
    sols = nullspace(eqs.values(), range(len(cols)))
    polys = [Poly(n, d + 1, {cols[i]: c for i, c in s.items()}) for s in sols]
    return PolySystem.span(n, d + 1, polys)


def _prolong_gradient(A: PolySystem) -> PolySystem:
    """Unknowns are F_v = sum_a c_{v,a} A_a; require d_w F_v = d_v F_w and
    recover P = (x . F) / (d + 1)."""
    n, d, m = A.nvars, A.degree, A.dim
    if m == 0:
        return zero_space(n, d + 1)
    if d == 0:
        # constants: F_v arbitrary constants, symmetric Hessian is automatic
        return full_space(n, 1) if m else zero_space(n, 1)
    unk = lambda v, a: v * m + a
    derivs = [[A.basis[a].diff(w) for w in range(n)] for a in range(m)]
    eqs: dict = {}
    for v in range(n):
        for w in range(v + 1, n):
            for a in range(m):
                for e, c in derivs[a][w].terms.items():      # + d_w F_v
                    row = eqs.setdefault((v, w, e), {})
                    row[unk(v, a)] = row.get(unk(v, a), 0) + c
                for e, c in derivs[a][v].terms.items():      # - d_v F_w
                    row = eqs.setdefault((v, w, e), {})
                    row[unk(w, a)] = row.get(unk(w, a), 0) - c
    sols = nullspace(eqs.values(), range(n * m))
    xs = [Poly.var(v, n) for v in range(n)]
    polys = []
    for s in sols:
        P = Poly(n, d + 1, {})
        for key, c in s.items():
            v, a = divmod(key, m)
            P = P + (xs[v] * A.basis[a]).scale(c)
        polys.append(P.scale(Fraction(1, d + 1)))
    return PolySystem.span(n, d + 1, polys)


def prolongation(A: PolySystem, l: int = 1, method: str = "gradient",
                 guard: int = POLY_GUARD) -> PolySystem:
    if l < 0:
        raise ValueError("l must be non-negative")
    step = {"gradient": _prolong_gradient, "direct": _prolong_direct}[method]
    out = A
    for _ in range(l):
        _guard(out.nvars, out.degree + 1, guard)
        if out.dim == 0:
            out = zero_space(out.nvars, out.degree + 1)
            continue
        out = step(out)
    return out


def is_in_first_prolongation(A: PolySystem, P: Poly) -> bool:
    return all(A.contains(P.diff(i)) for i in range(P.nvars))


# ------------------------------------------------------- classical systems

def minor(M: Sequence[Sequence[Poly]], rows: Sequence[int], cols: Sequence[int]) -> Poly:
    """Determinant by Laplace expansion along the first row."""
    if len(rows) == 1:
        return M[rows[0]][cols[0]]
    tot = None
    for t, c in enumerate(cols):
        sub = minor(M, rows[1:], cols[:t] + cols[t + 1:])
        term = M[rows[0]][c] * sub
        if t % 2:
            term = -term
        tot = term if tot is None else tot + term
    return tot


def pfaffian(M: Sequence[Sequence[Poly]], idx: Sequence[int]) -> Poly:
    if len(idx) == 2:
        return M[idx[0]][idx[1]]
    a = idx[0]
    tot = None
    for t in range(1, len(idx)):
        rest = idx[1:t] + idx[t + 1:]
        term = M[a][idx[t]] * pfaffian(M, rest)
        if (t - 1) % 2:
            term = -term
        tot = term if tot is None else tot + term
    return tot


def generic_matrix(p: int, q: int) -> list[list[Poly]]:
    n = p * q
    return [[Poly.var(i * q + j, n) for j in range(q)] for i in range(p)]


def symmetric_matrix(m: int) -> list[list[Poly]]:
    idx = {}
    for i in range(m):
        for j in range(i, m):
            idx[(i, j)] = len(idx)
    n = len(idx)
    return [[Poly.var(idx[(min(i, j), max(i, j))], n) for j in range(m)] for i in range(m)]


def skew_matrix(m: int) -> list[list[Poly]]:
    idx = {}
    for i in range(m):
        for j in range(i + 1, m):
            idx[(i, j)] = len(idx)
    n = len(idx)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            if i < j:
                row.append(Poly.var(idx[(i, j)], n))
            elif i > j:
                row.append(-Poly.var(idx[(j, i)], n))
            else:
                row.append(Poly(n, 1, {}))
        out.append(row)
    return out


def minors_system(M, size: int) -> PolySystem:
    p, q = len(M), len(M[0])
    n = M[0][0].nvars
    polys = [minor(M, list(r), list(c)) for r in combinations(range(p), size)
             for c in combinations(range(q), size)]
    return PolySystem.span(n, size, polys)


def pfaffian_system(M, size: int) -> PolySystem:
    n = M[0][1].nvars
    polys = [pfaffian(M, list(idx)) for idx in combinations(range(len(M)), size)]
    return PolySystem.span(n, size // 2, polys)


@dataclass(frozen=True)
class Family:
    kind: str               # G, LG, S, Q
    params: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "G":
            return f"G({self.params[0]},{self.params[1]})"
        if self.kind == "LG":
            return f"LG({self.params[0]},{2 * self.params[0]})"
        if self.kind == "S":
            return f"S{self.params[0]}"
        return f"Q{self.params[0]}"

    def parabolic(self) -> ParabolicSpec:
        if self.kind == "G":
            k, n = self.params
            return ParabolicSpec(DiagramSpec("A", n - 1), frozenset({k}))
        if self.kind == "LG":
            (n,) = self.params
            return ParabolicSpec(DiagramSpec("C", n), frozenset({n}))
        if self.kind == "S":
            (n,) = self.params
            return ParabolicSpec(DiagramSpec("D", n), frozenset({n}))
        (m,) = self.params
        if m % 2:
            return ParabolicSpec(DiagramSpec("B", (m + 1) // 2), frozenset({1}))
        return ParabolicSpec(DiagramSpec("D", m // 2 + 1), frozenset({1}))


class UncoveredSystem(LookupError):
    pass


def parse_family(text: str) -> Family:
    t = text.replace(" ", "").replace("^", "").replace("_", "")
    m = re.fullmatch(r"G\((\d+),(\d+)\)", t)
    if m:
        k, n = int(m.group(1)), int(m.group(2))
        if not 0 < k < n:
            raise UncoveredSystem(f"bad Grassmannian {text}")
        return Family("G", (k, n))
    m = re.fullmatch(r"(?:LG|GLag|Glag)\((\d+),(\d+)\)", t)
    if m and int(m.group(2)) == 2 * int(m.group(1)):
        return Family("LG", (int(m.group(1)),))
    m = re.fullmatch(r"S(\d+)", t)
    if m and int(m.group(1)) >= 4:
        return Family("S", (int(m.group(1)),))
    m = re.fullmatch(r"Q(\d+)", t)
    if m and int(m.group(1)) >= 1:
        return Family("Q", (int(m.group(1)),))
    raise UncoveredSystem(f"no quadric system for {text!r}; expected G(k,n), LG(n,2n), Sn or Qm")


def family_for(ps: ParabolicSpec) -> Family:
    """Inverse of Family.parabolic on the covered spaces."""
    (k,) = ps.S if len(ps.S) == 1 else (None,)
    s, n = ps.spec.series, ps.spec.rank
    if k is not None:
        if s == "A":
            return Family("G", (k, n + 1))
        if s == "C" and k == n:
            return Family("LG", (n,))
        if s == "D" and k in (n - 1, n):
            return Family("S", (n,))
        if s == "D" and k == 1:
            return Family("Q", (2 * n - 2,))
        if s == "B" and k == 1:
            return Family("Q", (2 * n - 1,))
    raise UncoveredSystem(f"no quadric system for {ps}")


def ff2_system(family: Family | str) -> PolySystem:
    """Quadrics generating the second fundamental form in the standard chart."""
    f = parse_family(family) if isinstance(family, str) else family
    if f.kind == "G":
        k, n = f.params
        return minors_system(generic_matrix(k, n - k), 2)
    if f.kind == "LG":
        return minors_system(symmetric_matrix(f.params[0]), 2)
    if f.kind == "S":
        return pfaffian_system(skew_matrix(f.params[0]), 4)
    (m,) = f.params
    q = sum((Poly.var(i, m) * Poly.var(i, m) for i in range(1, m)), Poly.var(0, m) * Poly.var(0, m))
    return PolySystem.span(m, 2, [q])


@dataclass
class ProlongationRow:
    l: int
    dim: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.dim == self.expected


@dataclass
class ProlongationReport:
    family: str
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {"family": self.family, "ok": self.ok,
                "rows": [{"l": r.l, "dim": r.dim, "expected": r.expected} for r in self.rows]}


def strict_prolongation_report(family: Family | str, kmax: int,
                               guard: int = POLY_GUARD) -> ProlongationReport:
    """Compare dim A^(l) with dim N_{l+2} for l = 0 .. kmax-1."""
    from .reps import normal_spaces
    f = parse_family(family) if isinstance(family, str) else family
    table = normal_spaces(f.parabolic())
    dims = table.dims()
    A = ff2_system(f)
    rows = []
    cur = A
    for l in range(kmax):
        if l:
            cur = prolongation(cur, 1, guard=guard)
        j = l + 2
        expected = dims[j - 1] if j <= len(dims) else 0
        rows.append(ProlongationRow(l, cur.dim, expected))
    return ProlongationReport(str(f), rows)


# -------------------------------------------------------- secant sampling

def random_fraction(rng: random.Random, bound: int = 20, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_point(rng: random.Random, n: int) -> list[Fraction]:
    while True:
        p = [random_fraction(rng) for _ in range(n)]
        if any(p):
            return p


def segre_point(p: int, q: int) -> Callable[[random.Random], list]:
    def draw(rng):
        a, b = random_point(rng, p), random_point(rng, q)
        return [a[i] * b[j] for i in range(p) for j in range(q)]
    return draw


def veronese2_point(m: int) -> Callable[[random.Random], list]:
    def draw(rng):
        a = random_point(rng, m)
        return [a[i] * a[j] for i in range(m) for j in range(i, m)]
    return draw


@dataclass
class SecantReport:
    k: int
    trials: int
    passed: int
    witness_violates: Optional[bool]
    equations: int

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and self.witness_violates is not False

    def to_json(self) -> dict:
        return {"k": self.k, "trials": self.trials, "passed": self.passed,
                "equations": self.equations, "witness_violates": self.witness_violates}


def secant_membership_check(draw: Callable[[random.Random], list], k: int, A: PolySystem,
                            trials: int = 100, seed: int = 0) -> SecantReport:
    """Sums of k base points must satisfy A^(k-1); a sum of k+1 points
    should violate it when A^(k-1) is nonzero."""
    rng = random.Random(seed)
    eqs = prolongation(A, k - 1).basis
    passed = 0
    for _ in range(trials):
        pts = [draw(rng) for _ in range(k)]
        x = [sum(c) for c in zip(*pts)]
        if all(P(x) == 0 for P in eqs):
            passed += 1
    witness = None
    if eqs:
        pts = [draw(rng) for _ in range(k + 1)]
        x = [sum(c) for c in zip(*pts)]
        witness = any(P(x) != 0 for P in eqs)
    return SecantReport(k, trials, passed, witness, len(eqs))


# ----------------------------------------------------- dimension probes

class Dual:
    """a + b*eps with eps^2 = 0 over any exact field."""
    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = a, b

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Dual) else Dual(x, 0)

    def __add__(self, o):
        o = self._lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) + (-self)

    def __mul__(self, o):
        o = self._lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    def __rmul__(self, o):
        o = self._lift(o)
        return Dual(o.a * self.a, o.a * self.b + o.b * self.a)

    def __pow__(self, k: int):
        out = Dual(1, 0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        o = self._lift(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))


def jacobian_rank(fmap: Callable[[list], list], point: Sequence) -> int:
    rows = []
    for i in range(len(point)):
        x = [Dual(c, 1 if j == i else 0) for j, c in enumerate(point)]
        y = fmap(x)
        rows.append({j: Dual._lift(v).b for j, v in enumerate(y) if Dual._lift(v).b != 0})
    return rank(rows)


@dataclass
class ProbeResult:
    rank: int
    projective_dim: int
    second_rank: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "projective_dim": self.projective_dim,
                "second_rank": self.second_rank}


def param_dimension_probe(fmap: Callable[[list], list], point: Sequence,
                          second: Optional[Sequence] = None) -> ProbeResult:
    """Rank of the differential of a polynomial map at a point.

    The image is a cone, so the projective dimension is rank - 1.  A second
    point, when given, guards against an accidentally special first point.
    """
    r = jacobian_rank(fmap, point)
    r2 = jacobian_rank(fmap, second) if second is not None else r
    if r2 != r:
        warnings.warn(f"differential rank {r} at the first point but {r2} at the second; "
                      "the first point may be singular")
    return ProbeResult(r, max(r, r2) - 1, r2)


def secant_segre_map(p: int, q: int, k: int = 2) -> Callable[[list], list]:
    """(a_1, b_1, ..., a_k, b_k) -> sum a_t b_t^T."""
    def f(x):
        out = [0] * (p * q)
        off = 0
        for _ in range(k):
            a, b = x[off:off + p], x[off + p:off + p + q]
            off += p + q
            for i in range(p):
                for j in range(q):
                    out[i * q + j] = out[i * q + j] + a[i] * b[j]
        return out
    return f


def symplectic_base_map(k: int, u_dim: int) -> Callable[[list], list]:
    """(e, u) -> (e (x) u, e^2) for e in a k-space and u in a u_dim-space."""
    def f(x):
        e, u = x[:k], x[k:k + u_dim]
        first = [e[i] * u[j] for i in range(k) for j in range(u_dim)]
        second = [e[i] * e[j] for i in range(k) for j in range(i, k)]
        return first + second
    return f


def f4p3_base_map() -> Callable[[list], list]:
    """(e*, f, u) -> (e* (x) u, (e* x f) (x) u^2): e = e* x f is annihilated by e*."""
    def f(x):
        a, b, u = x[0:3], x[3:6], x[6:8]
        e = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
        u2 = [u[0] * u[0], u[0] * u[1], u[1] * u[1]]
        return [a[i] * u[j] for i in range(3) for j in range(2)] + \
               [e[i] * w for i in range(3) for w in u2]
    return f
