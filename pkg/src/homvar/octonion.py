"""Complexified octonions and the exceptional Jordan algebra, exactly.

Octonions are Cayley-Dickson pairs of quaternions,
    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),
with basis 1, e1, e2, e3 = i, j, k and e4 = l, e5, e6, e7 = il, jl, kl.
Coordinates may be any exact ring elements (Fraction, CplxRat, Dual).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import kernel, matrix_rank


class CplxRat:
    """Gaussian rational re + im*i."""
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "CplxRat":
        z = object.__new__(cls)
        z.re, z.im = re, im
        return z

    @staticmethod
    def _lift(x):
        if isinstance(x, CplxRat):
            return x
        if isinstance(x, (int, Fraction)):
            return CplxRat(x)
        return None

    def __add__(self, o):
        o = self._lift(o)
        return NotImplemented if o is None else CplxRat._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CplxRat._raw(-self.re, -self.im)

    def __sub__(self, o):
        o = self._lift(o)
        return NotImplemented if o is None else CplxRat._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = self._lift(o)
        return NotImplemented if o is None else o - self

    def __mul__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        return CplxRat._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        return CplxRat._raw((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, o):
        o = self._lift(o)
        return NotImplemented if o is None else o / self

    def __pow__(self, k: int):
        out = CplxRat(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "CplxRat":
        return CplxRat(self.re, -self.im)

    def __eq__(self, o):
        o = self._lift(o)
        return o is not None and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"


I = CplxRat(0, 1)
ONE = CplxRat(1)
ZERO = CplxRat(0)


# -------------------------------------------------------------- quaternions

def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def _qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


def _qadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _qsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------- octonions

class Octonion:
    __slots__ = ("c",)

    def __init__(self, coords: Sequence = None):
        coords = tuple(coords) if coords is not None else (0,) * 8
        if len(coords) != 8:
            raise ValueError("an octonion has 8 coordinates")
        self.c = coords

    @classmethod
    def unit(cls, k: int, scale=1) -> "Octonion":
        return cls(tuple(scale if j == k else 0 for j in range(8)))

    @classmethod
    def scalar(cls, s) -> "Octonion":
        return cls((s,) + (0,) * 7)

    def __add__(self, o: "Octonion") -> "Octonion":
        return Octonion(tuple(x + y for x, y in zip(self.c, o.c)))

    def __sub__(self, o: "Octonion") -> "Octonion":
        return Octonion(tuple(x - y for x, y in zip(self.c, o.c)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-x for x in self.c))

    def __mul__(self, o):
        if isinstance(o, Octonion):
            return oct_mul(self, o)
        return Octonion(tuple(x * o for x in self.c))

    def __rmul__(self, s):
        return Octonion(tuple(s * x for x in self.c))

    def conj(self) -> "Octonion":
        return Octonion((self.c[0],) + tuple(-x for x in self.c[1:]))

    def norm(self):
        """N(x) = x conj(x), a complex bilinear quadratic form."""
        tot = 0
        for x in self.c:
            tot = tot + x * x
        return tot

    @property
    def re(self):
        return self.c[0]

    def is_imaginary(self) -> bool:
        return self.c[0] == 0

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def __eq__(self, o):
        return isinstance(o, Octonion) and all(x == y for x, y in zip(self.c, o.c))

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "Octonion(" + ", ".join(map(repr, self.c)) + ")"


def cayley_dickson_mul(x: Octonion, y: Octonion) -> Octonion:
    a, b = x.c[:4], x.c[4:]
    c, d = y.c[:4], y.c[4:]
    first = _qsub(_qmul(a, c), _qmul(_qconj(d), b))
    second = _qadd(_qmul(d, a), _qmul(b, _qconj(c)))
    return Octonion(first + second)


def _unit_table() -> tuple[tuple[tuple[int, int], ...], ...]:
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            p = cayley_dickson_mul(Octonion.unit(a), Octonion.unit(b)).c
            (k,) = [k for k in range(8) if p[k] != 0]
            row.append((k, p[k]))
        table.append(tuple(row))
    return tuple(table)


_TABLE = None


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    """Product via the unit table e_a e_b = +-e_c, skipping zero coordinates."""
    global _TABLE
    if _TABLE is None:
        _TABLE = _unit_table()
    out = [0] * 8
    ys = [(b, yb) for b, yb in enumerate(y.c) if yb != 0]
    for a, xa in enumerate(x.c):
        if xa == 0:
            continue
        row = _TABLE[a]
        for b, yb in ys:
            k, sg = row[b]
            t = xa * yb
            out[k] = out[k] + t if sg > 0 else out[k] - t
    return Octonion(out)


def left_mult_matrix(v: Octonion) -> list[list]:
    """Matrix of x -> v x in the standard basis (columns are v e_k)."""
    cols = [oct_mul(v, Octonion.unit(k)).c for k in range(8)]
    return [[cols[k][r] for k in range(8)] for r in range(8)]


# ------------------------------------------------------------------ G2/P1

class NotImaginary(ValueError):
    pass


def g2p1_membership(u: Octonion) -> bool:
    if not u.is_imaginary():
        raise NotImaginary("u must have zero real part")
    return not u.is_zero() and (u * u).is_zero()


def g2p1_tangent(u: Octonion) -> list[list]:
    """Kernel of v -> uv + vu on Im O, as coordinate vectors over e1..e7."""
    if not u.is_imaginary():
        raise NotImaginary("u must have zero real part")
    cols = []
    for k in range(1, 8):
        e = Octonion.unit(k)
        cols.append((u * e + e * u).c)
    M = [[cols[k][r] for k in range(7)] for r in range(8)]
    return kernel(M, 7)


def g2p1_tangent_by_real_part(u: Octonion) -> list[list]:
    """{v in Im O : Re(uv) = 0}."""
    row = [(u * Octonion.unit(k)).re for k in range(1, 8)]
    return kernel([row], 7)


def g2p1_tangent1(u: Octonion) -> list[list]:
    """{v in Im O : uv = 0}."""
    cols = [(u * Octonion.unit(k)).c for k in range(1, 8)]
    M = [[cols[k][r] for k in range(7)] for r in range(8)]
    return kernel(M, 7)


# -------------------------------------------------------------- J_3(O)

def _oct(s) -> Octonion:
    return s if isinstance(s, Octonion) else Octonion.scalar(s)


@dataclass(frozen=True)
class HermOct3:
    """[[r1, x3*, x2*], [x3, r2, x1*], [x2, x1, r3]] with * = conjugation."""
    r1: object
    r2: object
    r3: object
    x1: Octonion
    x2: Octonion
    x3: Octonion

    def matrix(self) -> list[list[Octonion]]:
        return [[_oct(self.r1), self.x3.conj(), self.x2.conj()],
                [self.x3, _oct(self.r2), self.x1.conj()],
                [self.x2, self.x1, _oct(self.r3)]]

    @classmethod
    def from_matrix(cls, M) -> "HermOct3":
        for i in range(3):
            if not M[i][i].is_zero() and any(x != 0 for x in M[i][i].c[1:]):
                raise ValueError("diagonal entries must be scalars")
            for j in range(3):
                if M[i][j] != M[j][i].conj():
                    raise ValueError("matrix is not Hermitian")
        return cls(M[0][0].c[0], M[1][1].c[0], M[2][2].c[0], M[2][1], M[2][0], M[1][0])

    @classmethod
    def diag(cls, a, b, c) -> "HermOct3":
        z = Octonion()
        return cls(a, b, c, z, z, z)

    @classmethod
    def zero(cls) -> "HermOct3":
        return cls.diag(0, 0, 0)

    def coords(self) -> list:
        return [self.r1, self.r2, self.r3, *self.x1.c, *self.x2.c, *self.x3.c]

    @classmethod
    def from_coords(cls, v: Sequence) -> "HermOct3":
        return cls(v[0], v[1], v[2], Octonion(v[3:11]), Octonion(v[11:19]), Octonion(v[19:27]))

    def __add__(self, o):
        return HermOct3.from_coords([a + b for a, b in zip(self.coords(), o.coords())])

    def __sub__(self, o):
        return HermOct3.from_coords([a - b for a, b in zip(self.coords(), o.coords())])

    def scale(self, s) -> "HermOct3":
        return HermOct3.from_coords([s * a for a in self.coords()])

    def trace(self):
        return self.r1 + self.r2 + self.r3

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords())

    def __eq__(self, o):
        return isinstance(o, HermOct3) and all(a == b for a, b in zip(self.coords(), o.coords()))

    def __hash__(self):
        return hash(tuple(self.coords()))


def matprod(A, B) -> list[list[Octonion]]:
    MA = A.matrix() if isinstance(A, HermOct3) else A
    MB = B.matrix() if isinstance(B, HermOct3) else B
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            s = Octonion()
            for k in range(3):
                s = s + MA[i][k] * MB[k][j]
            row.append(s)
        out.append(row)
    return out


def _matrix_is_zero(M) -> bool:
    return all(x.is_zero() for row in M for x in row)


def jordan(A: HermOct3, B: HermOct3) -> HermOct3:
    P, Q = matprod(A, B), matprod(B, A)
    half = Fraction(1, 2)
    return HermOct3.from_matrix([[(P[i][j] + Q[i][j]) * half for j in range(3)] for i in range(3)])


def det(A: HermOct3):
    """1/6 tr(A)^3 - 1/2 tr(A) tr(A^2) + 1/3 tr(A^3), with A^3 = A o (A o A)."""
    A2 = jordan(A, A)
    A3 = jordan(A, A2)
    t1, t2, t3 = A.trace(), A2.trace(), A3.trace()
    return Fraction(1, 6) * t1 * t1 * t1 - Fraction(1, 2) * t1 * t2 + Fraction(1, 3) * t3


def sharp(A: HermOct3) -> HermOct3:
    """A^# = A^2 - tr(A) A + 1/2 (tr(A)^2 - tr(A^2)) I."""
    A2 = jordan(A, A)
    t = A.trace()
    c = Fraction(1, 2) * (t * t - A2.trace())
    return A2 - A.scale(t) + HermOct3.diag(c, c, c)


def is_op2_0_point(A: HermOct3) -> bool:
    return not A.is_zero() and jordan(A, A).is_zero()


def is_rank_one_traceless(A: HermOct3) -> bool:
    return not A.is_zero() and A.trace() == 0 and sharp(A).is_zero()


def base_point() -> HermOct3:
    """The base point [[i, 1, 0], [1, -i, 0], [0, 0, 0]]."""
    z = Octonion()
    return HermOct3(I, -I, ZERO, z, z, Octonion.scalar(ONE))


class NotAPoint(ValueError):
    pass


def _traceless_basis() -> list[HermOct3]:
    out = [HermOct3.diag(1, 0, -1), HermOct3.diag(0, 1, -1)]
    z = Octonion()
    for k in range(8):
        e = Octonion.unit(k)
        out += [HermOct3(0, 0, 0, e, z, z), HermOct3(0, 0, 0, z, e, z), HermOct3(0, 0, 0, z, z, e)]
    return out


def _flatten(M) -> list:
    return [x for row in M for o in row for x in o.c]


def _kernel_of(fn, basis) -> list[HermOct3]:
    cols = [fn(b) for b in basis]
    M = [[cols[k][r] for k in range(len(basis))] for r in range(len(cols[0]))]
    out = []
    for vec in kernel(M, len(basis)):
        acc = HermOct3.zero()
        for c, b in zip(vec, basis):
            if c != 0:
                acc = acc + b.scale(c)
        out.append(acc)
    return out


@dataclass
class Tangents:
    hatT: list
    hatT1: list

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.hatT), len(self.hatT1)


def op2_0_tangents(A: HermOct3) -> Tangents:
    if not is_op2_0_point(A):
        raise NotAPoint("A o A must vanish")
    basis = _traceless_basis()
    hatT = _kernel_of(lambda B: jordan(A, B).coords(), basis)
    hatT1 = _kernel_of(lambda B: _flatten(matprod(A, B)), basis)
    return Tangents(hatT, hatT1)


def span_contains(big: list[HermOct3], small: list[HermOct3]) -> bool:
    r = matrix_rank([b.coords() for b in big])
    return matrix_rank([b.coords() for b in big + small]) == r


# ------------------------------------------------- FF^2 base locus of F4/P4

def tangent_model(u: Octonion, v: Octonion) -> HermOct3:
    """Tangent direction at the base point: x1 = -i u, x2 = u, x3 = v.
    The T_1 part is u, the T_2 part is v (imaginary)."""
    return HermOct3(ZERO, ZERO, ZERO, -I * u, u, v)


def ff2_base_op2_0(u: Octonion, v: Octonion) -> bool:
    """(u, v) with N(u) = N(v) = 0 and u conj(v) = 0."""
    if not v.is_imaginary():
        raise NotImaginary("v must be imaginary")
    return u.norm() == 0 and v.norm() == 0 and (u * v.conj()).is_zero()


def null_imaginary(params: Sequence) -> Octonion:
    """Polynomial parameterization of the null cone in Im O:
    (t, y3..y7) -> x_k = t y_k, x1 + i x2 = t^2, x1 - i x2 = -sum y_k^2."""
    t, ys = params[0], params[1:6]
    a = t * t
    b = 0
    for y in ys:
        b = b - y * y
    half = Fraction(1, 2)
    x1 = (a + b) * half
    x2 = (a - b) * (-I * half)
    return Octonion((0, x1, x2) + tuple(t * y for y in ys))


def base_locus_map(x: Sequence) -> list:
    """(w, t, y) -> (u, v) = (w v, v) with v null imaginary."""
    w = Octonion(x[:8])
    v = null_imaginary(x[8:14])
    u = w * v
    return list(u.c) + list(v.c[1:])


# -------------------------------------------------------------- lines

@dataclass
class LineTest:
    general_line: bool
    homogeneous_line: bool
    degenerate: bool


def _proportional(A: HermOct3, B: HermOct3) -> bool:
    return matrix_rank([A.coords(), B.coords()]) < 2


def line_tests(A: HermOct3, B: HermOct3) -> LineTest:
    if not is_op2_0_point(A) or not is_op2_0_point(B):
        raise NotAPoint("both arguments must satisfy A o A = 0")
    if _proportional(A, B):
        return LineTest(False, False, True)
    return LineTest(jordan(A, B).is_zero(), _matrix_is_zero(matprod(A, B)), False)


def general_line_witness(v: Octonion) -> HermOct3:
    """u = 0 and x3 = v null imaginary: A o B = 0 but AB != 0."""
    return tangent_model(Octonion(), v)


def homogeneous_line_witness(u: Octonion) -> HermOct3:
    """x3 = 0 and x2 = u null: AB = 0."""
    return tangent_model(u, Octonion())


# ------------------------------------------------------------ symmetry

def rational_rotation(rng: random.Random, bound: int = 3) -> list[list[Fraction]]:
    """Cayley transform (I - K)(I + K)^-1 of a random rational skew K."""
    a, b, c = (Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(3))
    K = [[0, a, b], [-a, 0, c], [-b, -c, 0]]
    Ip = [[Fraction(int(i == j)) + K[i][j] for j in range(3)] for i in range(3)]
    Im = [[Fraction(int(i == j)) - K[i][j] for j in range(3)] for i in range(3)]
    inv = _inv3(Ip)
    return [[sum(Im[i][k] * inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def _inv3(M):
    (a, b, c), (d, e, f), (g, h, i) = M
    D = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    adj = [[e * i - f * h, c * h - b * i, b * f - c * e],
           [f * g - d * i, a * i - c * g, c * d - a * f],
           [d * h - e * g, b * g - a * h, a * e - b * d]]
    return [[x / D for x in row] for row in adj]


def rotate(g, A: HermOct3) -> HermOct3:
    """A -> g A g^T for a real rational orthogonal g."""
    M = A.matrix()
    G = [[Octonion.scalar(x) for x in row] for row in g]
    GT = [[G[j][i] for j in range(3)] for i in range(3)]
    return HermOct3.from_matrix(matprod(matprod(G, M), GT))


def random_cplx(rng: random.Random, bound: int = 9, den: int = 5) -> CplxRat:
    return CplxRat(Fraction(rng.randint(-bound, bound), rng.randint(1, den)),
                   Fraction(rng.randint(-bound, bound), rng.randint(1, den)))


def random_octonion(rng: random.Random, imaginary: bool = False) -> Octonion:
    c = [random_cplx(rng) for _ in range(8)]
    if imaginary:
        c[0] = ZERO
    return Octonion(c)


def random_null_imaginary(rng: random.Random, bound: int = 9) -> Octonion:
    while True:
        v = null_imaginary([random_cplx(rng, bound) for _ in range(6)])
        if not v.is_zero():
            return v


def random_null(rng: random.Random) -> Octonion:
    """A nonzero octonion with N = 0: w v for a null imaginary v."""
    while True:
        u = random_octonion(rng) * random_null_imaginary(rng)
        if not u.is_zero():
            return u


def random_op2_0_point(rng: random.Random) -> HermOct3:
    """A rotated point on a line through the base point."""
    A = base_point()
    kind = rng.randrange(3)
    if kind == 0:
        B = A
    elif kind == 1:
        B = general_line_witness(random_null_imaginary(rng, 2))
    else:
        B = homogeneous_line_witness(Octonion.unit(0, ONE) * random_null_imaginary(rng, 2))
    s = random_cplx(rng, 2, 1)
    P = A + B.scale(s) if kind else A
    return rotate(rational_rotation(rng), P)


# ------------------------------------------------------------ the suite

@dataclass
class Check:
    name: str
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def verify_suite(seed: int = 20240601, samples: int = 500, points: int = 20) -> list[Check]:
    """Exact identities and dimension counts of the octonionic models."""
    from .prolong import f4p3_base_map, param_dimension_probe, symplectic_base_map

    rng = random.Random(seed)
    out = []

    alt = norm = 0
    for _ in range(samples):
        x, y = random_octonion(rng), random_octonion(rng)
        alt += (x * x) * y == x * (x * y) and (y * x) * x == y * (x * x)
        norm += (x * y).norm() == x.norm() * y.norm()
    out.append(Check("alternativity", alt == samples, f"{alt}/{samples}"))
    out.append(Check("norm multiplicativity", norm == samples, f"{norm}/{samples}"))

    sq = 0
    for _ in range(samples):
        u = random_octonion(rng, imaginary=True)
        sq += u * u == Octonion.scalar(-u.norm())
    out.append(Check("u^2 = -N(u) on Im O", sq == samples, f"{sq}/{samples}"))

    kdims = set()
    g2dims = set()
    for _ in range(points):
        v = random_null_imaginary(rng)
        kdims.add(len(kernel(left_mult_matrix(v), 8)))
        g2dims.add((len(g2p1_tangent(v)), len(g2p1_tangent1(v))))
    out.append(Check("L_v kernel for null v", kdims == {4}, f"dims {sorted(kdims)}"))
    out.append(Check("G2/P1 tangent and T1 kernels", g2dims == {(6, 3)},
                     f"dims {sorted(g2dims)}"))

    A = base_point()
    T = op2_0_tangents(A)
    out.append(Check("base point A o A = 0", is_op2_0_point(A) and is_rank_one_traceless(A),
                     "rank one and traceless"))
    out.append(Check("base point kernels", T.dims == (16, 9), f"dims {T.dims}"))
    fdims = {op2_0_tangents(random_op2_0_point(rng)).dims for _ in range(points)}
    out.append(Check("rotated points kernels", fdims == {(16, 9)}, f"dims {sorted(fdims)}"))

    def probe(fmap, n):
        return param_dimension_probe(fmap, [random_cplx(rng) for _ in range(n)],
                                     [random_cplx(rng) for _ in range(n)])

    r = probe(base_locus_map, 14)
    out.append(Check("F4/P4 base locus", r.projective_dim == 9, f"projective dim {r.projective_dim}"))
    r = probe(f4p3_base_map(), 8)
    out.append(Check("F4/P3 base locus", r.projective_dim == 5, f"projective dim {r.projective_dim}"))
    r = probe(symplectic_base_map(2, 2), 4)
    out.append(Check("C3/P2 base locus", r.rank == 4 and r.projective_dim == 3,
                     f"differential rank {r.rank}, projective dim {r.projective_dim}"))
    return out
