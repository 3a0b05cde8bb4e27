"""Singular points, zero-cycles at infinity and the divisor-type gate.

P and Q are the degree-2 homogenizations of p and q, so for a nondegenerate
quadratic system the curves P = 0, Q = 0 meet in exactly four points of the
complex projective plane counted with intersection number.  Those numbers are
read off a resultant: project from a center O lying on neither curve, such that
no two intersection points are collinear with O; then the multiplicity of each
linear factor of Res_Y(P, Q) is the intersection number at the one point on
that line.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import upoly
from .comitants import ComitantBundle
from .epolys import XYZ
from .errors import DegenerateInput, InternalInconsistency, UnsupportedSystem
from .exactpoly import MPoly, homogenize, mgcd, substitute, sylvester_resultant
from .scalars import is_exact, is_real, sort_key, to_json
from .system import QuadSystem


@dataclass(frozen=True, eq=False)
class Point:
    """A point [X:Y:Z] of the projective plane: Z = 1 for finite points, first nonzero 1 otherwise."""

    X: object
    Y: object
    Z: object

    @classmethod
    def of(cls, X, Y, Z) -> "Point":
        X, Y, Z = (Fraction(c) if isinstance(c, int) else c for c in (X, Y, Z))
        if Z != 0:
            return cls(_tidy(X / Z), _tidy(Y / Z), Fraction(1))
        if X != 0:
            return cls(Fraction(1), _tidy(Y / X), Fraction(0))
        if Y != 0:
            return cls(Fraction(0), Fraction(1), Fraction(0))
        raise ValueError("[0:0:0] is not a point")

    @property
    def coords(self) -> tuple:
        return (self.X, self.Y, self.Z)

    @property
    def is_infinite(self) -> bool:
        return self.Z == 0

    @property
    def is_real(self) -> bool:
        return all(is_real(c) for c in self.coords)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coords)

    def affine(self) -> tuple:
        if self.is_infinite:
            raise ValueError("point at infinity has no affine coordinates")
        return (self.X, self.Y)

    def sort_key(self):
        return (self.is_infinite,) + tuple(sort_key(c) for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(tuple(c if is_exact(c) else "~" for c in self.coords))

    def __str__(self):
        if self.is_infinite:
            return f"[{self.X}:{self.Y}:0]"
        return f"({self.X}, {self.Y})"

    def to_json(self):
        return [to_json(c) for c in self.coords]


def _tidy(c):
    from .scalars import NumScalar, QuadScalar

    if isinstance(c, QuadScalar) and c.b == 0:
        return c.a
    if isinstance(c, NumScalar) and c == 0:
        return Fraction(0)
    return c


@dataclass(frozen=True)
class ZeroCycle:
    entries: tuple[tuple[Point, int], ...]

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def support(self) -> list[Point]:
        return [w for w, k in self.entries if k]

    def weight(self, w: Point) -> int:
        return sum(k for v, k in self.entries if v == w)

    def __str__(self):
        if not self.entries:
            return "0"
        return " + ".join(str(w) if k == 1 else f"{k}{w}" for w, k in self.entries)

    def to_json(self):
        return [{"point": w.to_json(), "weight": k} for w, k in self.entries]


@dataclass(frozen=True)
class SingPoint:
    point: Point
    mult_pq: int
    mult_cz: int | None = None

    @property
    def is_infinite(self) -> bool:
        return self.point.is_infinite

    def __str__(self):
        s = f"{self.point}  I(P,Q)={self.mult_pq}"
        if self.mult_cz is not None:
            s += f" I(C,Z)={self.mult_cz}"
        return s

    def to_json(self):
        out = {"point": self.point.to_json(), "text": str(self.point), "mult_pq": self.mult_pq,
               "real": self.point.is_real}
        if self.mult_cz is not None:
            out["mult_cz"] = self.mult_cz
        return out


@dataclass(frozen=True)
class DivisorSummary:
    dcz: ZeroCycle
    dpqz: ZeroCycle
    n_r_inf: int
    d_sigma_inf: int
    divisor_case: int

    def to_json(self):
        return {
            "divisor_case": self.divisor_case,
            "D_CZ": self.dcz.to_json(),
            "D_PQ_Z": self.dpqz.to_json(),
            "n_R_inf": self.n_r_inf,
            "d_sigma_inf": self.d_sigma_inf,
        }


# ---------------------------------------------------------------------- intersections

def _centers():
    """Projection centers [a:1:b], small integers first."""
    seen = []
    for r in range(0, 6):
        for a, b in product(range(-r, r + 1), repeat=2):
            if max(abs(a), abs(b)) == r:
                seen.append((a, b))
    return seen


def _project_from(P: MPoly, Q: MPoly, a: int, b: int):
    """Intersection points with multiplicities seen from [a:1:b], or None if the center is bad."""
    Xp, Yp, Zp = MPoly.gens(XYZ)
    move = {"X": Xp + Yp * a, "Y": Yp, "Z": Zp + Yp * b}
    P2 = substitute(P, move, vars=XYZ)
    Q2 = substitute(Q, move, vars=XYZ)
    dP, dQ = P.degree(), Q.degree()
    if P2.degree("Y") < dP or Q2.degree("Y") < dQ:
        return None  # center lies on one of the curves
    R = sylvester_resultant(P2, Q2, "Y", degrees=(dP, dQ))
    if R.is_zero():
        raise DegenerateInput("the curves share a component")
    one = MPoly.const(Fraction(1), ("X",))
    r_of_x = upoly.from_mpoly(substitute(R, {"Z": one, "Y": one}, vars=("X",)), "X")
    fibers = [((root, Fraction(1)), k) for root, k in upoly.roots_with_multiplicity(r_of_x)]
    top = dP * dQ - upoly.deg(r_of_x)
    if top:
        fibers.append(((Fraction(1), Fraction(0)), top))
    out = []
    for (x0, z0), k in fibers:
        yvar = {"X": MPoly.const(x0, ("Y",)), "Y": MPoly.var("Y", ("Y",)), "Z": MPoly.const(z0, ("Y",))}
        polys = [upoly.from_mpoly(substitute(F, yvar, vars=("Y",)), "Y") for F in (P2, Q2)]
        ys = upoly.common_roots(polys)
        if len(ys) != 1:
            return None  # two intersection points on one line through the center
        y0 = ys[0]
        out.append((Point.of(x0 + y0 * a, y0, z0 + y0 * b), k))
    return out


def _same_cycle(A, B) -> bool:
    if len(A) != len(B):
        return False
    pool = list(B)
    for w, k in A:
        for i, (v, j) in enumerate(pool):
            if v == w and j == k:
                pool.pop(i)
                break
        else:
            return False
    return True


def projective_curves(S: QuadSystem) -> tuple[MPoly, MPoly]:
    return homogenize(S.p, 2, XYZ), homogenize(S.q, 2, XYZ)


def intersection_cycle(S: QuadSystem) -> list[tuple[Point, int]]:
    """All of sigma(P, Q) with intersection numbers, cross-checked from two centers."""
    if S.is_degenerate:
        raise DegenerateInput("p and q share a common factor")
    P, Q = projective_curves(S)
    results = []
    for a, b in _centers():
        got = _project_from(P, Q, a, b)
        if got is not None:
            results.append(got)
            if len(results) == 2:
                break
    if len(results) < 2:
        raise InternalInconsistency("no admissible projection center found")
    first, second = results
    if not _same_cycle(first, second):
        raise InternalInconsistency("intersection numbers depend on the projection center")
    if sum(k for _, k in first) != 4:
        raise InternalInconsistency("Bezout count of two conics is not 4")
    return sorted(first, key=lambda e: e[0].sort_key())


def finite_singularities(S: QuadSystem, cycle=None) -> list[SingPoint]:
    cycle = intersection_cycle(S) if cycle is None else cycle
    return [SingPoint(w, k) for w, k in cycle if not w.is_infinite]


def _c2_roots(S: QuadSystem) -> list[tuple[Point, int]]:
    C2 = ComitantBundle(S).C2
    if C2.is_zero():
        raise UnsupportedSystem("C2 vanishes identically")
    one = MPoly.const(Fraction(1), ("x",))
    c_of_x = upoly.from_mpoly(substitute(C2, {"y": one}, vars=("x",)), "x")
    out = [(Point.of(r, 1, 0), k) for r, k in upoly.roots_with_multiplicity(c_of_x)]
    top = 3 - upoly.deg(c_of_x)
    if top:
        out.append((Point.of(1, 0, 0), top))
    return sorted(out, key=lambda e: e[0].sort_key())


def infinite_singularities(S: QuadSystem, cycle=None) -> tuple[list[SingPoint], ZeroCycle]:
    """Roots of C2 on Z = 0 with I(C, Z) and I(P, Q), and the cycle D_S(P, Q; Z)."""
    roots = _c2_roots(S)
    cycle = intersection_cycle(S) if cycle is None else cycle
    at_inf = [(w, k) for w, k in cycle if w.is_infinite]
    pts = []
    for w, kcz in roots:
        kpq = sum(k for v, k in at_inf if v == w)
        pts.append(SingPoint(w, kpq, kcz))
    for v, _ in at_inf:
        if not any(v == w for w, _ in roots):
            raise InternalInconsistency(f"{v} is a common zero of P, Q at infinity but not a root of C2")
    return pts, ZeroCycle(tuple(at_inf))


def divisor_case(S: QuadSystem, bundle: ComitantBundle | None = None) -> int:
    c = bundle or ComitantBundle(S)
    if c.C2.is_zero():
        return 5
    eta = c.eta
    if eta > 0:
        return 1
    if eta < 0:
        return 2
    return 3 if not c.M.is_zero() else 4


def divisor_type(S: QuadSystem, bundle: ComitantBundle | None = None) -> DivisorSummary:
    c = bundle or ComitantBundle(S)
    case = divisor_case(S, c)
    if case == 5:
        return DivisorSummary(ZeroCycle(()), ZeroCycle(()), 0, 0, 5)
    roots = _c2_roots(S)
    dcz = ZeroCycle(tuple(roots))
    n_r = sum(1 for w, _ in roots if w.is_real)
    if S.is_degenerate:
        return DivisorSummary(dcz, ZeroCycle(()), n_r, 0, case)
    _, dpqz = infinite_singularities(S)
    return DivisorSummary(dcz, dpqz, n_r, dpqz.degree, case)


# ---------------------------------------------------------------------- common factor at infinity

def gcd_p2q2_degree(S: QuadSystem) -> int:
    return mgcd(S.p_i(2), S.q_i(2)).degree()


def predicted_gcd_degree(S: QuadSystem, bundle: ComitantBundle | None = None) -> int:
    """0 iff mu != 0; 1 iff mu = 0 and K != 0; 2 iff K = 0."""
    c = bundle or ComitantBundle(S)
    if c.mu != 0:
        return 0
    return 1 if not c.K.is_zero() else 2
