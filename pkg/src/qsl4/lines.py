"""Invariant straight lines: extraction from H, the cofactor test, and a search oracle.

A line ``u x + v y + w = 0`` is stored as a normalized triple (first nonzero entry 1)
over the scalar tower of :mod:`qsl4.scalars`.  The line at infinity is ``(0, 0, 1)``.
Multiplicities of affine lines are exponents in H (``H-multiplicity``); the line at
infinity gets (Z-exponent of H) + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .epolys import XYZ, EPolys, gamma_construction
from .errors import DegenerateInput, NonSplit, NotInvariant, UnsupportedSystem
from .exactpoly import MPoly, divmod_poly, substitute, sylvester_resultant
from .scalars import NumScalar, QuadScalar, conj, extension_of, is_exact, is_real, sort_key, to_json
from .system import QuadSystem

XY = ("x", "y")


def _ext_rank(c) -> int:
    d = extension_of(c)
    return 0 if d is None else (2 if d == 0 else 1)


@dataclass(frozen=True, eq=False)
class Line:
    """The projective line u X + v Y + w Z = 0, normalized so the first nonzero entry is 1."""

    u: object
    v: object
    w: object

    @classmethod
    def of(cls, u, v, w) -> "Line":
        u, v, w = (Fraction(c) if isinstance(c, int) else c for c in (u, v, w))
        for lead in (u, v, w):
            if lead != 0:
                break
        else:
            raise ValueError("(u, v, w) = (0, 0, 0) is not a line")
        coords = [_clean(c / lead) for c in (u, v, w)]
        coords[[u, v, w].index(lead)] = Fraction(1)
        return cls(*coords)

    @classmethod
    def infinity(cls) -> "Line":
        return cls(Fraction(0), Fraction(0), Fraction(1))

    @property
    def coeffs(self) -> tuple:
        return (self.u, self.v, self.w)

    @property
    def is_infinite(self) -> bool:
        return self.u == 0 and self.v == 0

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    @property
    def is_real(self) -> bool:
        return all(is_real(c) for c in self.coeffs)

    @property
    def extension_rank(self) -> int:
        """0 for rational lines, 1 for quadratic-extension lines, 2 for numeric ones."""
        return max(_ext_rank(c) for c in self.coeffs)

    def sort_key(self) -> tuple:
        return (self.is_infinite, self.extension_rank) + tuple(sort_key(c) for c in self.coeffs)

    def conjugate(self) -> "Line":
        return Line(*(conj(c) for c in self.coeffs))

    def affine(self, vars=XY) -> MPoly:
        x, y = MPoly.gens(vars)
        return x * self.u + y * self.v + self.w

    def projective(self, vars=XYZ) -> MPoly:
        X, Y, Z = MPoly.gens(vars)
        return X * self.u + Y * self.v + Z * self.w

    def direction(self) -> tuple:
        """(u, v): parallel lines share it."""
        return (self.u, self.v)

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        # numeric coordinates compare by tolerance, so hash them coarsely
        return hash(tuple(c if is_exact(c) else "~" for c in self.coeffs))

    def __str__(self):
        if self.is_infinite:
            return "Z = 0"
        return f"{self.affine()} = 0"

    def to_json(self):
        return [to_json(c) for c in self.coeffs]


def _clean(c):
    if isinstance(c, QuadScalar) and c.b == 0:
        return c.a
    if isinstance(c, NumScalar) and c == 0:
        return Fraction(0)
    return c


@dataclass(frozen=True)
class LineWithMult:
    line: Line
    multiplicity: int
    cofactor: MPoly | None = None

    @property
    def coefficients(self) -> tuple:
        return self.line.coeffs

    @property
    def is_infinite(self) -> bool:
        return self.line.is_infinite

    def __str__(self):
        s = str(self.line)
        return s if self.multiplicity == 1 else f"{s}  (multiplicity {self.multiplicity})"

    def to_json(self):
        out = {
            "coefficients": self.line.to_json(),
            "equation": str(self.line),
            "multiplicity": self.multiplicity,
            "infinite": self.is_infinite,
            "exact": self.line.is_exact,
        }
        if self.cofactor is not None:
            out["cofactor"] = str(self.cofactor)
        return out


@dataclass(frozen=True)
class LineSet:
    lines: tuple[LineWithMult, ...]
    hgcd: MPoly | None = field(default=None, compare=False)

    @property
    def total_multiplicity(self) -> int:
        return sum(l.multiplicity for l in self.lines)

    @property
    def affine(self) -> tuple[LineWithMult, ...]:
        return tuple(l for l in self.lines if not l.is_infinite)

    @property
    def infinity(self) -> LineWithMult | None:
        for l in self.lines:
            if l.is_infinite:
                return l
        return None

    @property
    def inexact(self) -> bool:
        return any(not l.line.is_exact for l in self.lines)

    @property
    def distinct_count(self) -> int:
        return len(self.lines)

    def support(self) -> list[Line]:
        return [l.line for l in self.affine]

    def to_json(self):
        return {
            "lines": [l.to_json() for l in self.lines],
            "total_multiplicity": self.total_multiplicity,
            "multiplicity_kind": "H-exponent",
            "inexact": self.inexact,
        }


# ---------------------------------------------------------------------- the cofactor test

def cofactor(S: QuadSystem, line: Line | LineWithMult) -> MPoly:
    """k with p f_x + q f_y = f k for f = u x + v y + w; raises NotInvariant otherwise."""
    if isinstance(line, LineWithMult):
        line = line.line
    if line.is_infinite:
        raise ValueError("the cofactor test applies to affine lines")
    f = line.affine()
    Df = S.p * line.u + S.q * line.v
    k, r = divmod_poly(Df, f)
    if r.terms:
        raise NotInvariant(f"{line} is not invariant: remainder {r}")
    return k


verify_line = cofactor


def is_invariant(S: QuadSystem, line: Line) -> bool:
    try:
        cofactor(S, line)
    except NotInvariant:
        return False
    return True


# ---------------------------------------------------------------------- extraction from H

def _univariate(f: MPoly, var: str) -> list:
    return upoly.from_mpoly(f.in_vars((var,)), var)


def _lines_in_direction(h: MPoly, direction) -> list[Line]:
    """Affine lines with the given direction on which h(x, y) vanishes identically.

    direction is r for lines x - r y + w = 0, or None for lines y + w = 0.
    """
    t, w = MPoly.gens(("t", "w"))
    if direction is None:
        sub = {"x": t, "y": -w}
    else:
        sub = {"x": t * direction - w, "y": t}
    g = substitute(h, sub, vars=("t", "w"))
    polys = [_univariate(c, "w") for c in g.coeffs_in("t").values()]
    out = []
    for w0 in upoly.common_roots(polys):
        out.append(Line.of(0, 1, w0) if direction is None else Line.of(1, -direction, w0))
    return out


def _directions(top: MPoly, a: str, b: str) -> list:
    n = top.degree()
    one = MPoly.const(Fraction(1), (a,))
    t_of_a = upoly.from_mpoly(substitute(top, {b: one}, vars=(a,)), a)
    out = [r for r, _ in upoly.roots_with_multiplicity(t_of_a)]
    if upoly.deg(t_of_a) < n:
        out.append(None)
    return out


def linear_factors(h: MPoly) -> list[Line]:
    """Distinct affine lines dividing h(x, y), over the scalar tower."""
    h = h.in_vars(XY)
    if h.degree() < 1:
        return []
    n = h.degree()
    top = MPoly({e: c for e, c in h.terms.items() if sum(e) == n}, XY)
    out = []
    for r in _directions(top, "x", "y"):
        out.extend(_lines_in_direction(h, r))
    return sorted(out, key=Line.sort_key)


def _exponent(F: MPoly, L: MPoly) -> tuple[int, MPoly]:
    k = 0
    while F.degree() >= 1:
        q, r = divmod_poly(F, L)
        if r.terms:
            break
        F, k = q, k + 1
    return k, F


def _strip_z(H: MPoly) -> tuple[int, MPoly]:
    m = H.min_degree("Z")
    if not m:
        return 0, H
    iz = H.vars.index("Z")
    terms = {e[:iz] + (e[iz] - m,) + e[iz + 1:]: c for e, c in H.terms.items()}
    return m, MPoly(terms, H.vars)


def extract_lines(S: QuadSystem, E: EPolys | None = None) -> LineSet:
    if E is None:
        E = gamma_construction(S)
    H = E.Hgcd.in_vars(XYZ)
    m, H0 = _strip_z(H)
    found: list[LineWithMult] = []
    rest = H0
    if H0.degree() >= 1:
        top = substitute(H0, {"Z": MPoly.const(Fraction(0), ("X", "Y"))}, vars=("X", "Y"))
        directions = _directions(top, "X", "Y")
        h =substitute(H0, {"X": MPoly.var("x", XY), "Y": MPoly.var("y", XY), "Z": MPoly.const(Fraction(1), XY)}, vars=XY)
        for r in directions:
            for line in _lines_in_direction(h, r):
                k, rest = _exponent(rest, line.projective())
                if k == 0:
                    raise NonSplit(f"{line} vanishes on H but does not divide it")
                found.append(LineWithMult(line, k, cofactor(S, line)))
    if rest.degree() >= 1:
        raise NonSplit(f"H has a factor that does not split into lines over the scalar tower: {rest}")
    found.sort(key=lambda l: l.line.sort_key())
    found.append(LineWithMult(Line.infinity(), m + 1, None))
    return LineSet(tuple(found), E.Hgcd)


def conjugate_closed(ls: LineSet) -> bool:
    """For real systems the line multiset is stable under complex conjugation."""
    pool = [(l.line, l.multiplicity) for l in ls.lines]
    for line, k in pool:
        c = line.conjugate()
        if not any(o == c and ko == k for o, ko in pool):
            return False
    return True


def parallel_pairs(ls: LineSet) -> list[tuple[Line, Line]]:
    aff = ls.support()
    return [(a, b) for i, a in enumerate(aff) for b in aff[i + 1:] if a.direction() == b.direction()]


def distinct_directions(ls: LineSet) -> int:
    dirs: list = []
    for line in ls.support():
        if not any(line.direction() == d for d in dirs):
            dirs.append(line.direction())
    return len(dirs)


# ---------------------------------------------------------------------- independent oracle

_ORACLE_RING = ("x", "m", "b")


def _in_mb(f: MPoly) -> MPoly:
    return f.in_vars(_ORACLE_RING).in_vars(("m", "b")) if f.terms else MPoly({}, ("m", "b"))


def _line_from_slope(m0, b0) -> Line:
    # y = m0 x + b0
    return Line.of(m0, -1, b0)


def line_search_oracle(S: QuadSystem) -> list[Line]:
    """All affine invariant lines, found by substituting y = m x + b (and x = c) directly.

    Independent of E1/E2: it imposes q(x, mx+b) - m p(x, mx+b) = 0 identically in x.
    Slopes that are roots of an irreducible rational factor of degree >= 3 are first
    screened by an exact resultant gcd; only survivors are resolved numerically.
    """
    if S.is_degenerate:
        raise DegenerateInput("p and q share a common factor")
    x, m, b = MPoly.gens(_ORACLE_RING)
    on_line = {"x": x, "y": m * x + b}
    F = substitute(S.q, on_line, vars=_ORACLE_RING) - m * substitute(S.p, on_line, vars=_ORACLE_RING)
    cx = F.coeffs_in("x")
    c2 = _in_mb(cx.get(2, MPoly({}, _ORACLE_RING)))
    c1 = _in_mb(cx.get(1, MPoly({}, _ORACLE_RING)))
    c0 = _in_mb(cx.get(0, MPoly({}, _ORACLE_RING)))
    if c2.is_zero():
        raise UnsupportedSystem("C2 vanishes identically")
    found: list[Line] = []

    def solve_at(m0):
        mb = {"m": MPoly.const(m0, ("b",)), "b": MPoly.var("b", ("b",))}
        polys = [upoly.from_mpoly(substitute(c, mb, vars=("b",)), "b") for c in (c1, c0)]
        for b0 in upoly.common_roots(polys):
            found.append(_line_from_slope(m0, b0))

    slope_poly = upoly.from_mpoly(c2.in_vars(("m",)), "m")
    exact, leftovers = upoly.split_rational(slope_poly)
    for m0, _ in exact:
        solve_at(m0)
    if leftovers:
        R = sylvester_resultant(c1, c0, "b", degrees=(1, 2))
        Rm = upoly.from_mpoly(R.in_vars(("m",)), "m") if R.terms else []
        for phi, _ in leftovers:
            g = upoly.gcd_(phi, Rm) if Rm else phi
            if upoly.deg(g) >= 1:
                for m0 in upoly.numeric_roots(g):
                    solve_at(NumScalar(m0))

    # vertical lines x = c: p(c, y) vanishes identically in y
    cy = S.p.coeffs_in("y")
    vpolys = []
    for k in range(3):
        ck = cy.get(k, MPoly({}, XY))
        vpolys.append(upoly.from_mpoly(ck.in_vars(("x",)) if ck.terms else MPoly({}, ("x",)), "x"))
    if any(vpolys):
        for c in upoly.common_roots(vpolys):
            found.append(Line.of(1, 0, -c))
    found.sort(key=Line.sort_key)
    return found
