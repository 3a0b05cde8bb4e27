"""The affine comitants E1, E2 and their common factor.

For a translation to a symbolic point (x, y) the binary forms C_i and C_0 of the
translated system are eliminated against each other; the eliminants, read as
polynomials in the translation point, are E1 (degree 5) and E2 (degree 6).
Every invariant affine line divides both, and the gcd H of their
homogenizations carries the lines together with the line at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateInput, InexactDivision, InternalInconsistency
from .exactpoly import MPoly, divmod_poly, homogenize, mgcd, sylvester_resultant
from .system import QuadSystem

XYZ = ("X", "Y", "Z")
_RING = ("xp", "yp", "x", "y")


@dataclass(frozen=True)
class EPolys:
    E1_affine: MPoly
    E2_affine: MPoly
    E1: MPoly
    E2: MPoly
    Hgcd: MPoly

    @property
    def degree(self) -> int:
        return self.Hgcd.degree()

    @property
    def z_exponent(self) -> int:
        return self.Hgcd.min_degree("Z")

    @property
    def infinity_multiplicity(self) -> int:
        """Multiplicity of Z = 0, inferred as (Z-exponent of H) + 1."""
        return self.z_exponent + 1


def _translated_parts(S: QuadSystem):
    """Homogeneous parts of the system translated to the symbolic point (x, y)."""
    xp, yp, x, y = MPoly.gens(_RING)
    p = S.p.in_vars(_RING)
    q = S.q.in_vars(_RING)
    P0, Q0 = p, q
    P1 = p.diff("x") * xp + p.diff("y") * yp
    Q1 = q.diff("x") * xp + q.diff("y") * yp
    sub = {"x": xp, "y": yp}
    P2 = S.p_i(2).subs(sub).in_vars(_RING)
    Q2 = S.q_i(2).subs(sub).in_vars(_RING)
    return xp, yp, (P0, Q0), (P1, Q1), (P2, Q2)


def _gamma(S: QuadSystem, i: int) -> MPoly:
    xp, yp, *parts = _translated_parts(S)
    Pi, Qi = parts[i]
    P0, Q0 = parts[0]
    Ci = yp * Pi - xp * Qi
    C0 = yp * P0 - xp * Q0
    res = sylvester_resultant(Ci, C0, "xp", degrees=(i + 1, 1))
    q, r = divmod_poly(res, yp ** (i + 1))
    if r.terms:
        raise InternalInconsistency(f"eliminant {i} is not divisible by yp^{i + 1}")
    if q.degree("yp") > 0 or q.degree("xp") > 0:
        raise InternalInconsistency(f"eliminant {i} still depends on the translated coordinates")
    return q.in_vars(("xp", "yp", "x", "y")).in_vars(("x", "y")) if q.terms else MPoly({}, ("x", "y"))


def gamma_construction(S: QuadSystem) -> EPolys:
    if S.is_degenerate:
        raise DegenerateInput("p and q share a common factor")
    E1a = _gamma(S, 1)
    E2a = _gamma(S, 2)
    E1 = homogenize(E1a, 5, XYZ)
    E2 = homogenize(E2a, 6, XYZ)
    H = mgcd(E1, E2)
    for E in (E1, E2):
        if divmod_poly(E, H)[1].terms:
            raise InternalInconsistency("gcd does not divide its arguments")
    return EPolys(E1a, E2a, E1, E2, H)


def epolys(S: QuadSystem) -> EPolys:
    return gamma_construction(S)


def line_divides_check(E: EPolys | QuadSystem, line: MPoly, k: int) -> bool:
    """True iff line^k divides H exactly (the line is a linear form in X, Y, Z or x, y)."""
    if k == 0:
        return True
    if isinstance(E, QuadSystem):
        E = gamma_construction(E)
    L = line
    if set(L.used_vars()) <= {"x", "y"} and L.used_vars():
        L = homogenize(L, 1, XYZ)
    L = L.in_vars(XYZ)
    return not divmod_poly(E.Hgcd, L ** k)[1].terms
