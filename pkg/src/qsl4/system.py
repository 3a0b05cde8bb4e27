"""The quadratic system under study.

Coefficients follow the tensorial convention

    x' = a00 + a10 x + a01 y + a20 x^2 + 2 a11 x y + a02 y^2
    y' = b00 + b10 x + b01 y + b20 x^2 + 2 b11 x y + b02 y^2

so the stored ``a11`` is half the monomial coefficient of ``xy``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction

from .errors import DegreeError, InputError
from .exactpoly import MPoly, as_rat, mgcd

COEFF_NAMES = ("a00", "a10", "a01", "a20", "a11", "a02", "b00", "b10", "b01", "b20", "b11", "b02")

# monomial exponent (in x, y) and the factor between tensorial coefficient and monomial coefficient
_MONO = {
    "00": ((0, 0), 1),
    "10": ((1, 0), 1),
    "01": ((0, 1), 1),
    "20": ((2, 0), 1),
    "11": ((1, 1), 2),
    "02": ((0, 2), 1),
}


@dataclass(frozen=True)
class QuadSystem:
    a00: Fraction = Fraction(0)
    a10: Fraction = Fraction(0)
    a01: Fraction = Fraction(0)
    a20: Fraction = Fraction(0)
    a11: Fraction = Fraction(0)
    a02: Fraction = Fraction(0)
    b00: Fraction = Fraction(0)
    b10: Fraction = Fraction(0)
    b01: Fraction = Fraction(0)
    b20: Fraction = Fraction(0)
    b11: Fraction = Fraction(0)
    b02: Fraction = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_rat(getattr(self, f.name)))
        if not any(getattr(self, n) for n in ("a20", "a11", "a02", "b20", "b11", "b02")):
            raise DegreeError("system is not quadratic: both quadratic parts vanish")

    # -------------------------------------------------------------- construction
    @classmethod
    def from_tuple(cls, coeffs) -> "QuadSystem":
        coeffs = list(coeffs)
        if len(coeffs) != 12:
            raise InputError("expected 12 coefficients")
        return cls(**dict(zip(COEFF_NAMES, coeffs)))

    @classmethod
    def from_polys(cls, p: MPoly, q: MPoly) -> "QuadSystem":
        """Build from right-hand sides given as polynomials in x, y."""
        vals = {}
        for name, poly in (("a", p), ("b", q)):
            if not isinstance(poly, MPoly):
                poly = MPoly.const(as_rat(poly), ("x", "y"))
            extra = [v for v in poly.used_vars() if v not in ("x", "y")]
            if extra:
                raise InputError(f"unknown variables {extra}")
            poly = poly.in_vars(("x", "y"))
            if poly.degree() > 2:
                raise DegreeError(f"degree {poly.degree()} exceeds 2")
            for key, (exp, factor) in _MONO.items():
                c = poly.coeff(exp)
                if not isinstance(c, Fraction):
                    c = as_rat(c)
                vals[name + key] = c / factor
        return cls(**vals)

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, n) for n in COEFF_NAMES)

    # -------------------------------------------------------------- polynomial views
    def _poly(self, prefix: str, degrees=(0, 1, 2)) -> MPoly:
        terms = {}
        for key, (exp, factor) in _MONO.items():
            if sum(exp) in degrees:
                terms[exp] = getattr(self, prefix + key) * factor
        return MPoly(terms, ("x", "y"))

    @property
    def p(self) -> MPoly:
        return self._poly("a")

    @property
    def q(self) -> MPoly:
        return self._poly("b")

    def p_i(self, i: int) -> MPoly:
        return self._poly("a", (i,))

    def q_i(self, i: int) -> MPoly:
        return self._poly("b", (i,))

    def scaled(self, lam) -> "QuadSystem":
        lam = as_rat(lam)
        return QuadSystem.from_tuple([c * lam for c in self.as_tuple()])

    def common_factor(self) -> MPoly:
        return mgcd(self.p, self.q)

    @property
    def is_degenerate(self) -> bool:
        return self.common_factor().degree() >= 1

    def __str__(self):
        return f"x' = {self.p} ; y' = {self.q}"
