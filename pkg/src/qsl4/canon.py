"""Normal forms, the 46 orbit representatives, their perturbations and the affine group.

Templates are data: right-hand sides are strings in x, y and single-letter
parameters, read by :func:`qsl4.parser.parse_poly`, so each entry can be audited
against its source row by eye.  Perturbations use the letter ``e`` for epsilon.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping

from .errors import ConstraintViolation, InputError, NoPerturbation
from .exactpoly import MPoly, substitute
from .lines import Line, _exponent, linear_factors
from .parser import XY, parse_poly
from .system import QuadSystem

# Candidate values tried, in order, when a family needs sample parameters.
CANDIDATES = tuple(Fraction(v) for v in ("2", "3", "-2", "1/2", "-3", "5", "-1/2", "1/3", "7", "-5"))
SAMPLES_PER_FAMILY = 3


def _as_values(params: Mapping | None) -> dict[str, Fraction]:
    out = {}
    for k, v in (params or {}).items():
        try:
            out[k] = Fraction(v)
        except (TypeError, ValueError, ZeroDivisionError):
            raise InputError(f"parameter {k}: {v!r} is not a rational") from None
    return out


def _const(text: str, values: Mapping[str, Fraction]) -> Fraction:
    f = parse_poly(text, values, variables=())
    return f.const_value() if f.terms else Fraction(0)


@dataclass(frozen=True)
class FamilySpec:
    """A parametrized quadratic system with open (``!= 0``) and discrete parameter constraints."""

    family: str
    params: tuple[str, ...]
    p: str
    q: str
    nonzero: tuple[str, ...] = ()
    choices: tuple[tuple[str, tuple], ...] = ()
    fixed: tuple[tuple[str, Fraction], ...] = ()

    def validate(self, values: Mapping[str, Fraction]) -> dict[str, Fraction]:
        values = dict(values)
        for k, v in self.fixed:
            values.setdefault(k, v)
        extra = sorted(set(values) - set(self.params) - {k for k, _ in self.fixed} - {"e"})
        if extra:
            raise InputError(f"{self.family}: unknown parameters {extra}")
        missing = [k for k in self.params if k not in values]
        if missing:
            raise InputError(f"{self.family}: missing parameters {missing}")
        for k, v in self.fixed:
            if values[k] != v:
                raise ConstraintViolation(f"{self.family} requires {k} = {v}", f"{k}={v}")
        for name, allowed in self.choices:
            if values[name] not in allowed:
                shown = ", ".join(str(a) for a in allowed)
                raise ConstraintViolation(f"{self.family} requires {name} in {{{shown}}}", f"{name} in {{{shown}}}")
        for cond in self.nonzero:
            if _const(cond, values) == 0:
                raise ConstraintViolation(f"{self.family} requires {cond} != 0", f"{cond}!=0")
        return values

    def build(self, params: Mapping | None = None) -> QuadSystem:
        values = self.validate(_as_values(params))
        return QuadSystem.from_polys(parse_poly(self.p, values), parse_poly(self.q, values))

    def samples(self, count: int = SAMPLES_PER_FAMILY) -> list[dict[str, Fraction]]:
        """The first ``count`` valid parameter assignments from a fixed grid."""
        if not self.params:
            return [{}]
        domains = []
        choice = dict(self.choices)
        for k in self.params:
            domains.append(choice.get(k, CANDIDATES))
        out = []
        for combo in sorted(product(*(range(len(d)) for d in domains)), key=lambda ix: (sum(ix), ix)):
            values = {k: domains[i][j] for i, (k, j) in enumerate(zip(self.params, combo))}
            try:
                self.validate(values)
            except ConstraintViolation:
                continue
            out.append(values)
            if len(out) == count:
                break
        return out

    def text(self) -> str:
        return f"x' = {self.p} ; y' = {self.q}"


def _fam(name, params, p, q, *nonzero, choices=(), fixed=()):
    return FamilySpec(name, tuple(params), p, q, tuple(nonzero),
                      tuple((k, tuple(Fraction(v) for v in vs)) for k, vs in choices),
                      tuple((k, Fraction(v)) for k, v in fixed))


# ---------------------------------------------------------------------- normal forms by behavior at infinity

NORMAL_FORMS: dict[str, FamilySpec] = {
    "S_I": _fam("S_I", "kcdghlef", "k+c*x+d*y+g*x^2+(h-1)*x*y", "l+e*x+f*y+(g-1)*x*y+h*y^2"),
    "S_II": _fam("S_II", "kcdghlef", "k+c*x+d*y+g*x^2+(h+1)*x*y", "l+e*x+f*y-x^2+g*x*y+h*y^2"),
    "S_III": _fam("S_III", "kcdghlef", "k+c*x+d*y+g*x^2+h*x*y", "l+e*x+f*y+(g-1)*x*y+h*y^2"),
    "S_IV": _fam("S_IV", "kcdghlef", "k+c*x+d*y+g*x^2+h*x*y", "l+e*x+f*y-x^2+g*x*y+h*y^2"),
    "S_V": _fam("S_V", "kcdlef", "k+c*x+d*y+x^2", "l+e*x+f*y+x*y"),
}
# Divisor case realized by each normal form.
NORMAL_FORM_CASE = {"S_I": 1, "S_II": 2, "S_III": 3, "S_IV": 4, "S_V": 5}


# ---------------------------------------------------------------------- orbit representatives

_R1 = ("b*l*(b+l-1)", "(b-1)*(l-1)*(b+l)")
_R2 = ("b*(b+1)*(l^2+(b-1)^2)",)
PM1 = (("l", ("-1", "1")),)

REPRESENTATIVES: dict[int, FamilySpec] = {int(f.family[2:]): f for f in (
    _fam("4.1", "bl", "l*x+l*x^2+(b-1)*x*y", "-b*y+(l-1)*x*y+b*y^2", *_R1),
    # The linear x-coefficient of the second equation carries a stray h; read as b.
    _fam("4.2", "bl", "l*x^2+(b+1)*x*y", "b*(l^2+(b+1)^2)+2*l*b*y+(l^2+1-b^2)*x-x^2+l*x*y+b*y^2", *_R2),
    _fam("4.3", "bl", "x+l*x^2+(b-1)*x*y", "y+(l-1)*x*y+b*y^2", *_R1),
    _fam("4.4", "l", "x+l*x^2-x*y", "y+(l-1)*x*y", "l*(l-1)"),
    _fam("4.5", "bl", "l*x^2+(b-1)*x*y", "(l-1)*x*y+b*y^2", *_R1),
    _fam("4.6", "bl", "l*x^2+(b+1)*x*y", "-1+l*x+(b-1)*y-x^2+l*x*y+b*y^2", *_R2),
    _fam("4.7", "l", "l*x^2+x*y", "-1+l*x-y-x^2+l*x*y"),
    _fam("4.8", "bl", "l*x^2+(b+1)*x*y", "-x^2+l*x*y+b*y^2", *_R2),
    _fam("4.9", "bl", "l*(x^2-1)", "(y+b)*(y+(l-1)*x-b)", "l*(l-1)", "(l-1)^2-4*b^2", "(l+1)^2-4*b^2"),
    _fam("4.10", "l", "(2*l+1)*(x^2-1)", "(y+l)*(y+2*l*x-l)", "l*(2*l+1)"),
    _fam("4.11", "l", "x^2+x*y", "(y+l)^2-1", "l^2-1"),
    # 12, 15: H6 != 0 in the row conditions also needs the second inequality.
    _fam("4.12", "bl", "l*((x+b)^2-1)", "(l-1)*x*y", "l*(l-1)*(b^2-1)", "(l+1)^2-(l-1)^2*b^2"),
    _fam("4.13", "bl", "l*(x^2+1)", "(y+b)*(y+(l-1)*x-b)", "l*(l-1)"),
    _fam("4.14", "l", "x^2+x*y", "(y+l)^2+1"),
    _fam("4.15", "bl", "l*((x+b)^2+1)", "(l-1)*x*y", "l*(l-1)", "(l+1)^2+(l-1)^2*b^2"),
    _fam("4.16", "l", "l+x", "y*(y-x)", "l*(l-1)"),
    _fam("4.17", "", "x", "y*(y-x)"),
    _fam("4.18", "l", "l*(l+1)+l*x+y", "y*(y-x)", "l*(l+1)"),
    _fam("4.19", "l", "l+x", "-x*y", "l*(l-1)"),
    _fam("4.20", "l", "l*x^2+x*y", "(l-1)*x*y+y^2", "l*(l-1)"),
    _fam("4.21", "l", "l*x^2+x*y", "(y+1)*(l*x-x+y)", "l*(l-1)"),
    _fam("4.22", "l", "l*x^2", "(y+1)*(y+(l-1)*x-1)", "l*(l-1)"),
    _fam("4.23", "", "x^2+x*y", "(y+1)^2"),
    _fam("4.24", "l", "l*(x+1)^2", "(l-1)*x*y", "l*(l-1)"),
    _fam("4.25", "l", "l*x^2+x*y", "y+(l-1)*x*y+y^2", "l*(l-1)"),
    _fam("4.26", "", "x*y", "(y+1)*(y-x)"),
    _fam("4.27", "l", "2*l*x+2*y", "l^2+1-x^2-y^2"),
    _fam("4.28", "l", "x^2-1", "x+l*y", "l*(l^2-4)"),
    _fam("4.29", "l", "x^2-1", "l+x", "l^2-1"),
    _fam("4.30", "l", "(1+x)*(1+l*x)", "1+(l-1)*x*y", "l*(l^2-1)"),
    _fam("4.31", "l", "x+x^2", "l-x^2+x*y", "l*(l+1)"),
    _fam("4.32", "l", "x^2+1", "x+l*y", "l"),
    _fam("4.33", "l", "x^2+1", "l+x"),
    _fam("4.34", "l", "l", "y*(y-x)", choices=PM1),
    _fam("4.35", "l", "l+y", "-x*y", "l"),
    _fam("4.36", "l", "l", "-x*y", choices=PM1),
    _fam("4.37", "bl", "l+x", "b*y-x^2", "b*(b^2-1)", choices=(("l", ("0", "1")),)),
    _fam("4.38", "bl", "l+x", "b-x^2", "b-l^2", choices=(("l", ("0", "1")),)),
    _fam("4.39", "", "x^2", "x+y"),
    _fam("4.40", "", "1+x", "1-x*y"),
    # 41, 42, 45: the printed l*x*y in the second equation is l*y^2 (it is what the
    # perturbed families reduce to at e = 0, and l*x*y would make the system degenerate).
    _fam("4.41", "l", "l*x*y", "y-x^2+l*y^2", choices=PM1),
    _fam("4.42", "l", "l*x*y", "-x^2+l*y^2", choices=PM1),
    _fam("4.43", "l", "l*x^2", "1+(l-1)*x*y", "l*(l^2-1)"),
    _fam("4.44", "l", "x^2", "l-x^2+x*y", choices=PM1),
    _fam("4.45", "l", "l*x*y", "x-x^2+l*y^2", choices=PM1),
    _fam("4.46", "", "1", "y-x^2"),
)}


def representative(config: int, params: Mapping | None = None) -> QuadSystem:
    try:
        spec = REPRESENTATIVES[int(config)]
    except (KeyError, ValueError):
        raise InputError(f"no configuration 4.{config}; expected 1..46") from None
    return spec.build(params)


def representative_samples(config: int) -> list[dict[str, Fraction]]:
    return REPRESENTATIVES[config].samples()


def all_representative_instances():
    """(config, params, system) for every family and every sample."""
    for k, spec in REPRESENTATIVES.items():
        for values in spec.samples():
            yield k, values, spec.build(values)


# ---------------------------------------------------------------------- perturbations

@dataclass(frozen=True)
class Perturbation:
    """A one-parameter family S_e tending to a representative, with its invariant lines.

    Each entry of ``lines`` is a polynomial in x, y (and parameters, e) whose
    linear factors are listed lines; quadratic entries stand for a pair of lines.
    """

    family: FamilySpec
    lines: tuple[str, ...]

    @property
    def config(self) -> int:
        return int(self.family.family[2:-1])

    def line_polys(self, params: Mapping, variables=XY) -> list[MPoly]:
        return [parse_poly(s, params, variables) for s in self.lines]


def _pert(config, params, p, q, lines, *nonzero, choices=(), fixed=()):
    fam = _fam(f"4.{config}e", params, p, q, *nonzero, choices=choices, fixed=fixed)
    return Perturbation(fam, tuple(lines))


# Entries differing from the printed table, each forced by requiring the listed lines to
# be invariant (every other coefficient kept):
#   18: the third line has slope factor 1 + l e (printed 1 - l e);
#   35: the x term inside the bracket of p is l e^2 x (printed l e x);
#   38: the e^3 coefficient of the x^2 terms is -b (printed +b), in p and in the line pair;
#   45: the x coefficient of p is 2e(e^2 - l)/l (printed e(e^2 - l)/l);
#   46: the free parameter l is 1, the only value keeping e x + e^2 y + 1 = 0 invariant.
PERTURBATIONS: dict[int, Perturbation] = {pt.config: pt for pt in (
    _pert(16, "l", "(l+x)*(e*x+1)", "y*(y-x)", ["y", "x+l", "e*x+1"], "l*(l-1)"),
    _pert(17, "", "x*(e*x+1)", "y*(y-x)", ["y", "x", "e*x+1"]),
    _pert(18, "l", "(l^2+l+l*x+y)*(e*x+1)", "y*(y-x)-e*y*(l*(l+1)*(e+1)+1-y)",
          ["y", "e*x+1", "y-x*(1+l*e)-(l+1)*(l*e+1)"], "l*(l+1)"),
    _pert(19, "l", "(l+x)*(e*x+1)", "-x*y", ["y", "x+l", "e*x+1"], "l*(l-1)"),
    _pert(20, "l", "l*x^2+(e+1)*x*y", "(l-1)*x*y+y^2", ["x", "y", "x+e*y"], "l*(l-1)"),
    _pert(21, "l", "e*x+l*x^2+(e+1)*x*y", "(y+1)*(l*x-x+y)", ["x", "y+1", "x+e*y+e"], "l*(l-1)"),
    _pert(22, "l", "l*(x^2-e^2)", "(y+1)*(y+(l-1)*x-1)", ["y+1", "x-e", "x+e"], "l*(l-1)"),
    _pert(23, "", "x^2+x*y", "(y+l)^2-e^2", ["x", "y+l-e", "y+l+e"], fixed=(("l", 1),)),
    _pert(24, "l", "l*(x+1)^2-l*e^2", "(l-1)*x*y", ["y", "x+1-e", "x+1+e"], "l*(l-1)"),
    _pert(25, "l", "e*l*x+l*x^2+(e+1)*x*y", "y+(l-1)*x*y+y^2", ["x", "y", "x+e*y+e"], "l*(l-1)"),
    _pert(26, "", "e*x+(e+1)*x*y", "(y+1)*(y-x)", ["x", "y+1", "x+e*y+e"]),
    _pert(27, "l", "2*(1-2*e)*(l*x+y)*(1+e*x)",
          "l^2+1+2*(l^2+1)*e*x+(1-2*e)*(-x^2+2*l*e*x*y-(1-2*e)*y^2)",
          ["e*x+1", "((1-2*e)*x-1)^2+((1-2*e)*y+l)^2"]),
    _pert(28, "l", "x^2-1", "(x+l*y)*(1+e*y)", ["x-1", "x+1", "e*y+1"], "l*(l^2-4)"),
    _pert(29, "l", "x^2-1", "(l+x)*(1+e*y)", ["x-1", "x+1", "e*y+1"], "l^2-1"),
    _pert(30, "l", "(1+x)*(1+l*x)-e", "1+(l-1)*x*y-e*y^2", ["x+e*y+1", "l*x^2+(l+1)*x+1-e"], "l*(l^2-1)"),
    _pert(31, "l", "-l*e+(1+e)*x+(1+e)*x^2", "l-x^2+x*y", ["x+e*y+1+e", "(1+e)*x^2+(1+e)*x-l*e"], "l*(l+1)"),
    _pert(32, "l", "x^2+1", "(x+l*y)*(1+e*y)", ["x^2+1", "e*y+1"], "l"),
    _pert(33, "l", "x^2+1", "(l+x)*(1+e*y)", ["x^2+1", "e*y+1"]),
    _pert(34, "l", "l*(1-e^2*x^2)", "y*(y-x)", ["y", "e*x-1", "e*x+1"], choices=PM1),
    _pert(35, "l", "(e*x+1)*((e+1)*(y+l)+l*e^2*x)", "l*e^2*y+(l*e^3-1)*x*y+e^2*y^2",
          ["y", "e*x+1", "e^2*(x+e*y)+e+1"], "l"),
    _pert(36, "l", "l*(1-e^2*x^2)", "-x*y", ["y", "e*x-1", "e*x+1"], choices=PM1),
    _pert(37, "bl", "l+x+e*(2-l*e)*x^2", "b*y-x^2+e*(1+b-2*l*e)*x*y+e^2*(b-l*e)*y^2",
          ["e*x+e^2*y+1", "e*(2-l*e)*x^2+x+l"], "b*(b^2-1)", choices=(("l", ("0", "1")),)),
    _pert(38, "bl", "l+x+e*(2-l*e-b*e^2)*x^2", "b-x^2+e*(1-2*l*e-2*b*e^2)*x*y-e^3*(l+b*e)*y^2",
          ["e*x+e^2*y+1", "e*(2-l*e-b*e^2)*x^2+x+l"], "b-l^2", choices=(("l", ("0", "1")),)),
    _pert(39, "", "x^2-e^2", "(x+l*y)*(1+e*y)", ["x-e", "x+e", "e*y+1"], fixed=(("l", 1),)),
    _pert(40, "", "(1+x)*(1+e*x)-e", "1+(e-1)*x*y-e*y^2", ["x+e*y+1", "e*x^2+(e+1)*x+1-e"]),
    _pert(41, "l", "l*e*x^2/2+l*x*y", "e^2+2*e*x+(1+2*l*e^2)*y-x^2+2*l*e*x*y+l*(1+l*e^2)*y^2",
          ["x", "2*x+l*e*y+e", "x-2*l*e*y-2*e"], choices=PM1),
    _pert(42, "l", "e*x^2/2+l*x*y", "-x^2+2*e*x*y+(l+e^2)*y^2", ["x", "2*x+e*y", "x-2*e*y"], choices=PM1),
    _pert(43, "l", "l*(x^2-e^2)", "1+(l-1)*x*y-l*e^2*y^2", ["x-e", "x+e", "x+l*e^2*y"], "l*(l^2-1)"),
    _pert(44, "l", "-l*e+e*(1+e)*x+(1+e)*x^2", "l-x^2+x*y",
          ["x+e*y+e*(1+e)", "(1+e)*x^2+e*(1+e)*x-l*e"], choices=PM1),
    _pert(45, "l", "2*e*(e^2-l)*x/l+e*x^2+l*x*y", "x+e*(2*e^2-l)*y/l-x^2-2*e*x*y+(l-2*e^2)*y^2",
          ["x", "x+e*y", "x+2*e*y-2*e^2/l"], choices=PM1),
    _pert(46, "", "1+e*x+e*x^2", "y-x^2+e*(1-e)*x*y+e^2*(l-e)*y^2",
          ["e*x+e^2*y+1", "e*x^2+e*x+1"], fixed=(("l", 1),)),
)}


def perturbation(config: int) -> Perturbation:
    try:
        return PERTURBATIONS[int(config)]
    except (KeyError, ValueError):
        raise NoPerturbation(f"configuration 4.{config} has no perturbation entry (only 4.16 to 4.46 do)") from None


def _values_with_fixed(spec: FamilySpec, params) -> dict[str, Fraction]:
    values = _as_values(params)
    for k, v in spec.fixed:
        values.setdefault(k, v)
    return values


def perturbed(config: int, params: Mapping | None, epsilon) -> tuple[QuadSystem, list[Line]]:
    """The perturbed system at e = epsilon and its listed invariant lines."""
    pt = perturbation(config)
    eps = Fraction(epsilon)
    if eps == 0:
        raise InputError("epsilon must be nonzero")
    values = _values_with_fixed(pt.family, params)
    values["e"] = eps
    S = pt.family.build(values)
    lines: list[Line] = []
    for f in pt.line_polys(values):
        lines.extend(linear_factors(f))
    return S, lines


def perturbation_system_in_e(config: int, params: Mapping | None) -> tuple[MPoly, MPoly]:
    """p and q as polynomials in (x, y, e)."""
    pt = perturbation(config)
    values = pt.family.validate(_values_with_fixed(pt.family, params))
    ring = ("x", "y", "e")
    return parse_poly(pt.family.p, values, ring), parse_poly(pt.family.q, values, ring)


def limit_lines(config: int, params: Mapping | None) -> list[Line]:
    """Projective limits as e -> 0 of the listed lines (the line at infinity included).

    For every listed polynomial F(x, y, e), homogenize in Z, divide by the lowest power
    of e and set e = 0; the limit's linear factors (Z among them) are the limit lines.
    """
    pt = perturbation(config)
    values = pt.family.validate(_values_with_fixed(pt.family, params))
    ring = ("x", "y", "Z", "e")
    out: list[Line] = []
    for text in pt.lines:
        F = parse_poly(text, values, ("x", "y", "e"))
        n = max((i + j for i, j, _ in F.terms), default=0)
        F = _homogenize_xy(F, n)
        low = F.min_degree("e")
        G = MPoly({e[:3]: c for e, c in F.terms.items() if e[3] == low}, ring[:3])
        out.extend(_projective_lines(G, n))
    return sorted(out, key=Line.sort_key)


def _homogenize_xy(F: MPoly, n: int) -> MPoly:
    terms = {}
    for (i, j, k), c in F.terms.items():
        terms[(i, j, n - i - j, k)] = c
    return MPoly(terms, ("x", "y", "Z", "e"))


def _projective_lines(G: MPoly, n: int) -> list[Line]:
    """Linear factors, with repetition, of a form of degree n in (x, y, Z)."""
    out = []
    iz = 2
    m = G.min_degree("Z")
    out.extend([Line.infinity()] * m)
    rest = MPoly({e[:iz] + (e[iz] - m,): c for e, c in G.terms.items()}, G.vars)
    h = substitute(rest, {"x": MPoly.var("x", XY), "y": MPoly.var("y", XY), "Z": MPoly.const(Fraction(1), XY)}, vars=XY)
    remaining = rest.renamed(("X", "Y", "Z"))
    for line in linear_factors(h):
        k, remaining = _exponent(remaining, line.projective())
        out.extend([line] * k)
    if len(out) != n:
        raise ValueError(f"limit of a listed line does not split: {G}")
    return out


# ---------------------------------------------------------------------- affine group

@dataclass(frozen=True)
class AffineMap:
    """x~ = A x + b together with the time rescale t~ = t / lam (lam > 0).

    The action on vector fields is F~(x~) = lam * A * F(A^{-1}(x~ - b)).
    """

    A: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    b: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    lam: Fraction = Fraction(1)

    def __post_init__(self):
        A = tuple(tuple(Fraction(v) for v in row) for row in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(Fraction(v) for v in self.b))
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.det == 0:
            raise InputError("affine map is not invertible")
        if self.lam <= 0:
            raise InputError("time rescale must be positive")

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.A
        return a * d - b * c

    def inverse_matrix(self):
        (a, b), (c, d) = self.A
        D = self.det
        return ((d / D, -b / D), (-c / D, a / D))

    def compose(self, first: "AffineMap") -> "AffineMap":
        """self o first: apply ``first``, then ``self``."""
        (a, b), (c, d) = self.A
        (p, q), (r, s) = first.A
        A = ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))
        t = (a * first.b[0] + b * first.b[1] + self.b[0], c * first.b[0] + d * first.b[1] + self.b[1])
        return AffineMap(A, t, self.lam * first.lam)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def scaling(cls, gamma, s: int) -> "AffineMap":
        """x = gamma^s x1, y = gamma^s y1, t = gamma^-s t1."""
        g = Fraction(gamma) ** (-s)
        return cls(((g, 0), (0, g)), (0, 0), g)


def apply_group(S: QuadSystem, g: AffineMap) -> QuadSystem:
    x, y = MPoly.gens(XY)
    (i11, i12), (i21, i22) = g.inverse_matrix()
    u, v = x - g.b[0], y - g.b[1]
    back = {"x": u * i11 + v * i12, "y": u * i21 + v * i22}
    P = substitute(S.p, back, vars=XY)
    Q = substitute(S.q, back, vars=XY)
    (a, b), (c, d) = g.A
    return QuadSystem.from_polys((P * a + Q * b) * g.lam, (P * c + Q * d) * g.lam)


def random_affine_map(rng: random.Random, size: int = 5) -> AffineMap:
    def r():
        return Fraction(rng.randint(-size, size), rng.randint(1, 3))

    while True:
        A = ((r(), r()), (r(), r()))
        if A[0][0] * A[1][1] - A[0][1] * A[1][0] != 0:
            break
    lam = Fraction(rng.randint(1, size), rng.randint(1, 3))
    return AffineMap(A, (r(), r()), lam)
