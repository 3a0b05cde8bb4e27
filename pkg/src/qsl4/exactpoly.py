"""Exact sparse multivariate polynomials and the invariant-theory toolkit.

Coefficients are usually :class:`fractions.Fraction`, but the arithmetic is
generic: any field-like scalar supporting ``+ - * /`` and ``== 0`` works
(the quadratic-extension scalars of :mod:`qsl4.scalars` rely on this).
Terms are stored as ``{exponent_tuple: coefficient}`` with no zero entries.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Mapping

from .errors import DegenerateInput, InexactDivision

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and 'num/den' strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _is_zero(c) -> bool:
    return c == 0


def _grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class MPoly:
    """Immutable sparse polynomial over an ordered tuple of variable names."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: Iterable[str] = ("x", "y")):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if not _is_zero(c):
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # ------------------------------------------------------------------ constructors
    @classmethod
    def const(cls, c, vars=("x", "y")) -> "MPoly":
        return cls({(0,) * len(tuple(vars)): c}, vars)

    @classmethod
    def var(cls, name: str, vars=("x", "y")) -> "MPoly":
        vars = tuple(vars)
        if name not in vars:
            vars = vars + (name,)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls({tuple(e): Fraction(1)}, vars)

    @classmethod
    def gens(cls, vars) -> tuple["MPoly", ...]:
        vars = tuple(vars)
        return tuple(cls.var(v, vars) for v in vars)

    # ------------------------------------------------------------------ ring plumbing
    def in_vars(self, vars) -> "MPoly":
        """Re-embed into a variable list containing every variable actually used."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append(vars.index(v))
            else:
                pos.append(None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.vars[i]} not available in {vars}")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return MPoly(out, vars)

    def _unify(self, other) -> tuple["MPoly", "MPoly"]:
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)) or hasattr(other, "_scalar_tag"):
                return self, MPoly.const(other, self.vars)
            return NotImplemented, NotImplemented
        if other.vars == self.vars:
            return self, other
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.in_vars(merged), other.in_vars(merged)

    def used_vars(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return tuple(v for i, v in enumerate(self.vars) if i in used)

    # ------------------------------------------------------------------ arithmetic
    def __add__(self, other):
        a, b = self._unify(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if _is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(out, a.vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._unify(other)
        if a is NotImplemented:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        a, b = self._unify(other)
        if a is NotImplemented:
            return NotImplemented
        if len(b.terms) == 1 and not any(next(iter(b.terms))):
            c = next(iter(b.terms.values()))
            return MPoly({e: v * c for e, v in a.terms.items()}, a.vars)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                out[e] = s
        return MPoly(out, a.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = MPoly.const(Fraction(1), self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial."""
        if isinstance(other, MPoly):
            return exact_div(self, other)
        if _is_zero(other):
            raise ZeroDivisionError("division of polynomial by zero scalar")
        if isinstance(other, int):
            other = Fraction(other)
        return MPoly({e: c / other for e, c in self.terms.items()}, self.vars)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                a, b = self._unify(other)
                return a.terms == b.terms
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)) or hasattr(other, "_scalar_tag"):
            if _is_zero(other):
                return not self.terms
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            used = self.used_vars()
            p = self.in_vars(used) if used != self.vars else self
            self._hash = hash((used, frozenset(p.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # ------------------------------------------------------------------ inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in one variable; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        """Order of vanishing in one variable (the largest k with var^k | self)."""
        if not self.terms:
            return 0
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coeff(self, exp: tuple):
        return self.terms.get(tuple(exp), Fraction(0))

    def coeff_of(self, **powers) -> object:
        e = tuple(powers.get(v, 0) for v in self.vars)
        return self.coeff(e)

    def coeffs_in(self, var: str) -> dict[int, "MPoly"]:
        """Split as sum_k c_k * var^k; the c_k stay in the same ring."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            buckets.setdefault(k, {})[ne] = c
        return {k: MPoly(t, self.vars) for k, t in buckets.items()}

    def scalar_coeffs(self):
        return list(self.terms.values())

    # ------------------------------------------------------------------ calculus / substitution
    def diff(self, var: str, k: int = 1) -> "MPoly":
        if k == 0:
            return self
        if var not in self.vars:
            return MPoly({}, self.vars)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = 1
                for j in range(k):
                    f *= e[i] - j
                ne = e[:i] + (e[i] - k,) + e[i + 1:]
                out[ne] = c * f
        return MPoly(out, self.vars)

    def subs(self, assignment: Mapping[str, object]) -> "MPoly":
        return substitute(self, assignment)

    def evaluate(self, point: Mapping[str, object]):
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(self.vars, e):
                if k:
                    t = t * point[v] ** k
            total = total + t
        return total

    def renamed(self, names) -> "MPoly":
        names = tuple(names)
        if len(names) != len(self.vars):
            raise ValueError("rename needs one name per variable")
        return MPoly(self.terms, names)

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly({e: fn(c) for e, c in self.terms.items()}, self.vars)

    # ------------------------------------------------------------------ display
    def __repr__(self):
        return f"MPoly({self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            cs = _scalar_str(c)
            if mono:
                if cs == "1":
                    term = mono
                elif cs == "-1":
                    term = "-" + mono
                elif _needs_parens(c, cs):
                    term = f"({cs})*{mono}"
                else:
                    term = f"{cs}*{mono}"
            else:
                term = cs if not _needs_parens(c, cs) or len(self.terms) == 1 else f"({cs})"
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _scalar_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def _needs_parens(c, s: str) -> bool:
    return not isinstance(c, (int, Fraction)) and ("+" in s[1:] or "-" in s[1:])


# ---------------------------------------------------------------------- division & gcd

def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """Exact polynomial division; raises InexactDivision when g does not divide f."""
    q, r = divmod_poly(f, g)
    if r.terms:
        raise InexactDivision(f"{g} does not divide {f}")
    return q


def divmod_poly(f: MPoly, g: MPoly) -> tuple[MPoly, MPoly]:
    """Multivariate division by a single divisor under graded-lex order."""
    f, g = f._unify(g)
    if not g.terms:
        raise ZeroDivisionError("polynomial division by zero")
    ge, gc = g.leading()
    g_terms = list(g.terms.items())
    rem = dict(f.terms)
    quo: dict = {}
    remainder: dict = {}
    while rem:
        e = max(rem, key=_grlex_key)
        c = rem[e]
        if all(a >= b for a, b in zip(e, ge)):
            qe = tuple(a - b for a, b in zip(e, ge))
            qc = c / gc
            quo[qe] = quo.get(qe, 0) + qc
            for te, tc in g_terms:
                ne = tuple(a + b for a, b in zip(te, qe))
                s = rem.get(ne, 0) - qc * tc
                if _is_zero(s):
                    rem.pop(ne, None)
                else:
                    rem[ne] = s
        else:
            remainder[e] = c
            del rem[e]
    return MPoly(quo, f.vars), MPoly(remainder, f.vars)


def divides(g: MPoly, f: MPoly) -> bool:
    return not divmod_poly(f, g)[1].terms


def rational_content(f: MPoly) -> Fraction:
    """Positive rational c with f/c having coprime integer coefficients."""
    if not f.terms:
        return Fraction(0)
    nums = [abs(c.numerator) for c in f.terms.values()]
    dens = [c.denominator for c in f.terms.values()]
    g = 0
    for n in nums:
        g = gcd(g, n)
    l = 1
    for d in dens:
        l = lcm(l, d)
    return Fraction(g, l)


def normalize(f: MPoly) -> MPoly:
    """Primitive integer form with positive leading coefficient (grlex)."""
    if not f.terms:
        return f
    if not all(isinstance(c, Fraction) for c in f.terms.values()):
        _, lc = f.leading()
        return f / lc
    c = rational_content(f)
    _, lc = f.leading()
    if lc < 0:
        c = -c
    return f / c


def prem(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Pseudo-remainder of f by g with respect to var."""
    f, g = f._unify(g)
    n, m = f.degree(var), g.degree(var)
    if m < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if n < m:
        return f
    gc = g.coeffs_in(var)
    lg = gc[m]
    x = MPoly.var(var, f.vars)
    r = f
    delta = n - m + 1
    while r.terms and r.degree(var) >= m:
        d = r.degree(var)
        lr = r.coeffs_in(var)[d]
        r = lg * r - lr * (x ** (d - m)) * g
        delta -= 1
    if delta > 0:
        r = r * (lg ** delta)
    return r


def content_in(f: MPoly, var: str) -> MPoly:
    coeffs = list(f.coeffs_in(var).values())
    g = MPoly({}, f.vars)
    for c in coeffs:
        g = mgcd(g, c)
        if g.is_const():
            return MPoly.const(Fraction(1), f.vars)
    return g


def mgcd(f: MPoly, g: MPoly) -> MPoly:
    """Primitive gcd with positive leading coefficient (rational coefficients)."""
    f, g = f._unify(g)
    if not f.terms:
        return normalize(g)
    if not g.terms:
        return normalize(f)
    if f.is_const() or g.is_const():
        return MPoly.const(Fraction(1), f.vars)
    var = None
    for v in f.vars:
        if f.degree(v) > 0 or g.degree(v) > 0:
            var = v
            break
    if f.degree(var) == 0:
        return mgcd(f, content_in(g, var))
    if g.degree(var) == 0:
        return mgcd(content_in(f, var), g)
    cf, cg = content_in(f, var), content_in(g, var)
    pf, pg = exact_div(f, cf), exact_div(g, cg)
    c = mgcd(cf, cg)
    a, b = (pf, pg) if pf.degree(var) >= pg.degree(var) else (pg, pf)
    while True:
        r = prem(a, b, var)
        if not r.terms:
            h = b
            break
        if r.degree(var) == 0:
            h = MPoly.const(Fraction(1), f.vars)
            break
        a, b = b, primitive_part(r, var)
    h = primitive_part(h, var)
    return normalize(c * h)


def primitive_part(f: MPoly, var: str) -> MPoly:
    if not f.terms:
        return f
    return normalize(exact_div(f, content_in(f, var)))


# ---------------------------------------------------------------------- resultants

def determinant(matrix: list[list]) -> object:
    """Fraction-free Bareiss determinant; entries are MPoly or scalars."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in matrix]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if _entry_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _entry_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _zero_like(m[0][0])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                if isinstance(num, MPoly):
                    m[i][j] = exact_div(num, prev) if isinstance(prev, MPoly) else num / prev
                else:
                    m[i][j] = num / prev
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def _entry_zero(e) -> bool:
    if isinstance(e, MPoly):
        return not e.terms
    return e == 0


def _zero_like(e):
    if isinstance(e, MPoly):
        return MPoly({}, e.vars)
    return Fraction(0)


def sylvester_matrix(f: MPoly, g: MPoly, var: str, degrees=None) -> list[list[MPoly]]:
    f, g = f._unify(g)
    n, m = degrees if degrees else (f.degree(var), g.degree(var))
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    zero = MPoly({}, f.vars)
    size = n + m
    rows = []
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = gc.get(k, zero)
        rows.append(row)
    return rows


def sylvester_resultant(f: MPoly, g: MPoly, var: str, degrees=None) -> MPoly:
    """Res_var(f, g) as the Sylvester determinant.

    ``degrees`` overrides the actual degrees with formal ones, as needed for
    resultants of binary forms whose leading coefficients may vanish.
    """
    f, g = f._unify(g)
    if degrees is None:
        if f.degree(var) <= 0 or g.degree(var) <= 0:
            raise DegenerateInput(f"resultant needs positive degree in {var}")
    elif f.degree(var) > degrees[0] or g.degree(var) > degrees[1]:
        raise ValueError("formal degree below actual degree")
    d = determinant(sylvester_matrix(f, g, var, degrees))
    return d if isinstance(d, MPoly) else MPoly.const(d, f.vars)


# ---------------------------------------------------------------------- invariant theory

def transvectant(f: MPoly, g: MPoly, k: int, x: str = "x", y: str = "y") -> MPoly:
    """Index-k transvectant of two binary polynomials."""
    if k < 0:
        raise ValueError("transvectant index must be non-negative")
    f, g = f._unify(g)
    total = MPoly({}, f.vars)
    for h in range(k + 1):
        a = f.diff(x, k - h).diff(y, h)
        if not a.terms:
            continue
        b = g.diff(x, h).diff(y, k - h)
        if not b.terms:
            continue
        term = a * b * comb(k, h)
        total = total - term if h % 2 else total + term
    return total


def jacobian(f: MPoly, g: MPoly, x: str = "x", y: str = "y") -> MPoly:
    return f.diff(x) * g.diff(y) - f.diff(y) * g.diff(x)


def hessian(f: MPoly, x: str = "x", y: str = "y") -> MPoly:
    return f.diff(x, 2) * f.diff(y, 2) - f.diff(x).diff(y) ** 2


def partials(f: MPoly, x: str = "x", y: str = "y") -> tuple[MPoly, MPoly]:
    return f.diff(x), f.diff(y)


def calculus(f: MPoly, x: str = "x", y: str = "y") -> dict:
    return {"hessian": hessian(f, x, y), "partials": list(partials(f, x, y))}


# The binary quadratic discriminant is scaled so that it equals -(f,f)^(2).
QUADRATIC_DISC_SCALE = 2


def binary_discriminant(f: MPoly, x: str = "x", y: str = "y"):
    """Discriminant of a binary quadratic or cubic form (0 form gives 0)."""
    if f.used_vars() and not set(f.used_vars()) <= {x, y}:
        raise ValueError("binary form must involve only the two designated variables")
    if not f.terms:
        return Fraction(0)
    if not f.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    d = f.degree()
    xi, yi = f.vars.index(x) if x in f.vars else None, f.vars.index(y) if y in f.vars else None

    def c(i, j):
        e = [0] * len(f.vars)
        if i:
            e[xi] = i
        if j:
            e[yi] = j
        return f.coeff(tuple(e))

    if d == 2:
        A, B, C = c(2, 0), c(1, 1), c(0, 2)
        return QUADRATIC_DISC_SCALE * (B * B - 4 * A * C)
    if d == 3:
        a, b, cc, dd = c(3, 0), c(2, 1), c(1, 2), c(0, 3)
        return 18 * a * b * cc * dd - 4 * b ** 3 * dd + b * b * cc * cc - 4 * a * cc ** 3 - 27 * a * a * dd * dd
    raise ValueError(f"binary_discriminant expects degree 2 or 3, got {d}")


# ---------------------------------------------------------------------- substitution

def substitute(f: MPoly, assignment: Mapping[str, object], vars=None) -> MPoly:
    """Compose f with the given images of its variables.

    Variables absent from ``assignment`` map to themselves.  The result lives
    in ``vars`` when given, otherwise in the union of the images' variables.
    """
    images = {}
    for v in f.vars:
        img = assignment.get(v, None)
        if img is None:
            img = MPoly.var(v, (v,))
        elif not isinstance(img, MPoly):
            img = MPoly.const(img, ())
        images[v] = img
    if vars is None:
        out_vars: list[str] = []
        for v in f.vars:
            for w in images[v].vars:
                if w not in out_vars:
                    out_vars.append(w)
        vars = tuple(out_vars)
    vars = tuple(vars)
    images = {v: p.in_vars(vars) for v, p in images.items()}
    powers: dict[tuple[str, int], MPoly] = {}

    def pw(v, k):
        key = (v, k)
        if key not in powers:
            powers[key] = images[v] ** k
        return powers[key]

    total = MPoly({}, vars)
    for e, c in f.terms.items():
        t = MPoly.const(c, vars)
        for v, k in zip(f.vars, e):
            if k:
                t = t * pw(v, k)
        total = total + t
    return total


def homogenize(f: MPoly, degree: int, names=("X", "Y", "Z"), from_vars=("x", "y")) -> MPoly:
    """Z^degree * f(X/Z, Y/Z) for f in from_vars."""
    if f.terms and f.degree() > degree:
        raise ValueError("homogenization degree below total degree")
    fx = f.in_vars(from_vars)
    out = {}
    for e, c in fx.terms.items():
        out[tuple(e) + (degree - sum(e),)] = c
    return MPoly(out, tuple(names))


def dehomogenize(F: MPoly, var: str = "Z", to_vars=("x", "y")) -> MPoly:
    """Set var = 1 and rename the remaining variables to to_vars."""
    i = F.vars.index(var)
    rest = [v for v in F.vars if v != var]
    out: dict = {}
    for e, c in F.terms.items():
        ne = e[:i] + e[i + 1:]
        out[ne] = out.get(ne, 0) + c
    return MPoly(out, tuple(rest)).in_vars(tuple(rest)).renamed(to_vars)


def rename(f: MPoly, mapping: Mapping[str, str]) -> MPoly:
    return MPoly(f.terms, tuple(mapping.get(v, v) for v in f.vars))
