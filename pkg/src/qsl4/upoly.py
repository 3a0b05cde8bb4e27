"""Dense univariate polynomials over the scalar tower, with exact root extraction.

A polynomial is a list of coefficients, lowest degree first.  Roots are found in
three tiers: rational roots and rational quadratic factors are located
numerically and then confirmed by exact arithmetic (so a numeric glitch can only
cause a miss, never a wrong answer); roots over Q(sqrt d) are read off the
rational norm polynomial; whatever is left becomes a ``NumScalar``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm, gcd

import mpmath

from .exactpoly import MPoly
from .scalars import NUMERIC_DPS, NumScalar, QuadScalar, rational_sqrt, sqrt_in_field, to_mpc


def trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: list) -> int:
    return len(trim(p)) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a, b):
    return add(a, [-c for c in b])


def mul(a, b):
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def scale(a, c):
    return trim([x * c for x in a])


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def deriv(p):
    return trim([p[i] * i for i in range(1, len(p))])


def divmod_(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lb
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] = r[i + k] - c * y
        r = trim(r[:-1])
    return trim(q), trim(r)


def monic(p):
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def gcd_(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def squarefree(p) -> list[tuple[list, int]]:
    """Yun's algorithm: [(s_i, i)] with p = lc * prod s_i^i, each s_i monic square-free."""
    p = trim(p)
    if deg(p) <= 0:
        return []
    out = []
    dp = deriv(p)
    a = gcd_(p, dp)
    b = divmod_(p, a)[0]
    c = divmod_(dp, a)[0]
    d = sub(c, deriv(b))
    i = 1
    while deg(b) > 0:
        a = gcd_(b, d)
        b, _ = divmod_(b, a)
        c, _ = divmod_(d, a)
        if deg(a) > 0:
            out.append((monic(a), i))
        d = sub(c, deriv(b))
        i += 1
    return out


def from_mpoly(f: MPoly, var: str) -> list:
    others = [v for v in f.used_vars() if v != var]
    if others:
        raise ValueError(f"not univariate in {var}: involves {others}")
    n = f.degree(var)
    out = [Fraction(0)] * (n + 1)
    i = f.vars.index(var) if var in f.vars else None
    for e, c in f.terms.items():
        out[e[i] if i is not None else 0] = c
    return trim(out)


def to_mpoly(p: list, var: str, vars=None) -> MPoly:
    vars = tuple(vars) if vars else (var,)
    i = vars.index(var)
    terms = {}
    for k, c in enumerate(p):
        e = [0] * len(vars)
        e[i] = k
        terms[tuple(e)] = c
    return MPoly(terms, vars)


# ---------------------------------------------------------------------- numeric roots

def _integer_primitive(p: list[Fraction]) -> list[int]:
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def numeric_roots(p: list, dps: int = NUMERIC_DPS) -> list:
    p = trim(p)
    if deg(p) <= 0:
        return []
    with mpmath.workdps(dps):
        coeffs = [to_mpc(c) for c in reversed(p)]
        for steps, extra in ((100, 60), (400, 200), (2000, 600)):
            try:
                return list(mpmath.polyroots(coeffs, maxsteps=steps, extraprec=extra))
            except mpmath.libmp.libhyper.NoConvergence:
                continue
        return list(mpmath.polyroots(coeffs, maxsteps=5000, extraprec=1200, error=False))


def _dps_for(ints: list[int]) -> int:
    digits = max(len(str(abs(c))) for c in ints if c) if any(ints) else 1
    return NUMERIC_DPS + 2 * digits


def rational_roots(p: list[Fraction]) -> list[Fraction]:
    """Distinct rational roots, each confirmed by exact evaluation."""
    p = trim(p)
    if deg(p) <= 0:
        return []
    ints = _integer_primitive(p)
    lead = ints[-1]
    found = []
    if ints[0] == 0:
        found.append(Fraction(0))
    sq = [s for s, _ in squarefree(p)]
    dps = _dps_for(ints)
    for s in sq:
        for r in numeric_roots(s, dps):
            with mpmath.workdps(dps):
                k = int(mpmath.nint(mpmath.re(r) * lead))
            cand = Fraction(k, lead)
            if cand not in found and evaluate(p, cand) == 0:
                found.append(cand)
    return sorted(found)


def _rational_quadratic_factor(f: list[Fraction]):
    """A monic rational quadratic dividing f, identified from a pair of numeric roots."""
    ints = _integer_primitive(f)
    lead = ints[-1]
    dps = _dps_for(ints)
    roots = numeric_roots(f, dps)
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-(dps // 3))
        for r1, r2 in combinations(roots, 2):
            s, t = r1 + r2, r1 * r2
            if abs(mpmath.im(s)) > tol * (1 + abs(s)) or abs(mpmath.im(t)) > tol * (1 + abs(t)):
                continue
            S = Fraction(int(mpmath.nint(mpmath.re(s) * lead)), lead)
            T = Fraction(int(mpmath.nint(mpmath.re(t) * lead)), lead)
            q = [T, -S, Fraction(1)]
            quo, rem = divmod_(f, q)
            if not rem:
                return q, quo
    return None


def _quadratic_roots(q: list):
    """Both roots of c0 + c1 t + c2 t^2 if they stay in the tower, else None."""
    c0, c1, c2 = q
    disc = c1 * c1 - 4 * c0 * c2
    s = sqrt_in_field(disc)
    if s is None:
        return None
    r1 = (-c1 + s) / (2 * c2)
    r2 = (-c1 - s) / (2 * c2)
    return [r1, r2]


def _all_rational(p) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in p)


def _field_of(p):
    ds = {c.d for c in p if isinstance(c, QuadScalar)}
    if any(isinstance(c, NumScalar) for c in p) or len(ds) > 1:
        return 0
    return ds.pop() if ds else None


def _roots_rational_sqfree(s: list[Fraction]) -> list:
    roots = []
    rest = list(s)
    for r in rational_roots(s):
        roots.append(r)
        rest = divmod_(rest, [-r, Fraction(1)])[0]
    while deg(rest) >= 2:
        if deg(rest) == 2:
            qr = _quadratic_roots(rest)
            roots.extend(qr)
            rest = [Fraction(1)]
            break
        found = _rational_quadratic_factor(rest)
        if found is None:
            break
        q, rest = found
        roots.extend(_quadratic_roots(q))
    if deg(rest) >= 1:
        roots.extend(NumScalar(r) for r in numeric_roots(rest))
    return roots


def _galois_poly(p):
    return [c.galois() if isinstance(c, QuadScalar) else c for c in p]


def _roots_extension_sqfree(s: list, d: int) -> list:
    norm = mul(s, _galois_poly(s))
    norm = [Fraction(c) if isinstance(c, (int, Fraction)) else c for c in norm]
    if not _all_rational(norm):  # pragma: no cover - norm of a Q(sqrt d) polynomial is rational
        return [NumScalar(r) for r in numeric_roots(s)]
    cands = []
    for n_s, _ in squarefree(norm):
        for r in _roots_rational_sqfree(n_s):
            if isinstance(r, NumScalar):
                continue
            if isinstance(r, QuadScalar) and r.d != d:
                continue
            if r not in cands:
                cands.append(r)
    roots = []
    rest = list(s)
    for r in cands:
        if deg(rest) < 1:
            break
        if evaluate(rest, r) == 0:
            roots.append(r)
            rest = divmod_(rest, [-r, Fraction(1)])[0]
    if deg(rest) >= 1:
        roots.extend(NumScalar(r) for r in numeric_roots(rest))
    return roots


def roots_with_multiplicity(p: list) -> list[tuple[object, int]]:
    """All roots of p over the tower, paired with multiplicities."""
    p = trim(p)
    if deg(p) <= 0:
        return []
    out = []
    field = _field_of(p)
    if field == 0:
        for r in numeric_roots(p):
            out.append((NumScalar(r), 1))
        return _merge_numeric(out)
    for s, k in squarefree(p):
        if field is None:
            rts = _roots_rational_sqfree(s)
        else:
            rts = _roots_extension_sqfree(s, field)
        out.extend((r, k) for r in rts)
    return out


def _merge_numeric(pairs):
    merged: list[list] = []
    for r, k in pairs:
        for m in merged:
            if m[0] == r:
                m[1] += k
                break
        else:
            merged.append([r, k])
    return [(r, k) for r, k in merged]


def distinct_roots(p: list) -> list:
    return [r for r, _ in roots_with_multiplicity(p)]


def split_rational(p: list[Fraction]) -> tuple[list[tuple[object, int]], list[tuple[list, int]]]:
    """Separate the exactly representable roots of a rational polynomial.

    Returns (roots, leftovers): roots in Q or some Q(sqrt d) with multiplicities,
    and the remaining rational factors (with multiplicities) whose roots are not
    representable exactly.
    """
    p = trim([Fraction(c) for c in p])
    roots: list[tuple[object, int]] = []
    leftovers: list[tuple[list, int]] = []
    for s, k in squarefree(p):
        rest = list(s)
        for r in rational_roots(s):
            roots.append((r, k))
            rest = divmod_(rest, [-r, Fraction(1)])[0]
        while deg(rest) >= 2:
            if deg(rest) == 2:
                roots.extend((r, k) for r in _quadratic_roots(rest))
                rest = [Fraction(1)]
                break
            found = _rational_quadratic_factor(rest)
            if found is None:
                break
            q, rest = found
            roots.extend((r, k) for r in _quadratic_roots(q))
        if deg(rest) >= 1:
            leftovers.append((monic(rest), k))
    return roots, leftovers


def common_roots(polys: list[list]) -> list:
    """Distinct common roots of several univariate polynomials.

    Exact coefficients go through a gcd; numeric ones fall back to the roots
    of the lowest-degree member filtered by the others (tolerance equality).
    """
    polys = [trim(p) for p in polys]
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("every polynomial vanishes identically")
    numeric = any(isinstance(c, NumScalar) for p in polys for c in p)
    if numeric:
        polys.sort(key=deg)
        base = polys[0]
        if deg(base) <= 0:
            return []
        out = []
        for r in numeric_roots(base):
            cand = NumScalar(r)
            if all(evaluate(p, cand) == 0 for p in polys[1:]) and cand not in out:
                out.append(cand)
        return out
    g = polys[0]
    for p in polys[1:]:
        g = gcd_(g, p)
        if deg(g) <= 0:
            return []
    return distinct_roots(g)


def sturm_count(p: list[Fraction]) -> int:
    """Number of distinct real roots of a rational polynomial (Sturm's theorem)."""
    p = trim([Fraction(c) for c in p])
    if deg(p) <= 0:
        return 0
    seq = [p, deriv(p)]
    while deg(seq[-1]) > 0:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])

    def changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def sgn(c):
        return (c > 0) - (c < 0)

    at_minus = [sgn(q[-1]) * (-1) ** deg(q) for q in seq]
    at_plus = [sgn(q[-1]) for q in seq]
    return changes(at_minus) - changes(at_plus)
