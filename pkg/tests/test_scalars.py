from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from qsl4 import upoly
from qsl4.scalars import NumScalar, QuadScalar, conj, is_exact, rational_sqrt, sqrt_in_field, squarefree_decompose

rats = st.fractions(min_value=-9, max_value=9, max_denominator=5)
ds = st.sampled_from([-1, -2, 2, 3, -7, 5])


@settings(max_examples=60, deadline=None)
@given(rats, rats, rats, rats, ds)
def test_quadratic_field_arithmetic(a, b, c, e, d):
    x, y = QuadScalar.make(a, b, d), QuadScalar.make(c, e, d)
    s = sp.sqrt(d)
    def val(z):
        return sp.nsimplify(z.a if isinstance(z, QuadScalar) else z) + (sp.nsimplify(z.b) * s if isinstance(z, QuadScalar) else 0)
    assert sp.simplify(val(x * y) - val(x) * val(y)) == 0
    assert sp.simplify(val(x + y) - val(x) - val(y)) == 0
    if x != 0:
        assert x * (1 / x) == 1
    assert conj(conj(x)) == x


def test_sqrt_helpers():
    assert squarefree_decompose(72) == (6, 2)
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    r2 = rational_sqrt(Fraction(2))
    assert isinstance(r2, QuadScalar) and r2 * r2 == 2
    r = sqrt_in_field(Fraction(-3))
    assert r * r == -3


def test_roots_over_the_tower():
    # (x - 1/2)^2 (x^2 + 1)(x^2 - 2)
    p = upoly.mul(upoly.mul([Fraction(1, 4), Fraction(-1), Fraction(1)], [1, 0, 1]), [-2, 0, 1])
    roots = upoly.roots_with_multiplicity([Fraction(c) for c in p])
    assert sorted(k for _, k in roots) == [1, 1, 1, 1, 2]
    assert all(is_exact(r) and upoly.evaluate(p, r) == 0 for r, _ in roots)


def test_cubic_irrationality_falls_back_to_numeric():
    roots = upoly.roots_with_multiplicity([Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])
    assert len(roots) == 3 and all(isinstance(r, NumScalar) for r, _ in roots)
    assert all(not is_exact(r) for r, _ in roots)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6))
def test_sturm_count_matches_sympy(coeffs):
    p = [Fraction(c) for c in coeffs]
    if upoly.deg(upoly.trim(p)) < 1:
        return
    X = sp.Symbol("x")
    P = sum(c * X ** i for i, c in enumerate(coeffs))
    assert upoly.sturm_count(p) == len(set(sp.real_roots(sp.Poly(P, X))))


def test_gcd_and_squarefree():
    a = upoly.mul([-1, 1], [-1, 1])  # (x-1)^2
    sq = upoly.squarefree([Fraction(c) for c in upoly.mul(a, [2, 1])])
    assert sorted(k for _, k in sq) == [1, 2]
