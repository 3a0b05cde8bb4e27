from fractions import Fraction

import pytest

from conftest import family, random_system
from qsl4.canon import NORMAL_FORMS, all_representative_instances, apply_group, random_affine_map, representative
from qsl4.errors import UnsupportedSystem
from qsl4.geometry import (
    Point, divisor_case, divisor_type, finite_singularities, gcd_p2q2_degree, infinite_singularities,
    predicted_gcd_degree,
)


def _finite(S):
    return {p.point.affine(): p.mult_pq for p in finite_singularities(S)}


def test_divisor_cases():
    d = divisor_type(family("x", "y*(y-x)"))
    assert d.divisor_case == 1
    assert {str(w): k for w, k in d.dcz.entries} == {"[1:0:0]": 1, "[0:1:0]": 1, "[1:1:0]": 1}
    S4 = NORMAL_FORMS["S_IV"].build(dict(k=1, c=2, d=3, g=5, h=7, l=1, e=2, f=3))
    assert divisor_case(S4) == 4
    S5 = NORMAL_FORMS["S_V"].build(dict(k=1, c=2, d=3, l=1, e=2, f=3))
    assert divisor_case(S5) == 5


def test_homogeneous_family_finite_points():
    g, h = Fraction(2), Fraction(3)
    S = family("c*x+g*x^2+(h-1)*x*y", "c*y+(g-1)*x*y+h*y^2", c=1, g=g, h=h)
    assert _finite(S) == {(0, 0): 1, (0, -1 / h): 1, (-1 / g, 0): 1, (1 / (1 - g - h), 1 / (1 - g - h)): 1}


def test_family_finite_points():
    f = Fraction(3)
    assert _finite(family("x^2+x*y", "(y+f)^2-1", f=f)) == {
        (0, 1 - f): 1, (0, -1 - f): 1, (-1 + f, 1 - f): 1, (1 + f, -1 - f): 1}


def test_config_46_has_no_finite_points():
    assert finite_singularities(family("1", "y-x^2")) == []


def test_infinite_points_config_17():
    pts, _ = infinite_singularities(family("x", "y*(y-x)"))
    assert sorted(str(p.point) for p in pts) == ["[0:1:0]", "[1:0:0]", "[1:1:0]"]
    assert all(p.mult_cz == 1 for p in pts)


def test_unsupported_at_c2_zero():
    with pytest.raises(UnsupportedSystem):
        infinite_singularities(NORMAL_FORMS["S_V"].build(dict(k=1, c=2, d=3, l=1, e=2, f=3)))


def test_bezout_on_representatives():
    for k, v, S in all_representative_instances():
        pts = finite_singularities(S)
        _, dpqz = infinite_singularities(S)
        assert sum(p.mult_pq for p in pts) + dpqz.degree == 4, (k, v)
        assert divisor_type(S).dcz.degree == 3


def test_gcd_degree_examples():
    S = NORMAL_FORMS["S_III"].build(dict(k=1, c=2, d=3, g=0, h=0, l=1, e=2, f=3))
    assert gcd_p2q2_degree(S) == 2 == predicted_gcd_degree(S)


def test_gcd_degree_prediction_random(rng):
    for _ in range(20):
        S = random_system(rng)
        assert gcd_p2q2_degree(S) == predicted_gcd_degree(S) == 0


def test_divisor_type_affine_invariant(rng):
    inst = list(all_representative_instances())
    for _ in range(20):
        _, _, S = inst[rng.randrange(len(inst))]
        T = apply_group(S, random_affine_map(rng))
        a, b = divisor_type(S), divisor_type(T)
        assert (a.divisor_case, a.n_r_inf, a.d_sigma_inf) == (b.divisor_case, b.n_r_inf, b.d_sigma_inf)


def test_point_normalization():
    assert Point.of(2, 4, 2).coords == (1, 2, 1)
    assert Point.of(3, 6, 0).coords == (1, 2, 0)
    with pytest.raises(ValueError):
        Point.of(0, 0, 0)
