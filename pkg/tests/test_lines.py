from fractions import Fraction

import pytest

from conftest import family, poly, random_line_system, random_system
from qsl4.canon import all_representative_instances, representative
from qsl4.errors import NotInvariant
from qsl4.exactpoly import MPoly, divmod_poly
from qsl4.lines import (
    Line, conjugate_closed, extract_lines, is_invariant, line_search_oracle, linear_factors, verify_line,
)
from qsl4.scalars import QuadScalar


def _lines(ls):
    return {str(l.line): l.multiplicity for l in ls.lines}


def test_extract_config_17():
    ls = extract_lines(family("x", "y*(y-x)"))
    assert _lines(ls) == {"x = 0": 1, "y = 0": 1, "Z = 0": 2}
    assert ls.total_multiplicity == 4


def test_extract_double_line():
    ls = extract_lines(representative(24, {"l": 2}))
    assert _lines(ls) == {"y = 0": 1, "x + 1 = 0": 2, "Z = 0": 1}


def test_extract_complex_pair():
    for l in (2, -3, Fraction(1, 2)):
        ls = extract_lines(representative(27, {"l": l}))
        aff = ls.affine
        assert len(aff) == 2 and all(not a.line.is_real for a in aff)
        assert aff[0].line == aff[1].line.conjugate()
        assert ls.infinity.multiplicity == 2
        # both pass through (1, -c)
        for a in aff:
            assert a.line.u * 1 + a.line.v * (-l) + a.line.w == 0
        assert conjugate_closed(ls)


def test_extract_only_infinity():
    ls = extract_lines(family("1", "y-x^2"))
    assert _lines(ls) == {"Z = 0": 4}


def test_cofactors():
    assert verify_line(family("x", "y*(y-x)"), Line.of(0, 1, 0)) == poly("y-x")
    assert verify_line(family("x", "y*(y-x)"), Line.of(1, 0, 0)) == poly("1")
    with pytest.raises(NotInvariant):
        verify_line(family("x", "y*(y-x)"), Line.of(1, 1, 0))


def test_complex_cofactor_in_gaussian_field():
    S = family("g*x^2+(h+1)*x*y", "-u^2+g*u*x+u*(h-1)*y-x^2+g*x*y+h*y^2", g=2, h=3, u=5)
    i = QuadScalar.make(Fraction(0), Fraction(1), -1)
    line = Line.of(1, i, i * 5)   # x + i(y + u) = 0
    k = verify_line(S, line)
    assert k.degree() <= 1
    assert is_invariant(S, line.conjugate())


def test_h_value_on_family():
    from qsl4.epolys import gamma_construction
    for g, h, u in ((2, 3, 5), (-1, Fraction(1, 2), 2)):
        S = family("g*x^2+(h+1)*x*y", "-u^2+g*u*x+u*(h-1)*y-x^2+g*x*y+h*y^2", g=g, h=h, u=u)
        want = poly("2*X*(X^2+(Y+u*Z)^2)", ("X", "Y", "Z"), u=u)
        q, r = divmod_poly(gamma_construction(S).Hgcd, want)
        assert not r.terms and q.is_const() and q.const_value() > 0


def test_factor_product_recovers_h():
    for k, v, S in list(all_representative_instances())[::4]:
        ls = extract_lines(S)
        Z = MPoly.var("Z", ("X", "Y", "Z"))
        prod = Z ** (ls.infinity.multiplicity - 1)
        for l in ls.affine:
            prod = prod * l.line.projective() ** l.multiplicity
        q, r = divmod_poly(ls.hgcd, prod)
        assert not r.terms and q.is_const(), (k, v)


def test_conjugate_closure_on_representatives():
    for k, v, S in all_representative_instances():
        assert conjugate_closed(extract_lines(S)), (k, v)


def test_oracle_examples():
    assert sorted(str(l) for l in line_search_oracle(family("x", "y*(y-x)"))) == ["x = 0", "y = 0"]
    assert line_search_oracle(family("1", "y-x^2")) == []
    pair = line_search_oracle(family("2*c*x+2*y", "c^2+1-x^2-y^2", c=3))
    assert len(pair) == 2 and pair[0] == pair[1].conjugate()


def test_oracle_agrees_on_planted_lines(rng):
    for _ in range(6):
        S = random_line_system(rng)
        found = line_search_oracle(S)
        assert found
        assert all(is_invariant(S, l) for l in found if l.is_exact)
        assert sorted(map(str, extract_lines(S).support())) == sorted(map(str, found))


def test_linear_factors():
    got = linear_factors(poly("(x-1)*(2*x+y)*(y+3)^2"))
    assert sorted(map(str, got)) == sorted(["x - 1 = 0", "x + 1/2*y = 0", "y + 3 = 0"])


def test_line_normalization():
    l = Line.of(2, 4, 6)
    assert l.coeffs == (1, 2, 3)
    assert Line.of(0, 3, 1).coeffs == (0, 1, Fraction(1, 3))
    with pytest.raises(ValueError):
        Line.of(0, 0, 0)
    assert Line.infinity().is_infinite
