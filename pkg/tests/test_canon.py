import math
import random
from fractions import Fraction

import pytest

from conftest import SEED, family, poly, random_system
from qsl4.canon import (
    NORMAL_FORMS, NORMAL_FORM_CASE, PERTURBATIONS, REPRESENTATIVES, AffineMap, apply_group, limit_lines,
    perturbation_system_in_e, perturbed, random_affine_map, representative, representative_samples,
)
from qsl4.errors import ConstraintViolation, InputError, NoPerturbation
from qsl4.exactpoly import MPoly, substitute
from qsl4.geometry import divisor_case
from qsl4.lines import Line
from qsl4.scalars import to_mpc


def test_representative_examples():
    assert representative(17) == family("x", "y^2-x*y")
    assert representative(1, {"b": 2, "l": 3}) == family("3*x+3*x^2+x*y", "-2*y+2*x*y+2*y^2")


def test_constraint_violation_names_the_condition():
    with pytest.raises(ConstraintViolation) as e:
        representative(1, {"b": 1, "l": 0})
    assert "b*l*(b+l-1)" in str(e.value)
    with pytest.raises(ConstraintViolation):
        representative(34, {"l": 2})
    with pytest.raises(InputError):
        representative(1, {"b": 2})
    with pytest.raises(InputError):
        representative(47)


def test_every_row_has_samples():
    assert sorted(REPRESENTATIVES) == list(range(1, 47))
    for k in REPRESENTATIVES:
        assert 1 <= len(representative_samples(k)) <= 3


def test_normal_forms_hit_their_divisor_case():
    v = dict(k=1, c=2, d=3, g=5, h=7, l=1, e=2, f=3)
    for name, spec in NORMAL_FORMS.items():
        vals = {p: v[p] for p in spec.params}
        assert divisor_case(spec.build(vals)) == NORMAL_FORM_CASE[name]


def test_perturbation_examples():
    S, lines = perturbed(17, {}, Fraction(1, 8))
    assert S == family("x*(x/8+1)", "y*(y-x)")
    assert sorted(map(str, lines)) == ["x + 8 = 0", "x = 0", "y = 0"]
    _, lines = perturbed(42, {"l": 1}, Fraction(1, 8))
    assert sorted(map(str, lines)) == sorted(map(str, [Line.of(1, 0, 0), Line.of(2, Fraction(1, 8), 0),
                                                       Line.of(1, Fraction(-1, 4), 0)]))
    with pytest.raises(NoPerturbation):
        perturbed(3, {"b": 2, "l": 3}, Fraction(1, 8))
    with pytest.raises(InputError):
        perturbed(17, {}, 0)


@pytest.mark.parametrize("k", sorted(PERTURBATIONS))
def test_perturbation_tends_to_representative(k):
    for v in representative_samples(k):
        p, q = perturbation_system_in_e(k, v)
        zero = {"e": MPoly.const(Fraction(0), ("x", "y"))}
        p0 = substitute(p, zero, vars=("x", "y"))
        q0 = substitute(q, zero, vars=("x", "y"))
        S0 = representative(k, v)
        assert (p0, q0) == (S0.p, S0.q)


@pytest.mark.parametrize("k", [17, 20, 24, 34, 42, 45])
def test_line_coefficients_converge(k):
    # normalized coefficients of each listed line approach a limit line at rate O(eps)
    v = representative_samples(k)[0]
    limits = limit_lines(k, v)
    prev = None
    for n in range(3, 11):
        eps = Fraction(1, 2 ** n)
        _, lines = perturbed(k, v, eps)
        dist = 0.0
        for l in lines:
            best = min(_distance(l, m) for m in limits)
            dist = max(dist, best)
        assert dist <= 64 * float(eps)
        if prev is not None:
            assert dist <= prev + 1e-12
        prev = dist


def _distance(a: Line, b: Line) -> float:
    """Distance between lines as points of the projective plane (unit-normalized, sign-free)."""
    va = [complex(to_mpc(c)) for c in a.coeffs]
    vb = [complex(to_mpc(c)) for c in b.coeffs]
    na = math.sqrt(sum(abs(z) ** 2 for z in va))
    nb = math.sqrt(sum(abs(z) ** 2 for z in vb))
    ip = abs(sum(x * y.conjugate() for x, y in zip(va, vb))) / (na * nb)
    return math.sqrt(max(0.0, 1 - min(1.0, ip) ** 2))


def test_identity_and_group_law():
    rng = random.Random(SEED)
    S = random_system(rng)
    assert apply_group(S, AffineMap.identity()) == S
    for _ in range(10):
        g1, g2 = random_affine_map(rng), random_affine_map(rng)
        assert apply_group(apply_group(S, g1), g2) == apply_group(S, g2.compose(g1))


def test_uniform_scaling_rescales_by_degree():
    rng = random.Random(SEED)
    S = random_system(rng)
    T = apply_group(S, AffineMap.scaling(4, 1))
    for f, g in ((S.p, T.p), (S.q, T.q)):
        for e, c in f.terms.items():
            factor = {2: 1, 1: Fraction(1, 4), 0: Fraction(1, 16)}[sum(e)]
            assert g.coeff(e) == c * factor


def test_translation_eliminates_d():
    v = dict(k=1, c=2, d=3, g=5, h=7, l=1, e=2, f=3)
    S = NORMAL_FORMS["S_I"].build(v)
    x0 = Fraction(v["d"], 1 - v["h"])
    T = apply_group(S, AffineMap(((1, 0), (0, 1)), (-x0, 0)))
    assert T.p.coeff((0, 1)) == 0
    assert T.p_i(2) == S.p_i(2) and T.q_i(2) == S.q_i(2)


def test_affine_map_validation():
    with pytest.raises(InputError):
        AffineMap(((1, 2), (2, 4)))
    with pytest.raises(InputError):
        AffineMap(((1, 0), (0, 1)), (0, 0), -1)
