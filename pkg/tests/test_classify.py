import random
from fractions import Fraction

import pytest

from conftest import SEED, family, random_system
from qsl4.canon import NORMAL_FORMS, all_representative_instances, representative
from qsl4.classify import (
    DEGENERATE, FEWER, GATE_FAILS, IN_QSL4, MORE, NOT_IN_QSL4, ROWS, UNSUPPORTED, Atom, check_config, classify,
    form_sign, necessary_gate,
)
from qsl4.comitants import ComitantBundle
from qsl4.epolys import gamma_construction
from qsl4.lines import extract_lines
from conftest import poly


def test_examples():
    assert classify(family("x", "y*(y-x)")).config == 17
    V = classify(family("1", "y-x^2"))
    assert V.config == 46 and V.lines.infinity.multiplicity == 4
    V = classify(family("k-x^2", "l-2*x*y", k=3, l=5))
    assert (V.outcome, V.reason, V.h_degree) == (NOT_IN_QSL4, MORE, 4)


def test_typed_rejections():
    assert classify(family("x*(x+y)", "x*y")).outcome == DEGENERATE
    S5 = NORMAL_FORMS["S_V"].build(dict(k=1, c=2, d=3, l=1, e=2, f=3))
    assert classify(S5).outcome == UNSUPPORTED


def test_fewer_than_four():
    S = NORMAL_FORMS["S_III"].build(dict(k=0, c=0, d=0, l=0, e=1, g=2, h=0, f=1))
    assert necessary_gate(S)[0]
    V = classify(S)
    assert (V.outcome, V.reason) == (NOT_IN_QSL4, FEWER) and V.h_degree < 3


def test_gate():
    assert necessary_gate(family("x", "y*(y-x)"))[0]
    assert necessary_gate(representative(1, {"b": 2, "l": 3}))[0]
    rng = random.Random(SEED)
    for _ in range(5):
        S = random_system(rng)
        c = ComitantBundle(S)
        assert not necessary_gate(S, c)[0]
        assert gamma_construction(S).degree < 3


def test_check_config_examples():
    S5 = representative(5, {"b": 2, "l": 3})
    assert check_config(S5, 5)[0] and not check_config(S5, 3)[0]
    assert check_config(representative(42, {"l": 1}), 42)[0]
    # 4.17 lives in divisor case 1; a case-4 row rejects it at the gate
    ok, trace = check_config(representative(17), 42)
    assert not ok and trace.entries[0].atom.startswith("case=")


def test_trace_replays():
    for k, v, S in list(all_representative_instances())[::5]:
        V = classify(S)
        assert V.trace.replay(S)
        assert any(e.row == k and e.outcome for e in V.trace)


def test_disjunctive_rows_take_the_n_zero_block():
    # x' = k + x^2, y' = k - e^2 + 2ex + y^2 has N = 0; its members land in rows 9, 10 and 13 through the second block
    expected = {(-1, 1): 10, (-3, 2): 9, (2, 1): 13, (5, 3): 13}
    for (k, e), config in expected.items():
        S = family("k+x^2", "k-e^2+2*e*x+y^2", k=k, e=e)
        assert ComitantBundle(S).N.is_zero()
        assert classify(S).config == config
    row = {r.config: r for r in ROWS}[22]
    assert len(row.alternatives) == 2


def test_in_qsl4_always_has_four(rng):
    for k, v, S in list(all_representative_instances())[::7]:
        V = classify(S)
        assert V.outcome == IN_QSL4 and V.lines.total_multiplicity == 4 and V.h_degree == 3


def test_theta_nonzero_bounds_multiplicity(rng):
    checked = 0
    while checked < 50:
        S = random_system(rng, size=3)
        if ComitantBundle(S).theta == 0:
            continue
        checked += 1
        assert extract_lines(S).total_multiplicity <= 4


def test_rejection_reasons_are_witnessed(rng):
    for _ in range(10):
        S = random_system(rng, size=2)
        V = classify(S)
        if V.outcome != NOT_IN_QSL4:
            continue
        if V.reason == GATE_FAILS:
            assert not necessary_gate(S)[0]
        else:
            assert (V.h_degree < 3) == (V.reason == FEWER)


def test_form_sign():
    assert form_sign(poly("x^2+y^2")) == 1
    assert form_sign(poly("-(x-y)^2")) == -1
    assert form_sign(poly("x*y")) is None
    assert form_sign(poly("x^3")) is None
    assert form_sign(Fraction(-3)) == -1
    assert form_sign(poly("0")) == 0


def test_atom_parse():
    a = Atom.parse("mu*B3*H4!=0")
    assert a.names == ("mu", "B3", "H4") and a.rel == "!=0"
    with pytest.raises(ValueError):
        Atom.parse("mu")
