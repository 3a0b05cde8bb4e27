"""Shared helpers: family builders and seeded random systems."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qsl4.exactpoly import MPoly
from qsl4.parser import parse_poly
from qsl4.system import QuadSystem

SEED = 20261014
XY = ("x", "y")


def family(p: str, q: str, **values) -> QuadSystem:
    b = {k: Fraction(v) for k, v in values.items()}
    return QuadSystem.from_polys(parse_poly(p, b), parse_poly(q, b))


def poly(text: str, variables=XY, **values) -> MPoly:
    return parse_poly(text, {k: Fraction(v) for k, v in values.items()}, variables)


def rand_rat(rng: random.Random, size: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        r = Fraction(rng.randint(-size, size), rng.randint(1, 3))
        if r or not nonzero:
            return r


def random_system(rng: random.Random, size: int = 5) -> QuadSystem:
    while True:
        S = QuadSystem.from_tuple([rand_rat(rng, size) for _ in range(12)])
        if max(S.p.degree(), S.q.degree()) == 2 and not S.is_degenerate:
            return S


def random_line_system(rng: random.Random) -> QuadSystem:
    """A random system with at least one invariant line (x = c times a random follow-up map)."""
    from qsl4.canon import apply_group, random_affine_map

    x, y = MPoly.gens(XY)
    while True:
        c = rand_rat(rng)
        r = x * rand_rat(rng) + y * rand_rat(rng, nonzero=True) + rand_rat(rng)
        q = sum((m * rand_rat(rng) for m in (x * x, x * y, y * y, x, y)), MPoly.const(rand_rat(rng), XY))
        S = QuadSystem.from_polys((x - c) * r, q)
        if not S.is_degenerate:
            return apply_group(S, random_affine_map(rng, 3))


def samples(names: str, count: int, rng: random.Random, avoid=None):
    """`count` parameter assignments; `avoid(values)` rejects degenerate ones."""
    out = []
    while len(out) < count:
        v = {n: rand_rat(rng, 6, nonzero=True) for n in names}
        if avoid is None or not avoid(v):
            out.append(v)
    return out


@pytest.fixture
def rng():
    return random.Random(SEED)


# one summary line per acceptance criterion, echoed after the run
CRITERIA: dict[int, str] = {}


def record(number: int, title: str, failures: list, detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} ({title}): {status}"
    if detail:
        line += f" [{detail}]"
    if failures:
        line += f" failures={failures[:5]}"
    CRITERIA[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
