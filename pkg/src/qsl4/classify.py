"""Membership in the class of systems with invariant lines of total multiplicity 4.

The decision table is data: each configuration row lists a divisor case and a
conjunction of atoms, optionally followed by a disjunction of extra blocks.
An atom names one comitant, or a product of comitants, and a relation:

* ``=0`` / ``!=0``: exact zero test (a product is nonzero iff every factor is);
* ``>0`` / ``<0``: for a scalar its sign; for a binary form, that the form is
  nonzero and semidefinite with that sign.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .comitants import ComitantBundle
from .epolys import EPolys, gamma_construction
from .errors import InternalInconsistency, NonSplit
from .exactpoly import MPoly, substitute
from .geometry import DivisorSummary, divisor_case, divisor_type
from .lines import LineSet, extract_lines
from .system import QuadSystem


# ---------------------------------------------------------------------- signs of binary forms

def form_sign(f) -> int | None:
    """+1 / -1 for a nonzero semidefinite form (or scalar) of that sign, 0 for zero, None if indefinite."""
    if not isinstance(f, MPoly):
        f = Fraction(f)
        return (f > 0) - (f < 0)
    if f.is_zero():
        return 0
    if f.is_const():
        c = f.const_value()
        return (c > 0) - (c < 0)
    n = f.degree()
    if n % 2:
        return None
    one = MPoly.const(Fraction(1), ("x",))
    g = upoly.from_mpoly(substitute(f, {"y": one}, vars=("x",)), "x")
    if (n - upoly.deg(g)) % 2:
        return None
    for s, k in upoly.squarefree(g):
        if k % 2 and upoly.sturm_count(s):
            return None
    t = 0
    while upoly.evaluate(g, Fraction(t)) == 0:
        t += 1
    v = upoly.evaluate(g, Fraction(t))
    return 1 if v > 0 else -1


# ---------------------------------------------------------------------- atoms and rows

RELATIONS = ("=0", "!=0", ">0", "<0")


@dataclass(frozen=True)
class Atom:
    names: tuple[str, ...]
    rel: str

    @classmethod
    def parse(cls, text: str) -> "Atom":
        for rel in ("!=0", "=0", ">0", "<0"):
            if text.endswith(rel):
                return cls(tuple(text[: -len(rel)].split("*")), rel)
        raise ValueError(f"bad atom {text!r}")

    def __str__(self):
        return "*".join(self.names) + self.rel


@dataclass(frozen=True)
class TraceEntry:
    row: int | str
    atom: str
    value: object
    outcome: bool

    def to_json(self):
        v = self.value
        if isinstance(v, Fraction):
            v = f"{v.numerator}/{v.denominator}"
        return {"row": self.row, "condition": self.atom, "value": v, "holds": self.outcome}


def _value_of(bundle: ComitantBundle, name: str):
    return bundle[name]


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, MPoly) else v == 0


def _summary(v):
    """Exact scalar value, or a short description of a form."""
    if isinstance(v, MPoly):
        if v.is_zero():
            return Fraction(0)
        return "nonzero form"
    return Fraction(v)


def eval_atom(bundle: ComitantBundle, atom: Atom) -> tuple[bool, object]:
    vals = [_value_of(bundle, n) for n in atom.names]
    if atom.rel in ("=0", "!=0"):
        zero = any(_is_zero(v) for v in vals)
        shown = _summary(vals[0]) if len(vals) == 1 else ("0" if zero else "nonzero")
        return (zero if atom.rel == "=0" else not zero), shown
    prod = vals[0]
    for v in vals[1:]:
        prod = prod * v
    s = form_sign(prod)
    shown = _summary(prod) if not isinstance(prod, MPoly) else {1: "positive", -1: "negative", 0: "0", None: "indefinite"}[s]
    return (s == 1 if atom.rel == ">0" else s == -1), shown


@dataclass(frozen=True)
class Row:
    config: int
    case: int
    atoms: tuple[Atom, ...]
    alternatives: tuple[tuple[Atom, ...], ...] = ()

    def describe(self) -> str:
        s = ", ".join(str(a) for a in self.atoms)
        if self.alternatives:
            s += ", [" + " | ".join(", ".join(str(a) for a in b) for b in self.alternatives) + "]"
        return s


def _row(config, case, conds, *alts) -> Row:
    atoms = tuple(Atom.parse(c) for c in conds.split())
    return Row(config, case, atoms, tuple(tuple(Atom.parse(c) for c in a.split()) for a in alts))


# divisor cases: 1 eta>0, 2 eta<0, 3 eta=0 and M!=0, 4 M=0 (C2 != 0)
ROWS: tuple[Row, ...] = (
    _row(1, 1, "theta!=0 B3=0 H7!=0"),
    _row(2, 2, "theta!=0 B3=0 H7!=0"),
    _row(3, 1, "theta!=0 B3=0 H7=0 H1!=0 mu!=0"),
    _row(4, 1, "theta!=0 B3=0 H7=0 H1!=0 mu=0"),
    _row(5, 1, "theta!=0 B3=0 H7=0 H1=0"),
    _row(6, 2, "theta!=0 B3=0 H7=0 mu!=0 H9!=0"),
    _row(7, 2, "theta!=0 B3=0 H7=0 mu=0"),
    _row(8, 2, "theta!=0 B3=0 H7=0 mu!=0 H9=0"),
    _row(9, 1, "theta=0 B2=0 mu*B3*H4!=0 H7=0 H9!=0", "H10*N>0", "N=0 H8>0"),
    _row(10, 1, "theta=0 B2=0 mu*B3*H4!=0 H7=0 H9=0", "H10*N>0", "N=0 H8>0"),
    _row(11, 3, "theta=0 B2=0 B3*mu!=0 H7=0 H10>0"),
    _row(12, 3, "theta=0 B3=0 K*H6!=0 mu=0 H7=0 H11>0"),
    _row(13, 1, "theta=0 B2=0 mu*B3*H4!=0 H7=0", "H10*N<0", "N=0 H8<0"),
    _row(14, 3, "theta=0 B2=0 B3*mu!=0 H7=0 H10<0"),
    _row(15, 3, "theta=0 B3=0 K*H6!=0 mu=0 H7=0 H11<0"),
    _row(16, 1, "theta=0 B2=0 mu=0 B3!=0 H7=0 H9!=0"),
    _row(17, 1, "theta=0 B2=0 mu=0 B3!=0 H7=0 H9=0 H10!=0"),
    _row(18, 1, "theta=0 B3=0 mu=0 H7!=0"),
    _row(19, 3, "theta=0 B3=0 K=0 N*H6!=0 mu=0 H7=0 H11!=0"),
    _row(20, 3, "theta!=0 B3=0 H7=0 D=0"),
    _row(21, 3, "theta!=0 B3=0 H7=0 D!=0 mu!=0"),
    _row(22, 1, "theta=0 B2=0 mu*B3*H4!=0 H7=0", "N!=0 H10=0", "N=0 H8=0"),
    _row(23, 3, "theta=0 B2=0 B3*mu!=0 H7=0 H10=0"),
    _row(24, 3, "theta=0 B3=0 K*H6!=0 mu=0 H7=0 H11=0"),
    _row(25, 3, "theta!=0 B3=0 H7!=0"),
    _row(26, 3, "theta!=0 B3=0 H7=0 D!=0 mu=0"),
    _row(27, 2, "theta=0 B3=0 N!=0 H7!=0"),
    _row(28, 3, "theta=0 mu=0 N=0 B3=0 N1*N2!=0 K=0 N5>0 D!=0"),
    _row(29, 3, "theta=0 mu=0 N=0 B3=0 N1*N2!=0 K=0 N5>0 D=0"),
    _row(30, 3, "theta=0 H6=0 N*B3!=0 mu=0 K!=0 H11!=0"),
    _row(31, 4, "theta=0 B3=0 N6*N!=0 H11!=0"),
    _row(32, 3, "theta=0 mu=0 N=0 B3=0 N1*N2!=0 K=0 N5<0 D!=0"),
    _row(33, 3, "theta=0 mu=0 N=0 B3=0 N1*N2!=0 K=0 N5<0 D=0"),
    _row(34, 1, "theta=0 B2=0 mu=0 B3!=0 H7=0 H9=0 H10=0"),
    _row(35, 3, "theta=0 B3=0 N!=0 mu=0 H7!=0"),
    _row(36, 3, "theta=0 B3=0 K=0 N*H6!=0 mu=0 H7=0 H11=0"),
    _row(37, 4, "theta=0 B3=0 N=0 N3*D1!=0 N6!=0 D!=0"),
    _row(38, 4, "theta=0 B3=0 N=0 N3*D1!=0 N6!=0 D=0"),
    _row(39, 3, "theta=0 mu=0 N=0 B3=0 N1*N2!=0 K=0 N5=0"),
    _row(40, 3, "theta=0 H6=0 N*B3!=0 mu=0 K=0"),
    _row(41, 4, "theta!=0 B3=0 H7=0 D!=0"),
    _row(42, 4, "theta!=0 B3=0 H7=0 D=0"),
    _row(43, 3, "theta=0 H6=0 N*B3!=0 mu=0 K!=0 H11=0"),
    _row(44, 4, "theta=0 B3=0 N6*N!=0 H11=0"),
    _row(45, 4, "theta!=0 B3=0 H7!=0"),
    _row(46, 4, "theta=0 B3=0 N=0 N3*D1!=0 N6=0"),
)
ROW_BY_CONFIG = {r.config: r for r in ROWS}

CASE_TEXT = {1: "eta>0", 2: "eta<0", 3: "eta=0, M!=0", 4: "eta=0, M=0", 5: "C2=0"}


# ---------------------------------------------------------------------- traces and verdicts

@dataclass
class ConditionTrace:
    entries: list[TraceEntry] = field(default_factory=list)

    def add(self, row, atom, value, outcome) -> bool:
        self.entries.append(TraceEntry(row, atom, value, outcome))
        return outcome

    def replay(self, S: QuadSystem) -> bool:
        """Re-evaluate every recorded atom; True iff all outcomes are reproduced."""
        c = ComitantBundle(S)
        for e in self.entries:
            if e.row == "cross-check":
                continue
            if e.atom.startswith("case="):
                ok = f"case={divisor_case(S, c)}" == e.atom
            else:
                ok = eval_atom(c, Atom.parse(e.atom))[0]
            if ok != e.outcome:
                return False
        return True

    def to_json(self):
        return [e.to_json() for e in self.entries]

    def __iter__(self):
        return iter(self.entries)


IN_QSL4 = "InQSL4"
NOT_IN_QSL4 = "NotInQSL4"
UNSUPPORTED = "Unsupported"
DEGENERATE = "Degenerate"

FEWER = "fewer-than-4"
MORE = "more-than-4"
GATE_FAILS = "necessary-conditions-fail"


@dataclass
class Verdict:
    outcome: str
    config: int | None = None
    reason: str | None = None
    lines: LineSet | None = None
    trace: ConditionTrace = field(default_factory=ConditionTrace)
    divisor: DivisorSummary | None = None
    h_degree: int | None = None

    def key(self) -> tuple:
        """What must agree between affinely equivalent systems."""
        return (self.outcome, self.config, self.reason)

    def __str__(self):
        if self.outcome == IN_QSL4:
            return f"InQSL4: Config 4.{self.config}"
        if self.outcome == NOT_IN_QSL4:
            return f"NotInQSL4 ({self.reason})"
        if self.outcome == UNSUPPORTED:
            return "Unsupported (C2 = 0)"
        return "Degenerate (p and q have a common factor)"

    def to_json(self):
        out = {"outcome": self.outcome, "summary": str(self)}
        if self.config is not None:
            out["config"] = f"4.{self.config}"
        if self.reason is not None:
            out["reason"] = self.reason
        if self.h_degree is not None:
            out["deg_H"] = self.h_degree
        if self.lines is not None:
            out["lines"] = self.lines.to_json()
        if self.divisor is not None:
            out["divisor"] = self.divisor.to_json()
        out["trace"] = self.trace.to_json()
        return out


# ---------------------------------------------------------------------- evaluation

def _eval_atoms(c: ComitantBundle, atoms, trace: ConditionTrace, tag) -> bool:
    for a in atoms:
        ok, shown = eval_atom(c, a)
        trace.add(tag, str(a), shown, ok)
        if not ok:
            return False
    return True


def _eval_row(c: ComitantBundle, row: Row, trace: ConditionTrace) -> bool:
    if not _eval_atoms(c, row.atoms, trace, row.config):
        return False
    if not row.alternatives:
        return True
    return any(_eval_atoms(c, block, trace, row.config) for block in row.alternatives)


def necessary_gate(S: QuadSystem, bundle: ComitantBundle | None = None,
                   trace: ConditionTrace | None = None) -> tuple[bool, ConditionTrace]:
    """(theta != 0 and B3 = 0) or (theta = 0 and B2 = 0)."""
    c = bundle or ComitantBundle(S)
    trace = trace if trace is not None else ConditionTrace()
    theta = c.theta
    trace.add("gate", "theta!=0" if theta != 0 else "theta=0", theta, True)
    if theta != 0:
        ok, shown = eval_atom(c, Atom(("B3",), "=0"))
        return trace.add("gate", "B3=0", shown, ok), trace
    ok, shown = eval_atom(c, Atom(("B2",), "=0"))
    return trace.add("gate", "B2=0", shown, ok), trace


def check_config(S: QuadSystem, config: int, bundle: ComitantBundle | None = None) -> tuple[bool, ConditionTrace]:
    """Evaluate exactly one row (its divisor case first, then its conditions)."""
    row = ROW_BY_CONFIG[config]
    c = bundle or ComitantBundle(S)
    trace = ConditionTrace()
    case = divisor_case(S, c)
    if not trace.add(config, f"case={row.case}", CASE_TEXT[case], case == row.case):
        return False, trace
    return _eval_row(c, row, trace), trace


def matching_rows(S: QuadSystem, bundle: ComitantBundle | None = None) -> list[int]:
    c = bundle or ComitantBundle(S)
    return [r.config for r in ROWS if check_config(S, r.config, c)[0]]


def _lines_or_none(S: QuadSystem, E: EPolys) -> LineSet | None:
    try:
        return extract_lines(S, E)
    except NonSplit:
        return None


def classify(S: QuadSystem) -> Verdict:
    trace = ConditionTrace()
    if S.is_degenerate:
        return Verdict(DEGENERATE, trace=trace)
    c = ComitantBundle(S)
    case = divisor_case(S, c)
    trace.add("table1", f"case={case}", CASE_TEXT[case], True)
    if case == 5:
        return Verdict(UNSUPPORTED, trace=trace, divisor=divisor_type(S, c))
    divisor = divisor_type(S, c)
    ok, _ = necessary_gate(S, c, trace)
    if not ok:
        return Verdict(NOT_IN_QSL4, reason=GATE_FAILS, trace=trace, divisor=divisor)
    matched = []
    for row in ROWS:
        if row.case != case:
            continue
        if _eval_row(c, row, trace):
            matched.append(row.config)
    if len(matched) > 1:
        raise InternalInconsistency(f"rows {matched} all match")
    E = gamma_construction(S)
    lines = _lines_or_none(S, E)
    deg_h = E.degree
    if matched:
        if deg_h == 3 and lines is not None and lines.total_multiplicity == 4:
            return Verdict(IN_QSL4, config=matched[0], lines=lines, trace=trace, divisor=divisor, h_degree=deg_h)
        trace.add("cross-check", "deg H = 3 and M_IL = 4", deg_h, False)
    if deg_h < 3:
        reason = FEWER
    elif deg_h > 3:
        reason = MORE
    else:
        raise InternalInconsistency("deg H = 3 but no configuration row matches")
    return Verdict(NOT_IN_QSL4, reason=reason, lines=lines, trace=trace, divisor=divisor, h_degree=deg_h)
