"""Reading systems from text and JSON.

Text grammar (whitespace is ignored)::

    system   := "x'" "=" poly ";" "y'" "=" poly      (or just  poly ";" poly)
    poly     := ["+"|"-"] term (("+"|"-") term)*
    term     := factor (["*"|"/"] factor)*            (juxtaposition multiplies: 2xy)
    factor   := atom (("^"|"**") integer)?
    atom     := rational | letter | "(" poly ")"

Numbers may be integers, decimals or ``p/q`` written with the division
operator.  Identifiers are single letters; ``x`` and ``y`` are the variables and any
other letter must be bound to a rational (family parameters, epsilon).
Division is allowed only by a constant.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Mapping

from .errors import DegreeError, InputError
from .exactpoly import MPoly
from .system import COEFF_NAMES, QuadSystem

XY = ("x", "y")
_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(\*\*|[A-Za-z]|[-+*/^()]))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(2)
        out.append((m.group(1) or m.group(2), start))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, bindings: Mapping[str, Fraction], variables=XY):
        self.toks = _tokens(text)
        self.i = 0
        self.bindings = {k: Fraction(v) for k, v in bindings.items()}
        self.vars = tuple(variables)

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, s):
        t, p = self.take()
        if t != s:
            raise InputError(f"expected {s!r}, found {t or 'end of input'!r}", p)

    def poly(self) -> MPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts_factor(self, t: str) -> bool:
        return bool(t) and (t[0].isdigit() or t.isalpha() or t == "(")

    def term(self) -> MPoly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t == "*":
                self.take()
                acc = acc * self.factor()
            elif t == "/":
                _, p = self.take()
                d = self.factor()
                if not d.is_const() or d.is_zero():
                    raise InputError("division only by a nonzero constant", p)
                acc = acc / d.const_value()
            elif self._starts_factor(t):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MPoly:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            t, p = self.take()
            if not t.isdigit():
                raise InputError("exponent must be a non-negative integer", p)
            base = base ** int(t)
        return base

    def atom(self) -> MPoly:
        t, p = self.take()
        if not t:
            raise InputError("unexpected end of input", p)
        if t[0].isdigit():
            return MPoly.const(Fraction(t), self.vars)
        if t == "(":
            inner = self.poly()
            self.expect(")")
            return inner
        if t.isalpha():
            if t in self.vars:
                return MPoly.var(t, self.vars)
            if t in self.bindings:
                return MPoly.const(self.bindings[t], self.vars)
            raise InputError(f"unknown variable {t!r}", p)
        raise InputError(f"unexpected {t!r}", p)


def parse_poly(text: str, bindings: Mapping[str, Fraction] | None = None, variables=XY) -> MPoly:
    p = _Parser(text, bindings or {}, variables)
    out = p.poly()
    if p.peek():
        raise InputError(f"unexpected {p.peek()!r}", p.pos())
    return out


_LHS = re.compile(r"^\s*([xy])\s*'\s*=\s*")


def parse_system_text(text: str, bindings: Mapping[str, Fraction] | None = None) -> QuadSystem:
    parts = text.split(";")
    if len(parts) != 2:
        raise InputError("expected two right-hand sides separated by ';'")
    rhs = {}
    offset = 0
    for k, part in enumerate(parts):
        m = _LHS.match(part)
        name = ("x", "y")[k]
        body = part
        shift = offset
        if m:
            if m.group(1) != name:
                raise InputError(f"expected {name}' = ...", offset + m.start(1))
            body = part[m.end():]
            shift = offset + m.end()
        if not body.strip():
            raise InputError(f"empty right-hand side for {name}'", shift)
        try:
            rhs[name] = parse_poly(body, bindings)
        except InputError as e:
            if e.position is not None:
                raise InputError(str(e).rsplit(" (at position", 1)[0], e.position + shift) from None
            raise
        offset += len(part) + 1
    for name, f in rhs.items():
        if f.degree() > 2:
            raise DegreeError(f"{name}' has degree {f.degree()} > 2")
    return QuadSystem.from_polys(rhs["x"], rhs["y"])


_MONO_KEYS = {"1": (0, 0), "x": (1, 0), "y": (0, 1), "x2": (2, 0), "x^2": (2, 0), "xy": (1, 1),
              "y2": (0, 2), "y^2": (0, 2)}


def _rational(v, where: str) -> Fraction:
    if isinstance(v, bool):
        raise InputError(f"{where}: booleans are not rationals")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: malformed rational {v!r}") from None
    raise InputError(f"{where}: expected an integer or a 'num/den' string, got {v!r}")


def parse_system_json(obj) -> QuadSystem:
    """Accept {"p": {...}, "q": {...}} keyed by monomials, or the twelve tensorial aNN/bNN entries."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e.msg}", e.pos) from None
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    if "p" in obj or "q" in obj:
        polys = []
        for side in ("p", "q"):
            terms = {}
            for key, val in (obj.get(side) or {}).items():
                if key not in _MONO_KEYS:
                    raise InputError(f"{side}: unknown monomial key {key!r}")
                e = _MONO_KEYS[key]
                terms[e] = terms.get(e, Fraction(0)) + _rational(val, f"{side}.{key}")
            polys.append(MPoly(terms, XY))
        return QuadSystem.from_polys(*polys)
    unknown = [k for k in obj if k not in COEFF_NAMES]
    if unknown:
        raise InputError(f"unknown coefficient names {unknown}")
    return QuadSystem(**{k: _rational(v, k) for k, v in obj.items()})


def parse_system(src) -> QuadSystem:
    """Text ("x' = ... ; y' = ...") or JSON (object or string starting with '{')."""
    if isinstance(src, QuadSystem):
        return src
    if isinstance(src, dict):
        return parse_system_json(src)
    if isinstance(src, str) and src.lstrip().startswith("{"):
        return parse_system_json(src)
    if isinstance(src, str):
        return parse_system_text(src)
    raise InputError(f"cannot read a system from {type(src).__name__}")


def format_system(S: QuadSystem) -> str:
    """Canonical text form; parse_system(format_system(S)) == S."""
    return f"x' = {_fmt(S.p)} ; y' = {_fmt(S.q)}"


def _fmt(f: MPoly) -> str:
    return str(f) if f.terms else "0"


def system_to_json(S: QuadSystem) -> dict:
    out = {}
    for side, f in (("p", S.p), ("q", S.q)):
        d = {}
        for key in ("1", "x", "y", "x2", "xy", "y2"):
            c = f.coeff(_MONO_KEYS[key])
            if c:
                d[key] = f"{c.numerator}/{c.denominator}"
        out[side] = d
    return out
