"""Command-line front end.

Exit status: 0 success, 2 parse or validation error (degenerate systems included),
3 unsupported system (C2 = 0), 4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import canon
from .classify import DEGENERATE, IN_QSL4, UNSUPPORTED, classify
from .comitants import ALL_NAMES, META, ComitantBundle
from .errors import (DegenerateInput, InputError, InternalInconsistency, NoPerturbation, QSL4Error,
                     UnsupportedSystem)
from .exactpoly import MPoly
from .geometry import divisor_type, finite_singularities, infinite_singularities, intersection_cycle
from .lines import extract_lines, is_invariant
from .parser import format_system, parse_system, system_to_json

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_INTERNAL = 0, 2, 3, 4


def _frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def poly_to_json(f) -> dict:
    if not isinstance(f, MPoly):
        return {"text": str(Fraction(f)), "value": _frac(Fraction(f))}
    terms = [[list(e), _frac(c)] for e, c in sorted(f.terms.items(), reverse=True)]
    return {"text": str(f) if f.terms else "0", "vars": list(f.vars), "terms": terms}


def _system_block(S) -> dict:
    return {"text": format_system(S), "coefficients": system_to_json(S)}


# ---------------------------------------------------------------------- reports

def classify_report(S, emit_config_data: bool = False) -> dict:
    v = classify(S)
    out = {"schema": SCHEMA, "system": _system_block(S), "verdict": v.to_json()}
    if emit_config_data and v.outcome not in (UNSUPPORTED, DEGENERATE):
        out["config_data"] = singular_report(S)["singular"]
        if v.lines is not None:
            out["config_data"]["lines"] = v.lines.to_json()["lines"]
    return out


def comitants_report(S) -> dict:
    c = ComitantBundle(S)
    entries = {}
    for name in ALL_NAMES:
        entry = poly_to_json(c[name])
        m = META.get(name)
        if m is not None:
            entry["meta"] = {"degree_a": m.degree_a, "degree_xy": m.degree_xy, "weight": m.weight,
                             "translation_invariant_on": list(m.ct_variety) or None}
        entries[name] = entry
    return {"schema": SCHEMA, "system": _system_block(S), "comitants": entries}


def lines_report(S) -> dict:
    ls = extract_lines(S)
    out = ls.to_json()
    out["H"] = poly_to_json(ls.hgcd)
    return {"schema": SCHEMA, "system": _system_block(S), "lines": out}


def singular_report(S) -> dict:
    cycle = intersection_cycle(S)
    fin = finite_singularities(S, cycle)
    inf, dpqz = infinite_singularities(S, cycle)
    div = divisor_type(S)
    return {"schema": SCHEMA, "system": _system_block(S), "singular": {
        "finite": [p.to_json() for p in fin],
        "infinite": [p.to_json() for p in inf],
        "divisor": div.to_json(),
        "D_PQ_Z": dpqz.to_json(),
    }}


def representative_report(config: int, params: dict) -> dict:
    spec = canon.REPRESENTATIVES.get(config)
    if spec is None:
        raise InputError(f"no configuration 4.{config}; expected 1..46")
    S = spec.build(params)
    return {"schema": SCHEMA, "config": f"4.{config}", "template": spec.text(),
            "params": {k: _frac(Fraction(v)) for k, v in canon._as_values(params).items()},
            "system": _system_block(S)}


def perturb_report(config: int, params: dict, eps) -> dict:
    S, lines = canon.perturbed(config, params, eps)
    return {"schema": SCHEMA, "config": f"4.{config}", "epsilon": _frac(Fraction(eps)),
            "template": canon.perturbation(config).family.text(),
            "system": _system_block(S),
            "lines": [{"coefficients": l.to_json(), "equation": str(l), "invariant": is_invariant(S, l)}
                      for l in lines]}


def run_selftest(eps_values=(Fraction(1, 8), Fraction(1, 16))) -> dict:
    """Round-trip every representative sample and check every perturbation witness."""
    counts = {"roundtrip": [0, 0], "perturbation": [0, 0]}
    failures = []
    for k, values, S in canon.all_representative_instances():
        v = classify(S)
        ok = v.outcome == IN_QSL4 and v.config == k and v.lines.total_multiplicity == 4 and v.h_degree == 3
        counts["roundtrip"][0 if ok else 1] += 1
        if not ok:
            failures.append(f"4.{k} {values}: {v}")
    for k in canon.PERTURBATIONS:
        for values in canon.representative_samples(k):
            for eps in eps_values:
                S, lines = canon.perturbed(k, values, eps)
                ok = all(is_invariant(S, l) for l in lines)
                counts["perturbation"][0 if ok else 1] += 1
                if not ok:
                    failures.append(f"4.{k}e {values} e={eps}: a listed line is not invariant")
    return {"schema": SCHEMA,
            "passed": {k: c[0] for k, c in counts.items()},
            "failed": {k: c[1] for k, c in counts.items()},
            "failures": failures}


# ---------------------------------------------------------------------- text rendering

def _text_classify(r: dict) -> str:
    v = r["verdict"]
    out = [f"system:  {r['system']['text']}", f"verdict: {v['summary']}"]
    if "divisor" in v:
        out.append(f"divisor case: {v['divisor']['divisor_case']}")
    if "deg_H" in v:
        out.append(f"deg H: {v['deg_H']}")
    if "lines" in v:
        out.append(f"invariant lines (total multiplicity {v['lines']['total_multiplicity']}):")
        for l in v["lines"]["lines"]:
            m = "" if l["multiplicity"] == 1 else f"  x{l['multiplicity']}"
            out.append(f"  {l['equation']}{m}")
    out.append("conditions:")
    for e in v["trace"]:
        out.append(f"  [{e['row']}] {e['condition']:<18} {'holds' if e['holds'] else 'fails'}  ({e['value']})")
    if "config_data" in r:
        out.append("config data: " + json.dumps(r["config_data"]))
    return "\n".join(out)


def _text_comitants(r: dict) -> str:
    out = [f"system: {r['system']['text']}"]
    for name, e in r["comitants"].items():
        out.append(f"{name:>5} = {e['text']}")
    return "\n".join(out)


def _text_lines(r: dict) -> str:
    ls = r["lines"]
    out = [f"system: {r['system']['text']}", f"H = {ls['H']['text']}"]
    for l in ls["lines"]:
        cof = f"   cofactor {l['cofactor']}" if "cofactor" in l else ""
        out.append(f"  {l['equation']}  multiplicity {l['multiplicity']}{cof}")
    out.append(f"total multiplicity: {ls['total_multiplicity']}")
    return "\n".join(out)


def _text_singular(r: dict) -> str:
    s = r["singular"]
    out = [f"system: {r['system']['text']}", "finite singular points:"]
    out += [f"  {p['text']}  I(p,q)={p['mult_pq']}" for p in s["finite"]] or ["  none"]
    out.append("points at infinity:")
    out += [f"  {p['text']}  I(C,Z)={p['mult_cz']}  I(P,Q)={p['mult_pq']}" for p in s["infinite"]]
    out.append(f"divisor case: {s['divisor']['divisor_case']}")
    return "\n".join(out)


def _text_system(r: dict) -> str:
    lines = [f"Config {r['config']}", r["system"]["text"]]
    for l in r.get("lines", []):
        lines.append(f"  {l['equation']}  {'invariant' if l['invariant'] else 'NOT invariant'}")
    return "\n".join(lines)


def _text_selftest(r: dict) -> str:
    out = [f"{k}: {r['passed'][k]} passed, {r['failed'][k]} failed" for k in r["passed"]]
    out += [f"  FAIL {f}" for f in r["failures"]]
    return "\n".join(out)


# ---------------------------------------------------------------------- argument handling

def _read_system(args):
    src = args.system
    if src is None or src == "-":
        src = sys.stdin.read()
    elif src.startswith("@"):
        with open(src[1:], encoding="utf-8") as fh:
            src = fh.read()
    return parse_system(src.strip())


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not of the form name=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"parameter {k}: malformed rational {v!r}") from None
    return out


def _classify_line(args_tuple):
    text, emit = args_tuple
    try:
        return classify_report(parse_system(text), emit), None
    except QSL4Error as e:
        return None, f"{type(e).__name__}: {e}"


def _exit_for(report: dict) -> int:
    outcome = report.get("verdict", {}).get("outcome")
    if outcome == UNSUPPORTED:
        return EXIT_UNSUPPORTED
    if outcome == DEGENERATE:
        return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qsl4", description="Invariant lines of total multiplicity 4 for quadratic systems.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, hlp in (("classify", "decide membership and report the configuration"),
                      ("comitants", "print every comitant"),
                      ("lines", "invariant lines with multiplicities and cofactors"),
                      ("singular", "finite and infinite singular points")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("system", nargs="?", help="\"x' = ... ; y' = ...\", a JSON object, @file, or - for stdin")
        if name == "classify":
            sp.add_argument("--batch", metavar="FILE", help="one system per line; results in input order")
            sp.add_argument("--jobs", type=int, default=1, help="parallel workers for --batch")
            sp.add_argument("--emit-config-data", action="store_true", help="add line and singular-point geometry")
    sp = sub.add_parser("representative", help="emit the orbit representative of a configuration")
    sp.add_argument("config", type=int)
    sp.add_argument("--param", "-p", action="append", metavar="NAME=VALUE")
    sp = sub.add_parser("perturb", help="emit a perturbed system and its listed lines")
    sp.add_argument("config", type=int)
    sp.add_argument("--param", "-p", action="append", metavar="NAME=VALUE")
    sp.add_argument("--eps", default="1/8")
    sub.add_parser("selftest", help="run the built-in corpus")
    return ap


def _emit(report, fmt, render):
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render(report))


def _batch(args) -> int:
    with open(args.batch, encoding="utf-8") as fh:
        items = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    jobs = [(t, args.emit_config_data) for t in items]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_classify_line, jobs))
    else:
        results = [_classify_line(j) for j in jobs]
    status = EXIT_OK
    out = []
    for text, (rep, err) in zip(items, results):
        if err is not None:
            out.append({"input": text, "error": err})
            status = max(status, EXIT_INPUT)
        else:
            out.append(rep)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "results": out}, indent=2))
    else:
        for r in out:
            print(f"{r['input']}\n  error: {r['error']}" if "error" in r else _text_classify(r))
            print()
    return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        if args.command == "classify":
            if args.batch:
                return _batch(args)
            rep = classify_report(_read_system(args), args.emit_config_data)
            _emit(rep, fmt, _text_classify)
            return _exit_for(rep)
        if args.command == "comitants":
            _emit(comitants_report(_read_system(args)), fmt, _text_comitants)
        elif args.command == "lines":
            _emit(lines_report(_read_system(args)), fmt, _text_lines)
        elif args.command == "singular":
            _emit(singular_report(_read_system(args)), fmt, _text_singular)
        elif args.command == "representative":
            _emit(representative_report(args.config, _params(args.param)), fmt, _text_system)
        elif args.command == "perturb":
            _emit(perturb_report(args.config, _params(args.param), Fraction(args.eps)), fmt, _text_system)
        elif args.command == "selftest":
            rep = run_selftest()
            _emit(rep, fmt, _text_selftest)
            return EXIT_OK if not rep["failures"] else EXIT_INTERNAL
    except UnsupportedSystem as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except NoPerturbation as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, DegenerateInput, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except QSL4Error as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
