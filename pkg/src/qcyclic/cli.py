"""Command-line front end.

Exit codes: 0 pass (or partial), 1 verification failure, 2 usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import checks
from .codes import (
    DEFAULT_BUDGET,
    MAX_BUILD_M,
    CyclicCode,
    build_code,
    code_from_descriptor,
    descriptor,
    dual,
    extend,
)
from .derived import gray_image, subfield_subcode, trace_code
from .distance import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    THEOREMS,
    bch_lower_bound,
    claimed_lower,
    min_distance,
    verify_distance_theorem,
)
from .errors import CodingError, InapplicableM, InvariantViolation
from .galois import build_context, format_modulus, load_moduli
from .weights import defining_set_size, modulus_for

CODE_COMMANDS = ("build", "params", "dual", "extend", "trace", "subfield", "gray")
VERIFY_TARGETS = (
    "lemma41", "lemma43_46", "lemma521", "thm522_partial", "duadic", "lcd",
    "dual_identities", "delsarte", "type2", "dims", "distance_theorems", "macwilliams", "all",
)


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """``"1,3,5"``, ``"1..4"`` or a mix such as ``"1..3,6"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list {text!r}")
    return out


def _int(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_int, default=DEFAULT_BUDGET, help="max codewords to enumerate")
    common.add_argument("--seed", type=_int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=_int, default=DEFAULT_SAMPLES)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--modulus-file", type=Path, default=None)

    p = argparse.ArgumentParser(prog="qcyclic", description="Quaternary cyclic codes C(i,m) of length 4^m - 1.")
    sub = p.add_subparsers(dest="command", required=True)

    for name in CODE_COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=f"{name} report for C(i,m)")
        sp.add_argument("pos", nargs="*", type=int, metavar="I M")
        sp.add_argument("--i", dest="i", type=int, choices=(0, 1))
        sp.add_argument("--m", dest="m", type=int)
        sp.add_argument("--descriptor", type=Path, help="code descriptor JSON instead of I M")

    sp = sub.add_parser("verify", parents=[common], help="check a claim family")
    sp.add_argument("target", choices=VERIFY_TARGETS)
    sp.add_argument("--m", type=parse_int_list, default=None)
    sp.add_argument("--max-a", type=_int, default=10**6)
    sp.add_argument("--a-range", type=parse_int_list, default=None)
    sp.add_argument("--l-range", type=parse_int_list, default=None)
    sp.add_argument("--which", choices=THEOREMS, default=None)
    sp.add_argument("--fast", action="store_true")

    sp = sub.add_parser("table", parents=[common], help="CSV of parameters and bounds")
    sp.add_argument("ms", nargs="*", type=parse_int_list)
    sp.add_argument("--m", dest="m_opt", type=parse_int_list, default=None)
    return p


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def make_report(command: str, inputs: dict, results, status: str, args, modulus=None) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "provenance": {"seed": args.seed, "budget": args.budget, "modulus": modulus},
        "status": status,
    }


def _distance_dict(code, args) -> dict:
    rep = min_distance(code, args.budget, args.seed, args.samples)
    d = rep.to_dict()
    if rep.exact is None:
        d["lower_method"] = "bound"
        d["upper_method"] = "sampled"
    return d


def _code_summary(code, args, extra: dict | None = None) -> dict:
    out = {"n": code.n, "k": code.k, "q": code.q, "d": _distance_dict(code, args),
           "methods": {"n": "exact", "k": "exact"}}
    if isinstance(code, CyclicCode):
        delta, mult = bch_lower_bound(code)
        out["bch"] = {"delta": delta, "multiplier": mult, "method": "bound"}
    if extra:
        out.update(extra)
    return out


def _moduli(args):
    return load_moduli(args.modulus_file) if args.modulus_file else None


def _resolve_code(args) -> tuple[CyclicCode, int | None]:
    moduli = _moduli(args)
    if args.descriptor:
        d = json.loads(args.descriptor.read_text())
        ctx = build_context(int(d["m"]), d.get("modulus"), moduli=moduli)
        return code_from_descriptor(d, ctx), d.get("i")
    i, m = args.i, args.m
    if len(args.pos) == 2:
        i, m = args.pos
    elif args.pos:
        raise UsageError("expected two positional arguments: I M")
    if i is None or m is None:
        raise UsageError("need I and M (positional or --i/--m) or --descriptor")
    if i not in (0, 1):
        raise UsageError("I must be 0 or 1")
    if not 1 <= m <= MAX_BUILD_M:
        raise UsageError(f"M must be in 1..{MAX_BUILD_M} for code construction")
    return build_code(i, m, build_context(m, moduli=moduli)), i


def cmd_code(args) -> dict:
    C, i = _resolve_code(args)
    inputs = {"i": i, "m": C.ctx.m}
    if args.descriptor:
        inputs["descriptor"] = str(args.descriptor)
    cmd = args.command
    if cmd == "build":
        results = {"descriptor": descriptor(C, i), "n": C.n, "k": C.k, "methods": {"k": "exact"}}
    elif cmd == "params":
        results = _code_summary(C, args)
    elif cmd == "dual":
        D = dual(C)
        results = _code_summary(D, args, {"descriptor": descriptor(D)})
    elif cmd == "extend":
        results = _code_summary(extend(C), args)
    elif cmd == "trace":
        results = _code_summary(trace_code(C), args)
    elif cmd == "subfield":
        S = subfield_subcode(C)
        results = _code_summary(S, args, {"descriptor": descriptor(S)})
    elif cmd == "gray":
        results = _code_summary(gray_image(C), args)
    else:  # pragma: no cover
        raise UsageError(cmd)
    return make_report(cmd, inputs, results, "pass", args, format_modulus(C.ctx.modulus))


def cmd_verify(args) -> dict:
    t = args.target
    moduli = _moduli(args)
    ms = args.m
    if t == "lemma41":
        res = checks.check_lemma41(args.a_range or range(2, 10), ms or range(1, 11), args.l_range or range(1, 11))
    elif t == "lemma43_46":
        res = checks.check_lemma43_46(ms or range(5, 15))
    elif t == "lemma521":
        res = checks.check_lemma521(args.max_a)
    elif t == "thm522_partial":
        res = checks.check_thm522_partial(ms or [30])
    elif t == "duadic":
        res = checks.check_duadic(_constructive(ms or [1, 2, 3, 4, 5]), moduli)
    elif t == "lcd":
        res = checks.check_lcd(_constructive(ms or [2, 4]), moduli)
    elif t == "dual_identities":
        res = checks.check_dual_identities(_constructive(ms or range(1, 7)), moduli)
    elif t == "delsarte":
        res = checks.check_delsarte(_constructive(ms or range(1, 4)), moduli)
    elif t == "type2":
        res = checks.check_type2(_constructive(ms or [1, 3]), args.budget, args.samples, args.seed, moduli)
    elif t == "dims":
        res = checks.check_dims(_constructive(ms or range(1, 7)), moduli)
    elif t == "distance_theorems":
        cases = checks.DEFAULT_THEOREM_CASES
        if args.which or ms:
            whichs = [args.which] if args.which else list(THEOREMS)
            cases = [(w, m) for w in whichs for m in (ms or sorted({m for _, m in cases}))]
        res = checks.check_distance_theorems(cases)
    elif t == "macwilliams":
        res = checks.check_macwilliams_roundtrip(_constructive(ms or range(1, 5)), args.budget, moduli)
    else:
        res = checks.check_all(args.fast, args.budget, args.samples, args.seed, moduli)
    inputs = {"target": t, "m": list(ms) if ms else None, "fast": args.fast}
    return make_report("verify", inputs, res, res["status"], args)


def _constructive(ms) -> list[int]:
    ms = list(ms)
    bad = [m for m in ms if not 1 <= m <= MAX_BUILD_M]
    if bad:
        raise UsageError(f"m values {bad} outside constructive range 1..{MAX_BUILD_M}")
    return ms


def table_rows(ms, args) -> list[dict]:
    moduli = _moduli(args)
    rows = []
    for m in ms:
        for i in (0, 1):
            row = {"i": i, "m": m, "n": modulus_for(m)}
            which = _claim_for(i, m)
            row["claimed_lower"] = claimed_lower(which, m) if which else None
            if m <= MAX_BUILD_M:
                C = build_code(i, m, build_context(m, moduli=moduli))
                row["k"], row["k_method"] = C.k, "exact"
                row["certified_lower"], _ = bch_lower_bound(C)
                row["certified_method"] = "bound"
                rep = min_distance(C, args.budget, args.seed, args.samples)
                row["exact_d"] = rep.exact
                row["d_method"] = rep.method
                row["d_upper"] = rep.upper
            else:
                row["k"], row["k_method"] = row["n"] - defining_set_size(i, m), "formula"
                row["certified_lower"] = verify_distance_theorem(which, m).certified_lower if which else None
                row["certified_method"] = "bound" if which else None
                row["exact_d"], row["d_method"], row["d_upper"] = None, "bounds_only", None
            row["pass"] = (
                (row["claimed_lower"] is None or (row["certified_lower"] or 0) >= row["claimed_lower"])
                and (row["exact_d"] is None or row["exact_d"] >= row["certified_lower"])
            )
            rows.append(row)
    return rows


def _claim_for(i: int, m: int) -> str | None:
    which = "odd_codes" if m % 2 else ("even_c0" if i == 0 else "even_c1_partial")
    try:
        claimed_lower(which, m)
    except InapplicableM:
        return None
    return which


def cmd_table(args) -> dict:
    ms = [m for group in args.ms for m in group] + (args.m_opt or [])
    if not ms:
        raise UsageError("table needs at least one m")
    rows = table_rows(ms, args)
    status = "fail" if any(not r["pass"] for r in rows) else "pass"
    return make_report("table", {"m": ms}, rows, status, args)


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

TABLE_COLUMNS = ("i", "m", "n", "k", "k_method", "claimed_lower", "certified_lower",
                 "certified_method", "exact_d", "d_method", "d_upper", "pass")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report["command"] == "table":
        w.writerow(TABLE_COLUMNS)
        for r in report["results"]:
            w.writerow(["" if r.get(c) is None else r.get(c) for c in TABLE_COLUMNS])
    else:
        w.writerow(("key", "value"))
        for k, v in _flatten(report).items():
            w.writerow((k, v))
    return buf.getvalue()


def _flatten(obj, prefix: str = "") -> dict:
    out = {}
    if isinstance(obj, dict):
        for k in sorted(obj):
            out.update(_flatten(obj[k], f"{prefix}{k}."))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for j, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}{j}."))
    else:
        out[prefix.rstrip(".")] = json.dumps(obj) if isinstance(obj, list) else obj
    return out


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run the CLI, returning (exit code, rendered output)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in CODE_COMMANDS:
            report = cmd_code(args)
        elif args.command == "verify":
            report = cmd_verify(args)
        else:
            report = cmd_table(args)
    except InvariantViolation as exc:
        return 3, f"internal invariant violated: {exc}\n"
    except (UsageError, CodingError, ValueError, OSError) as exc:
        return 2, f"error: {exc}\n"
    fmt = args.format or ("csv" if args.command == "table" else "json")
    code = 1 if report["status"] == "fail" else 0
    return code, render(report, fmt)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    (sys.stdout if code in (0, 1) else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
