"""Command-line front end.

Every subcommand emits a report whose records share the shape
``{"params", "observed", "required", "holds"}`` (plus command-specific extras),
in json, csv or human format.  Exit status is 0 when every record holds, 1 when
some record fails (witnesses go to stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Callable, Iterable, Optional, Sequence

from digitbounds import __version__
from digitbounds import conjecture, descent, digits, valuation

DEFAULT_CAP = 10**7


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"lo:hi"`` (inclusive) or a single integer."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}, expected lo:hi")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_tuple(text: str) -> tuple[int, ...]:
    try:
        t = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed tuple {text!r}, expected e.g. 4,1")
    if any(x < 0 for x in t):
        raise argparse.ArgumentTypeError(f"tuple entries must be nonnegative: {text!r}")
    return t


def _span(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


def _need(r: tuple[int, int], minimum: int, name: str) -> None:
    if r[0] < minimum:
        raise UsageError(f"--{name} must be >= {minimum}, got {r[0]}:{r[1]}")


def _rec(params: dict, observed, required=None, holds: bool = True, **extra) -> dict:
    out = {"params": params, "observed": observed, "required": required, "holds": holds}
    out.update(extra)
    return out


def _summary(records: list[dict]) -> dict:
    failures = [r["params"] for r in records if not r["holds"]]
    slacks = [
        r["observed"] - r["required"]
        for r in records
        if isinstance(r["observed"], int) and isinstance(r["required"], int)
        and not isinstance(r["observed"], bool)
    ]
    return {
        "total": len(records),
        "failures": len(failures),
        "min_slack": min(slacks) if slacks else None,
        "max_slack": max(slacks) if slacks else None,
        "failure_witnesses": failures,
    }


# -- subcommands -------------------------------------------------------------
# each returns (records, extra summary fields)


def cmd_expand(a):
    dv = digits.expand(a.value, a.base)
    return [_rec({"base": a.base, "value": a.value}, list(dv.digits))], {}


def cmd_digitsum(a):
    p = {"base": a.base, "value": a.value}
    return [_rec(p, digits.digit_sum(a.value, a.base),
                 nonzero_count=digits.nonzero_count(a.value, a.base))], {}


def cmd_repunit(a):
    _need(a.k, 1, "k")
    return [_rec({"base": a.base, "k": k}, digits.repunit(a.base, k)) for k in _span(a.k)], {}


def cmd_fold(a):
    dv = digits.expand(a.value, a.base)
    t = conjecture.fold_digits(dv, a.k)
    ctx = descent.ModulusContext(a.base, a.k, a.base**a.k - 1)
    ws = descent.weighted_sum(t, ctx)
    return [_rec({"base": a.base, "value": a.value, "k": a.k}, list(t),
                 weighted_sum=ws,
                 value_mod=a.value % ctx.d, weighted_sum_mod=ws % ctx.d,
                 holds=(ws - a.value) % ctx.d == 0)], {}


def cmd_normalize(a):
    ctx = descent.ModulusContext(a.m, a.k, a.d)
    tau = descent.BUILTIN_TAUS[a.tau]
    final, trace = descent.normalize(a.tuple, ctx, tau)
    ok = trace.final_tau <= trace.initial_tau and max(final) < ctx.m
    p = {"m": a.m, "k": a.k, "d": a.d, "tuple": list(a.tuple), "tau": a.tau}
    return [_rec(p, list(final), holds=ok, trace=trace.to_dict())], {}


def _d_values(m: int, k: int, spec: str) -> list[int]:
    if spec == "all":
        return descent.divisors(m**k - 1)
    if spec == "repunit":
        return [digits.repunit(m, k)]
    if spec == "full":
        return [m**k - 1]
    try:
        return [int(spec)]
    except ValueError:
        raise UsageError(f"--d must be an integer, all, repunit or full; got {spec!r}")


def cmd_bound(a):
    _need(a.m, 2, "m")
    _need(a.k, 1, "k")
    tau = descent.BUILTIN_TAUS[a.tau]
    records = []
    for m in _span(a.m):
        for k in _span(a.k):
            for d in _d_values(m, k, a.d):
                ctx = descent.ModulusContext(m, k, d)
                bound = descent.theorem1_bound(tau, ctx)
                eb = a.entry_bound if a.entry_bound is not None else 3 * m
                oracle = descent.min_tau_over_S(tau, ctx, eb, cap=a.cap)
                records.append(_rec({"m": m, "k": k, "d": d, "tau": a.tau, "entry_bound": eb},
                                    oracle, bound, oracle >= bound, attained=oracle == bound))
    return records, {}


def cmd_tau_check(a):
    _need(a.m, 2, "m")
    _need(a.k, 1, "k")
    tau = descent.BUILTIN_TAUS[a.tau]
    records = []
    for m in _span(a.m):
        for k in _span(a.k):
            res = descent.check_tau_contract(tau, descent.ModulusContext(m, k, 1), a.sample_bound)
            records.append(_rec({"m": m, "k": k, "tau": a.tau, "sample_bound": a.sample_bound},
                                res.holds, holds=res.holds, counterexample=res.counterexample))
    return records, {}


def cmd_verify(a):
    _need(a.m, 2, "m")
    _need(a.k, 1, "k")
    _need(a.n, 1, "n")
    part = conjecture.Part.I if a.part == "part-i" else conjecture.Part.II
    recs, summary = conjecture.sweep(part, a.m, a.k, a.n, workers=a.workers, cap=a.cap,
                                     required_offset=a.required_offset)
    extra = {"equality_count": summary.equality_count,
             "equality_examples": summary.equality_examples}
    return [r.to_dict() for r in recs], extra


def _cmd_corollary(which: int):
    def run(a):
        if which == 1:
            ctx = descent.ModulusContext.repunit(a.m, a.k)
            value, ok = conjecture.corollary1_check(a.tuple, ctx)
        else:
            ctx = descent.ModulusContext.full(a.m, a.k)
            value, ok = conjecture.corollary2_check(a.tuple, ctx)
        return [_rec({"m": a.m, "k": a.k, "d": ctx.d, "tuple": list(a.tuple)}, value, a.k, ok)], {}
    return run


def cmd_legendre(a):
    _need(a.n, 0, "n")
    records = []
    for p in _span(a.p):
        if not valuation.is_prime(p):
            continue
        for n in _span(a.n):
            v = valuation.legendre_valuation(n, p)
            via_digits = (n - digits.digit_sum(n, p)) // (p - 1)
            records.append(_rec({"p": p, "n": n}, v, via_digits, v == via_digits))
    if not records:
        raise UsageError("no primes in --p range")
    return records, {}


def cmd_kummer(a):
    _need(a.a, 0, "a")
    _need(a.b, 0, "b")
    records = []
    for p in _span(a.p):
        if not valuation.is_prime(p):
            continue
        for x in _span(a.a):
            for y in _span(a.b):
                c = valuation.kummer_carries(x, y, p)
                v = valuation.p_adic_valuation(valuation.binomial(x + y, x), p)
                records.append(_rec({"p": p, "a": x, "b": y}, c, v, c == v))
    if not records:
        raise UsageError("no primes in --p range")
    return records, {}


def cmd_divisibility(a):
    _need(a.n, 1, "n")
    _need(a.k, 1, "k")
    records = []
    for n in _span(a.n):
        for k in _span(a.k):
            inst = valuation.sun_divisibility_check(n, k)
            q = inst.quotient
            records.append(_rec({"n": n, "k": k}, str(q) if q is not None else None, None,
                                inst.holds, prefactor_exact=inst.prefactor_exact,
                                divides=inst.divides))
    return records, {}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default="human")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="maximum number of instances (or tuples searched)")

    ap = argparse.ArgumentParser(prog="digitbounds", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("expand", cmd_expand, "base-m digits of a value")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--value", type=int, required=True)

    p = add("digitsum", cmd_digitsum, "digit sum and nonzero digit count")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--value", type=int, required=True)

    p = add("repunit", cmd_repunit, "(m^k - 1)/(m - 1)")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--k", type=parse_range, required=True)

    p = add("fold", cmd_fold, "fold digits by exponent class mod k")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("normalize", cmd_normalize, "run the rotate-and-split descent on a tuple")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--tuple", type=parse_tuple, required=True)
    p.add_argument("--tau", choices=sorted(descent.BUILTIN_TAUS), default="ceil")

    p = add("bound", cmd_bound, "descent lower bound vs exhaustive minimum over S")
    p.add_argument("--m", type=parse_range, required=True)
    p.add_argument("--k", type=parse_range, required=True)
    p.add_argument("--d", default="all", help="integer, 'all', 'repunit' or 'full'")
    p.add_argument("--tau", choices=sorted(descent.BUILTIN_TAUS), default="ceil")
    p.add_argument("--entry-bound", type=int, default=None, help="default 3m")

    p = add("tau-check", cmd_tau_check, "check the carry inequality and symmetry")
    p.add_argument("--m", type=parse_range, required=True)
    p.add_argument("--k", type=parse_range, default=(2, 2))
    p.add_argument("--tau", choices=sorted(descent.BUILTIN_TAUS), default="ceil")
    p.add_argument("--sample-bound", type=int, default=12)

    p = add("verify", cmd_verify, "sweep part I or part II over parameter ranges")
    p.add_argument("part", choices=("part-i", "part-ii"))
    p.add_argument("--m", type=parse_range, required=True)
    p.add_argument("--k", type=parse_range, required=True)
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--required-offset", type=int, default=0, help=argparse.SUPPRESS)

    for which in (1, 2):
        p = add(f"corollary{which}", _cmd_corollary(which), f"corollary {which} on an explicit tuple")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--tuple", type=parse_tuple, required=True)

    p = add("legendre", cmd_legendre, "v_p(n!) by floor sums vs digit sums")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--p", type=parse_range, required=True, help="primes in range are used")

    p = add("kummer", cmd_kummer, "carries vs binomial valuation")
    p.add_argument("--a", type=parse_range, required=True)
    p.add_argument("--b", type=parse_range, required=True)
    p.add_argument("--p", type=parse_range, required=True, help="primes in range are used")

    p = add("divisibility", cmd_divisibility, "exact binomial divisibility check")
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--k", type=parse_range, required=True)
    return ap


# excluded from the params echo so reports do not depend on them
_NOT_ECHOED = {"func", "format", "workers", "required_offset"}


def _echo(args) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in _NOT_ECHOED:
            continue
        out[key] = list(val) if isinstance(val, tuple) else val
    return out


def _flat(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, separators=(",", ":")) + "\n"
    records = report["records"]
    if fmt == "csv":
        pkeys = list(records[0]["params"]) if records else []
        extra = [k for k in (records[0] if records else {}) if k not in ("params", "observed", "required", "holds", "trace")]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(pkeys + ["observed", "required", "holds"] + extra)
        for r in records:
            w.writerow([_flat(r["params"][k]) for k in pkeys]
                       + [_flat(r["observed"]), _flat(r["required"]), r["holds"]]
                       + [_flat(r.get(k)) for k in extra])
        return buf.getvalue()
    lines = []
    s = report["summary"]
    if len(records) <= 50:
        for r in records:
            params = " ".join(f"{k}={_flat(v)}" for k, v in r["params"].items())
            line = f"{params}: {_flat(r['observed'])}"
            if r["required"] is not None:
                line += f" (required {_flat(r['required'])})"
            if not r["holds"]:
                line += "  FAIL"
            lines.append(line)
            for step in r.get("trace", {}).get("steps", []):
                detail = (f"rotate {step['count']}" if step["kind"] == "rotation"
                          else f"split q={step['q']} b={step['b']}")
                lines.append(f"  {detail:<16} -> {_flat(step['after'])}  sigma={step['sigma']} tau={step['tau']}")
    lines.append(f"{report['command']}: {s['total']} records, {s['failures']} failures"
                 + (f", slack {s['min_slack']}..{s['max_slack']}" if s["min_slack"] is not None else "")
                 + (f", {s['equality_count']} equality cases" if "equality_count" in s else ""))
    if s.get("equality_examples"):
        lines.append("equality examples: " + "; ".join(
            " ".join(f"{k}={v}" for k, v in e.items()) for e in s["equality_examples"]))
    lines.append(f"elapsed {report['elapsed_ms']} ms")
    return "\n".join(lines) + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    if args.workers < 1 or args.cap < 1:
        print("error: --workers and --cap must be positive", file=stderr)
        return 2
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)

    start = time.perf_counter()
    try:
        records, extra = args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    elapsed = round((time.perf_counter() - start) * 1000)

    command = args.command + (f" {args.part}" if args.command == "verify" else "")
    summary = _summary(records)
    summary.update(extra)
    report = {
        "version": __version__,
        "command": command,
        "params": _echo(args),
        "records": records,
        "summary": summary,
        "elapsed_ms": elapsed,
    }
    stdout.write(render(report, args.format))
    if summary["failures"]:
        for w in summary["failure_witnesses"][:20]:
            print("counterexample: " + json.dumps(w, sort_keys=True), file=stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
