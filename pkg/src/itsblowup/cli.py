"""Command-line front end.

Exit status: 0 when the requested object was found or accepted, 1 when it
was shown absent or a solver gave up, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import lll, nibble, oracle
from .aux import blowup_aux, quotient_aux
from .errors import ITSError, InvalidGraph
from .factor import find_factor
from .generators import GeneratorSpec, add_isolated, gen_random
from .graph import TransversalBlowup, complement, dump_instance, load_instance, validate, verify_its

SWEEP_HEADER = ["thickness", "D", "s", "r", "trials", "successes", "mean_rounds"]


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _instance(args):
    try:
        graph, s_file = load_instance(_read(args.instance))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read instance {args.instance!r}: {exc}") from exc
    s = getattr(args, "s", None)
    s = s if s is not None else s_file
    return graph, s


def _need_s(s):
    if s is None:
        raise UsageError("--s is required (the instance does not record one)")
    if s < 1:
        raise UsageError("--s must be positive")
    return s


def _emit_json(args, obj) -> None:
    _write(getattr(args, "output", None), json.dumps(obj, ensure_ascii=False) + "\n")


# -- subcommands ----------------------------------------------------------

def cmd_generate(args) -> int:
    params = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} is not key=value")
        params[key] = None if value == "none" else int(value) if value.lstrip("-").isdigit() else Fraction(value)
    try:
        spec = GeneratorSpec(args.kind, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    graph = spec.build()
    if args.isolated:
        graph = add_isolated(graph, args.isolated)
    _write(args.output, dump_instance(graph, args.s))
    return 0


def _solve_once(graph, s, solver, seed, eps=Fraction(1), max_resamples=10**4, a=None, budget=oracle.DEFAULT_NODE_BUDGET,
                restarts=4):
    """Run one solver; returns (its or None, rounds, extra json)."""
    if solver == "exhaustive":
        return oracle.find_its(graph, s, budget), 0, {}
    if solver == "lll":
        if a is None:
            a = min(lll.default_a(s, validate(graph).max_block_avg), validate(graph).thickness)
        its, stats = lll.solve(graph, s, lll.LllConfig(a=a, max_resamples=max_resamples, rng_seed=seed))
        return its, stats.resamples, {"stats": stats.to_json_obj()}
    if solver == "nibble":
        res = nibble.solve(graph, s, eps, nibble.NibbleConfig(seed=seed, lll_max_resamples=max_resamples,
                                                                restarts=restarts))
        return res.its, res.rounds, {"log": res.log}
    raise UsageError(f"unknown solver {solver!r}")


def cmd_solve(args) -> int:
    graph, s = _instance(args)
    s = _need_s(s)
    try:
        its, _, extra = _solve_once(graph, s, args.solver, args.seed, Fraction(args.eps), args.max_resamples,
                                    args.a, args.budget, args.restarts)
    except (lll.BudgetExceeded, nibble.RetriesExhausted) as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return 1
    if its is None:
        print("no ITS exists")
        return 1
    report = verify_its(graph, its)
    if not report.accepted:  # never trust a solver
        print(f"internal error: solver output rejected: {report.to_json_obj()}", file=sys.stderr)
        return 1
    if args.round_log and "log" in extra:
        _write(args.round_log, "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in extra["log"]))
    _emit_json(args, its.to_json_obj(graph.r))
    return 0


def cmd_count(args) -> int:
    graph, s = _instance(args)
    s = _need_s(s)
    report = oracle.count_its(graph, s, args.t, args.budget)
    _emit_json(args, report.to_json_obj())
    return 0


def cmd_verify(args) -> int:
    graph, _ = _instance(args)
    try:
        cand = TransversalBlowup.from_json_obj(json.loads(_read(args.candidate)))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read candidate {args.candidate!r}: {exc}") from exc
    report = verify_its(graph, cand)
    _emit_json(args, report.to_json_obj())
    return 0 if report.accepted else 1


def cmd_complement(args) -> int:
    graph, s = _instance(args)
    _write(args.output, dump_instance(complement(graph), s))
    return 0


def cmd_reduce(args) -> int:
    graph, s = _instance(args)
    s = _need_s(s)
    aux = blowup_aux(graph, s) if args.kind == "blowup" else quotient_aux(graph, s)
    _write(args.output, dump_instance(aux.graph, 1))
    return 0


def cmd_factor(args) -> int:
    graph, s = _instance(args)
    s = _need_s(s)
    res = find_factor(graph, s, args.strategy, budget=args.budget)
    if res.factor is None:
        print(f"no factor found: {res.reason}; hypotheses {json.dumps(res.hypotheses)}", file=sys.stderr)
        return 1
    _emit_json(args, [its.to_json_obj(graph.r) for its in res.factor])
    return 0


def _sweep_cell(job):
    thickness, D, s, r, cap, trials, seed, solver, eps = job
    successes, rounds = 0, 0
    for k in range(trials):
        graph = gen_random(r, thickness, D, cap, seed + k)
        try:
            its, used, _ = _solve_once(graph, s, solver, seed + k, eps)
        except ITSError:
            continue
        if its is not None and verify_its(graph, its).accepted:
            successes += 1
            rounds += used
    mean = rounds / successes if successes else 0.0
    return [thickness, str(D), s, r, trials, successes, f"{mean:.3f}"]


def cmd_sweep(args) -> int:
    s, D = args.s, Fraction(args.D)
    lo = args.min_thickness if args.min_thickness is not None else int(s * D)
    hi = args.max_thickness if args.max_thickness is not None else int((s + 2) * D)
    if args.trials < 1 or args.step < 1 or lo > hi or lo < s:
        raise UsageError("need trials >= 1, step >= 1 and s <= min thickness <= max thickness")
    jobs = [(n, D, s, args.r, args.local_cap, args.trials, args.seed, args.solver, Fraction(args.eps))
            for n in range(lo, hi + 1, args.step)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_sweep_cell, jobs))
    else:
        rows = [_sweep_cell(j) for j in jobs]
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", encoding="utf-8", newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="itsblowup", description="Independent transversal blow-ups in multipartite graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_, func, with_s=True):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("instance", help="instance JSON file, or - for stdin")
        if with_s:
            sp.add_argument("--s", type=int, help="blow-up size (defaults to the instance's s)")
        sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.set_defaults(func=func)
        return sp

    g = sub.add_parser("generate", help="write a generated instance",
                       description="Build an instance. Parameters are key=value, e.g. s=2 D=3.")
    g.add_argument("kind", choices=["theorem417", "theorem418", "szabo_tardos", "random", "theorem58", "bounded_degree"])
    g.add_argument("param", nargs="*", help="key=value generator parameters")
    g.add_argument("--s", type=int, help="record this blow-up size in the instance")
    g.add_argument("--isolated", type=int, default=0, help="append this many isolated vertices to every block")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    sp = instance_cmd("solve", "find an ITS", cmd_solve)
    sp.add_argument("--solver", choices=["exhaustive", "lll", "nibble"], default="exhaustive")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--eps", default="1", help="slack for the nibble solver (rational)")
    sp.add_argument("--a", type=int, help="prune target for the lll solver")
    sp.add_argument("--max-resamples", type=int, default=10**4)
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_NODE_BUDGET)
    sp.add_argument("--restarts", type=int, default=4, help="fresh nibble runs allowed after a failed one")
    sp.add_argument("--round-log", help="write the nibble round log (JSON lines) here")

    sp = instance_cmd("count", "count ITSs exactly", cmd_count)
    sp.add_argument("--t", type=int, required=True, help="parameter of the counting bound")
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_NODE_BUDGET)

    sp = instance_cmd("verify", "check a candidate ITS", cmd_verify, with_s=False)
    sp.add_argument("candidate", help="candidate JSON file")

    instance_cmd("complement", "write the r-partite complement", cmd_complement, with_s=False)

    sp = instance_cmd("reduce", "write the blow-up or quotient reduction", cmd_reduce)
    sp.add_argument("--kind", choices=["blowup", "quotient"], default="blowup")

    sp = instance_cmd("factor", "find a factor of ITSs", cmd_factor)
    sp.add_argument("--strategy", choices=["augment", "exhaustive"], default="augment")
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_NODE_BUDGET)

    sw = sub.add_parser("sweep", help="success rate against thickness on random instances",
                        description="One CSV row per thickness; trial k uses seed base+k.")
    sw.add_argument("--s", type=int, default=1)
    sw.add_argument("--D", default="2", help="target block average degree (rational)")
    sw.add_argument("--r", type=int, default=4)
    sw.add_argument("--local-cap", type=int, default=1)
    sw.add_argument("--min-thickness", type=int)
    sw.add_argument("--max-thickness", type=int)
    sw.add_argument("--step", type=int, default=1)
    sw.add_argument("--trials", type=int, default=50)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--solver", choices=["exhaustive", "lll", "nibble"], default="exhaustive")
    sw.add_argument("--eps", default="1")
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("-o", "--output")
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidGraph) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ITSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
