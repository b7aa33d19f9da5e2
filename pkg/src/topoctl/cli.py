"""Command-line front end: ``topoctl gen|solve|experiment|oracle``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import oracles
from .algorithms import (Infeasible, heuristic_strong_total, mmsi, mst_baseline,
                         mtsi_broadcast)
from .core import InstanceError, generate_instance, load_instance, save_instance
from .experiment import (LABELS, ExperimentConfig, gnuplot_summary, raw_csv,
                         run_experiment, summary_csv)
from .graph import build_graph, format_edges, interference
from .predicates import (Broadcast, StrongConnectivity, check, parse_predicate,
                         validate)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < value < float("inf"):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text}")
    return value


def _predicate(text: str):
    try:
        return parse_predicate(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _size_list(text: str) -> tuple[int, ...]:
    return tuple(_positive_int(s) for s in text.split(",") if s.strip())


def _name_list(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    unknown = [s for s in names if s not in LABELS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown algorithm(s): {', '.join(unknown)}")
    return names


def _write(text: str, out) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen(args) -> int:
    if args.source is not None and not 0 <= args.source < args.nodes:
        raise UsageError(f"source {args.source} is not a node id")
    inst = generate_instance(args.nodes, args.grid, args.seed, args.source)
    save_instance(inst, args.out)
    print(f"{args.out} n={inst.n} checksum={inst.checksum()}")
    return EXIT_OK


def _report(inst, objective, rho, value, predicate, extra=None) -> dict:
    rep = interference(inst, rho)
    g = build_graph(inst, rho)
    report = {
        "objective": objective,
        "predicate": str(predicate),
        "n": inst.n,
        "value": value,
        "max_sender": rep.max_sender,
        "total_sender": rep.total_sender,
        "total_receiver": rep.total_receiver,
        "radii": rho.radii.tolist(),
        "sender": list(rep.sender),
        "verified": check(g, inst, predicate),
    }
    if extra:
        report.update(extra)
    return report


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    obj = args.objective
    if obj == "mmsi":
        p = args.predicate or args.predicate_opt
        if p is None:
            raise UsageError("mmsi needs a predicate, e.g. 'strong' or 'kedge:2'")
        try:
            validate(p, inst.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        res = mmsi(inst, p)
        report = _report(inst, obj, res.rho, res.level, p,
                         {"probes": [list(x) for x in res.probes]})
        rho = res.rho
    elif obj == "broadcast":
        s = args.source if args.source is not None else inst.source
        if s is None:
            raise UsageError("broadcast needs a source (--source or a 'source' line in the file)")
        if not 0 <= s < inst.n:
            raise UsageError(f"source {s} is not a node id")
        res = mtsi_broadcast(inst, s)
        rho = res.rho
        report = _report(inst, obj, rho, res.total, Broadcast(s))
    elif obj == "strong":
        res = heuristic_strong_total(inst)
        rho = res.rho
        report = _report(inst, obj, rho, res.total, StrongConnectivity(),
                         {"running_total": res.running_total})
    else:
        res = mst_baseline(inst)
        rho = res.rho
        report = _report(inst, obj, rho, res.total, StrongConnectivity(),
                         {"note": LABELS["mst_baseline"]})
    if args.edges:
        _write(format_edges(build_graph(inst, rho)), args.edges)
    print(json.dumps(report, indent=2 if args.pretty else None))
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        config = ExperimentConfig(sizes=args.sizes, trials=args.trials, grid=args.grid,
                                  seed=args.seed, algorithms=args.algorithms)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_experiment(config, jobs=args.jobs)
    _write(summary_csv(result), args.out)
    if args.raw:
        _write(raw_csv(result), args.raw)
    if args.summary:
        _write(gnuplot_summary(result), args.summary)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    p = args.predicate
    try:
        validate(p, inst.n)
        if args.kind == "mmsi":
            res = oracles.mmsi_linear_scan(inst, p)
            value = res.level
        else:
            res = oracles.exhaustive_min_total(inst, p)
            value = res.total
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(_report(inst, f"oracle-{args.kind}", res.rho, value, p)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topoctl", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random instance file")
    g.add_argument("-n", "--nodes", type=_positive_int, required=True)
    g.add_argument("--grid", type=_positive_float, default=1000.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--source", type=int)
    g.add_argument("-o", "--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run an algorithm on an instance file")
    s.add_argument("instance")
    s.add_argument("objective", choices=["mmsi", "broadcast", "strong", "mst"])
    s.add_argument("predicate", nargs="?", type=_predicate)
    s.add_argument("-p", "--predicate", dest="predicate_opt", type=_predicate)
    s.add_argument("-s", "--source", type=int)
    s.add_argument("--edges", help="also write the edge list (u v per line)")
    s.add_argument("--pretty", action="store_true")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("experiment", help="random-instance study, CSV output")
    e.add_argument("--sizes", type=_size_list, default=(10, 20, 30, 50, 70, 100))
    e.add_argument("--trials", type=_positive_int, default=100)
    e.add_argument("--grid", type=_positive_float, default=1000.0)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--algorithms", type=_name_list, default=("heuristic", "mst_baseline"))
    e.add_argument("-o", "--out", help="summary CSV path (default stdout)")
    e.add_argument("--raw", help="per-trial CSV path")
    e.add_argument("--summary", help="gnuplot-style summary table path")
    e.add_argument("-j", "--jobs", type=_positive_int, default=1)
    e.set_defaults(func=cmd_experiment)

    o = sub.add_parser("oracle", help="brute-force reference on a small instance")
    o.add_argument("instance")
    o.add_argument("kind", choices=["mmsi", "total"])
    o.add_argument("-p", "--predicate", type=_predicate, default=StrongConnectivity())
    o.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"topoctl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exc:
        print(json.dumps({"infeasible": True, "predicate": str(exc.predicate),
                          "saturated_edges": exc.num_edges}))
        print(f"topoctl: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (OSError, InstanceError) as exc:
        print(f"topoctl: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
