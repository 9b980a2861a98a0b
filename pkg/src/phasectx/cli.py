"""Command-line front end: ``phasectx {synth,expand,verify,count,simulate}``.

Exit codes: 0 success, 1 validation failure, 2 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from .core import CapacityError, Circuit, DomainError, gate_count_report
from .expansion import CostModel, expansion_cost
from .fileio import (
    load_json,
    circuit_from_dict,
    diagonal_from_dict,
    load_circuit,
    load_diagonal,
    render_text,
    save_circuit,
    circuit_to_dict,
)
from .sim import DEFAULT_CAP, check_diagonal_equiv, circuit_unitary
from .synthesis import (
    DiagonalSpec,
    ExpansionStrategy,
    blocks_from_runs,
    choose_expansion,
    synth_diagonal,
)

EXIT_OK, EXIT_INVALID, EXIT_CAPACITY = 0, 1, 2

STRATEGIES = {s.value: s for s in ExpansionStrategy}
MODELS = {m.value: m for m in CostModel}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _block_report(spec: DiagonalSpec, strategy, model) -> list[dict]:
    d, n = spec.params.d, spec.params.n
    _, blocks = blocks_from_runs(spec.runs)
    out = []
    for b in blocks:
        e = choose_expansion(b.l, d, n, strategy, model)
        out.append({
            "l": b.l,
            "terms": e.pairs(),
            "entangler_control_levels": expansion_cost(e, CostModel.CONTROL_LEVELS),
        })
    return out


def _synth_report(spec: DiagonalSpec, c: Circuit, strategy, model) -> dict:
    counts = gate_count_report(c).as_dict()
    counts["runs"] = spec.num_runs
    return {"counts": counts, "blocks": _block_report(spec, strategy, model)}


def cmd_synth(args) -> int:
    spec = load_diagonal(args.input)
    strategy, model = STRATEGIES[args.strategy], MODELS[args.model]
    c = synth_diagonal(spec, strategy, args.cancel, model)
    report = _synth_report(spec, c, strategy, model)
    if args.out:
        save_circuit(c, args.out)
    else:
        report["circuit"] = circuit_to_dict(c)
    print(_dump(report))
    if args.pretty:
        sys.stdout.write(render_text(c))
    return EXIT_OK


def cmd_expand(args) -> int:
    strategy, model = STRATEGIES[args.strategy], MODELS[args.model]
    e = choose_expansion(args.l, args.d, args.n, strategy, model)
    cost = expansion_cost(e, model)
    print(_dump({
        "l": args.l,
        "d": args.d,
        "n": args.n,
        "strategy": strategy.value,
        "model": model.value,
        "terms": e.pairs(),
        "cost": list(cost) if isinstance(cost, tuple) else cost,
    }))
    return EXIT_OK


def cmd_verify(args) -> int:
    c = load_circuit(args.circuit)
    spec = load_diagonal(args.diagonal)
    r = check_diagonal_equiv(c, spec, tol=args.tol, leak_tol=args.leak_tol, cap=args.cap)
    if args.json:
        print(_dump(r.as_dict()))
    else:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} max_deviation={r.max_deviation:.3e} max_leakage={r.max_leakage:.3e} "
              f"tol={r.tol:g} leak_tol={r.leak_tol:g}")
    return EXIT_OK if r.passed else EXIT_INVALID


def cmd_count(args) -> int:
    obj = load_json(args.input)
    if "gates" in obj:
        c = circuit_from_dict(obj)
        counts = gate_count_report(c).as_dict()
        print(_dump({"counts": counts}))
        return EXIT_OK
    spec = diagonal_from_dict(obj)
    strategy, model = STRATEGIES[args.strategy], MODELS[args.model]
    c = synth_diagonal(spec, strategy, args.cancel, model)
    print(_dump(_synth_report(spec, c, strategy, model)))
    return EXIT_OK


def cmd_simulate(args) -> int:
    c = load_circuit(args.circuit)
    u = circuit_unitary(c, cap=args.cap)
    with np.printoptions(precision=args.precision, suppress=True, linewidth=200, threshold=10**6):
        print(u)
    return EXIT_OK


def _add_synth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="standard")
    p.add_argument("--model", choices=sorted(MODELS), default=CostModel.CONTROL_LEVELS.value,
                   help="cost model for --strategy brute")
    p.add_argument("--cancel", action="store_true", help="run the adjacent-inverse peephole pass")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phasectx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a diagonal into a circuit")
    p.add_argument("input", help="diagonal JSON file")
    p.add_argument("-o", "--out", help="circuit JSON output path")
    p.add_argument("--pretty", action="store_true", help="also print one gate per line")
    _add_synth_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("expand", help="signed base-d expansion of l")
    p.add_argument("l", type=int)
    p.add_argument("d", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default="standard")
    p.add_argument("--model", choices=sorted(MODELS), default=CostModel.CONTROL_LEVELS.value)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="check a circuit against a diagonal by simulation")
    p.add_argument("circuit")
    p.add_argument("diagonal")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--leak-tol", type=float, default=1e-12)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="gate counts for a circuit or a diagonal")
    p.add_argument("input", help="circuit or diagonal JSON file")
    _add_synth_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("simulate", help="print the unitary of a small circuit")
    p.add_argument("circuit")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--precision", type=int, default=4)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
