"""``ticover`` command line.

Every subcommand emits one or more reports (JSON by default, CSV with
``--format csv``). Rationals are authoritative; each numeric field carries a
``*_decimal`` twin for reading only. Exit codes: 0 success, 1 a witness,
violation or failed claim where none was expected, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import instances as fam
from .audit import (
    Exhausted,
    RatioWitness,
    TruthfulnessViolation,
    adversary_game,
    approximation_ratio,
    deviation_search,
    order_statistic_closed_form,
    order_statistic_lower_bound,
    unknown_lengths_probe,
)
from .core import Instance, Lottery
from .io import (
    InstanceFormatError,
    format_number,
    instance_data,
    instance_digest,
    number_fields,
    output_data,
    parse_instance,
    parse_number,
    render,
    serialize_instance,
)
from .mechanisms import MechanismError, mechanism_name, parse_mechanism
from .reproduce import run_all
from .solver import optimal_placement

FAMILIES = ("random", "wci1", "wci2", "singleton-group", "two-cluster", "weighted-median-worst",
            "unknown-lengths")

OK, WITNESS, VIOLATION, FAIL = "OK", "WITNESS", "VIOLATION", "FAIL"


class UsageError(Exception):
    pass


def _number(text: str) -> Fraction:
    try:
        return parse_number(text, "argument")
    except InstanceFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _weights(text: str) -> list[Fraction]:
    return [_number(w) for w in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--instance", metavar="FILE", help="instance JSON file ('-' for stdin)")
    source.add_argument("--family", choices=FAMILIES, help="build a named instance instead of reading one")
    source.add_argument("--n", type=int)
    source.add_argument("--seed", type=int, default=0)
    source.add_argument("--grid-step", type=_number, default=Fraction(1, 4))
    source.add_argument("--span", type=_number, default=Fraction(8))
    source.add_argument("--gap", type=_number, default=Fraction(2))
    source.add_argument("--k", type=int, default=1, help="group size for weighted-median-worst")
    source.add_argument("--epsilon", type=_number, default=Fraction(1, 2))
    source.add_argument("--second", action="store_true",
                        help="unknown-lengths: take the shrunk instance of the pair")

    mech = argparse.ArgumentParser(add_help=False)
    mech.add_argument("--mechanism", required=True, metavar="SPEC",
                      help="kth:<k>, median, uniform-statistic, weighted-median, convex:<p1,...>, control:<name>")

    parser = argparse.ArgumentParser(prog="ticover", description="Truthful interval covering workbench")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common, source], help="emit an instance file")
    sub.add_parser("solve", parents=[common, source], help="optimal placement and social cost")
    sub.add_parser("mech", parents=[common, source, mech], help="run a mechanism")
    sub.add_parser("ratio", parents=[common, source, mech], help="approximation ratio on one instance")
    p = sub.add_parser("audit", parents=[common, source, mech], help="search for profitable misreports")
    p.add_argument("--agent", type=int, help="only this agent id (default: every agent)")
    p.add_argument("--misreport-step", type=_number, default=Fraction(1, 4))

    p = sub.add_parser("adversary", parents=[common, mech], help="adversary game against a deterministic mechanism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=_number, default=Fraction(1, 1000))
    p.add_argument("--max-steps", type=int)

    p = sub.add_parser("lower-bound", parents=[common], help="lower bound for a mix of order statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", type=_weights, help="comma separated; default uniform")

    p = sub.add_parser("probe", parents=[common, mech], help="unknown-lengths probe")
    p.add_argument("--epsilon", type=_number, default=Fraction(1, 2))

    p = sub.add_parser("reproduce", parents=[common], help="re-derive every bound as a pass/fail table")
    p.add_argument("--quick", action="store_true", help="smaller samples for a smoke run")
    p.add_argument("--seed", type=int, default=0)
    return parser


def load_instance(args) -> Instance:
    if args.instance and args.family:
        raise UsageError("give either --instance or --family, not both")
    if args.instance:
        try:
            if args.instance == "-":
                text = sys.stdin.read()
            else:
                with open(args.instance, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.instance}: {exc.strerror}") from None
        return parse_instance(text)
    if not args.family:
        raise UsageError("an instance is required: --instance FILE or --family NAME")
    name, n = args.family, args.n
    if name == "weighted-median-worst":
        return fam.weighted_median_worst(args.k, args.epsilon)
    if name == "unknown-lengths":
        return fam.unknown_length_pair(args.epsilon)[1 if args.second else 0]
    if n is None:
        raise UsageError(f"--family {name} needs --n")
    if name == "random":
        return fam.random_instance(fam.GeneratorParams(n, seed=args.seed, grid_step=args.grid_step,
                                                       span=args.span))
    builders = {"wci1": fam.wci1, "wci2": fam.wci2, "singleton-group": fam.singleton_group}
    if name == "two-cluster":
        return fam.two_cluster_seed(n)
    return builders[name](n, args.gap)


def _echo(argv: Sequence[str]) -> str:
    return " ".join(["ticover", *argv])


def _head(argv, args, inst: Instance | None = None, mech=None) -> dict:
    report = {"command": _echo(argv)}
    if mech is not None:
        report["mechanism"] = mechanism_name(mech)
    if inst is not None:
        report["instance_digest"] = instance_digest(inst)
    return report


def cmd_generate(argv, args):
    inst = load_instance(args)
    if args.format == "json":
        return serialize_instance(inst), 0
    data = instance_data(inst)
    rows = [{"covering_length": data["covering_length"], **a} for a in data["agents"]]
    return render(rows, "csv"), 0


def cmd_solve(argv, args):
    inst = load_instance(args)
    p, sc = optimal_placement(inst)
    r = _head(argv, args, inst)
    r["placement"] = output_data(p)
    r.update(number_fields("opt", sc))
    r["status"] = OK
    return [r], 0


def cmd_mech(argv, args):
    inst = load_instance(args)
    mech = parse_mechanism(args.mechanism)
    out = mech(inst)
    r = _head(argv, args, inst, mech)
    r["lottery" if isinstance(out, Lottery) else "placement"] = output_data(out)
    r["status"] = OK
    return [r], 0


def cmd_ratio(argv, args):
    inst = load_instance(args)
    mech = parse_mechanism(args.mechanism)
    rep = approximation_ratio(mech, inst)
    r = _head(argv, args, inst, mech)
    r["output"] = output_data(rep.mechanism_output)
    r["opt_placement"] = output_data(rep.optimal_placement)
    r.update(number_fields("sc", rep.mechanism_cost))
    r.update(number_fields("opt", rep.optimal_cost))
    r.update(number_fields("ratio", rep.ratio))
    r["status"] = OK
    return [r], 0


def cmd_audit(argv, args):
    inst = load_instance(args)
    mech = parse_mechanism(args.mechanism)
    ids = [a.id for a in inst.agents] if args.agent is None else [args.agent]
    reports, code = [], 0
    for agent_id in ids:
        try:
            inst.agent(agent_id)
        except KeyError:
            raise UsageError(f"no agent with id {agent_id}") from None
        w = deviation_search(mech, inst, agent_id, step=args.misreport_step)
        r = _head(argv, args, inst, mech)
        r["agent"] = agent_id
        if w is None:
            r["status"] = OK
        else:
            code = 1
            r["misreport"] = {"s": format_number(w.misreport.s), "length": format_number(w.misreport.length)}
            r.update(number_fields("true_cost", w.true_cost))
            r.update(number_fields("deviated_cost", w.deviated_cost))
            if w.realization is not None:
                r["realization"] = f"kth:{w.realization}"
            r["status"] = WITNESS
        reports.append(r)
    return reports, code


def _outcome_fields(outcome) -> tuple[dict, str, int]:
    fields: dict = {"outcome": outcome.status}
    if isinstance(outcome, RatioWitness):
        fields["instance"] = instance_data(outcome.instance)
        fields["output"] = output_data(outcome.output)
        fields.update(number_fields("sc", outcome.mechanism_cost))
        fields.update(number_fields("opt", outcome.optimal_cost))
        fields.update(number_fields("ratio", outcome.ratio))
        fields.update(number_fields("bound", outcome.bound))
        return fields, (WITNESS if outcome.holds else FAIL), (0 if outcome.holds else 1)
    if isinstance(outcome, TruthfulnessViolation):
        w = outcome.witness
        fields["instance"] = instance_data(outcome.instance)
        fields["agent"] = w.agent
        fields["misreport"] = {"s": format_number(w.misreport.s), "length": format_number(w.misreport.length)}
        fields.update(number_fields("true_cost", w.true_cost))
        fields.update(number_fields("deviated_cost", w.deviated_cost))
        return fields, VIOLATION, 1
    assert isinstance(outcome, Exhausted)
    fields["steps"] = outcome.steps
    fields["reason"] = outcome.reason
    return fields, FAIL, 1


def cmd_adversary(argv, args):
    mech = parse_mechanism(args.mechanism)
    t = adversary_game(mech, args.n, args.delta, args.max_steps)
    r = _head(argv, args, mech=mech)
    r["instance_digest"] = instance_digest(t.steps[-1].instance)
    r["rounds"] = len(t.steps)
    r["mirrored"] = t.mirrored
    r["family"] = t.family
    fields, status, code = _outcome_fields(t.outcome)
    r.update(fields)
    r["status"] = status
    return [r], code


def cmd_lower_bound(argv, args):
    n = args.n
    weights = args.weights if args.weights is not None else [Fraction(1, n)] * n
    value = order_statistic_lower_bound(weights, n)
    r = _head(argv, args)
    r["n"] = n
    r["weights"] = [format_number(w) for w in weights]
    r.update(number_fields("lower_bound", value))
    r.update(number_fields("closed_form", order_statistic_closed_form(weights, n)))
    r.update(number_fields("floor", Fraction(3, 2) - Fraction(1, n)))
    r["status"] = OK
    return [r], 0


def cmd_probe(argv, args):
    mech = parse_mechanism(args.mechanism)
    outcome = unknown_lengths_probe(mech, args.epsilon)
    r = _head(argv, args, outcome.instance, mech)
    fields, status, code = _outcome_fields(outcome)
    r.update(fields)
    r["status"] = status
    return [r], code


def cmd_reproduce(argv, args):
    claims = run_all(quick=args.quick, seed=args.seed)
    for c in claims:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}", file=sys.stderr)
    rows = [{"command": _echo(argv), "claim": c.name, "expected": c.expected, "measured": c.measured,
             "status": "PASS" if c.passed else FAIL} for c in claims]
    return rows, 0 if all(c.passed for c in claims) else 1


COMMANDS = {
    "generate": cmd_generate,
    "solve": cmd_solve,
    "mech": cmd_mech,
    "ratio": cmd_ratio,
    "audit": cmd_audit,
    "adversary": cmd_adversary,
    "lower-bound": cmd_lower_bound,
    "probe": cmd_probe,
    "reproduce": cmd_reproduce,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, code = COMMANDS[args.command](argv, args)
    except (UsageError, InstanceFormatError, MechanismError, ValueError) as exc:
        print(f"ticover {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = result if isinstance(result, str) else render(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
