"""Command-line entry point.

Exit codes: 0 success or certified, 1 refuted or failed claims, 2 usage or
validation error, 3 I/O error.
"""

import argparse
import csv
import io
import json
import os
import sys

from . import equilibrium as eq
from . import ewl
from . import scenarios
from . import strategies as st

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def resolve_game(arg):
    if arg in ewl.PRESETS:
        return ewl.PRESETS[arg]
    if os.path.isfile(arg):
        try:
            return ewl.load_game(arg)
        except (ValueError, OSError) as exc:
            raise UsageError(f"invalid game file {arg}: {exc}") from None
    raise UsageError(f"unknown game {arg!r}; use a preset ({', '.join(ewl.PRESETS)}) or a JSON file")


def resolve_strategy(arg):
    """Named strategy (C, D, Q, R), inline JSON, or a JSON file path."""
    if arg in st.NAMED:
        return st.named(arg)
    try:
        if arg.lstrip().startswith("{"):
            return st.strategy_from_json(arg)
        if os.path.isfile(arg):
            with open(arg) as fh:
                return st.strategy_from_json(fh.read())
    except ValueError as exc:
        raise UsageError(f"invalid strategy {arg!r}: {exc}") from None
    raise UsageError(f"unknown strategy {arg!r}; valid names: {', '.join(st.NAMED)} "
                     "(or inline JSON / a JSON file)")


def search_config(args):
    try:
        return eq.SearchConfig(grid_points_per_axis=args.grid, restarts=args.restarts,
                               max_iterations=args.max_iterations, epsilon=args.epsilon,
                               seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def emit(args, text):
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_payoff(args):
    game = resolve_game(args.game)
    s_a, s_b = resolve_strategy(args.alice), resolve_strategy(args.bob)
    ctx = ewl.build_context()
    sigma = ewl.apply_strategies(ctx, s_a, s_b)
    pay = ewl.expected_payoffs(game, ctx, sigma)
    probs = ewl.outcome_probabilities(ctx, sigma)
    if args.output == "json":
        text = json.dumps({"game": game.name, "payoffs": pay.as_list(), "probabilities": probs}, indent=2) + "\n"
    elif args.output == "csv":
        text = _csv([[pay.p_a, pay.p_b] + [probs[o] for o in ewl.OUTCOMES]],
                    ["p_a", "p_b"] + [f"prob_{o}" for o in ewl.OUTCOMES])
    else:
        text = f"game: {game.name}\npayoffs: P_A = {pay.p_a:.10g}, P_B = {pay.p_b:.10g}\n"
        text += "".join(f"  tr[pi_{o} sigma] = {probs[o]:.10g}\n" for o in ewl.OUTCOMES)
    return emit(args, text)


def cmd_best_response(args):
    game = resolve_game(args.game)
    fixed = resolve_strategy(args.fixed)
    cfg = search_config(args)
    s, value = eq.best_response(game, ewl.build_context(), fixed, args.responder, args.set, cfg)
    if args.output == "json":
        text = json.dumps({"responder": args.responder, "set": args.set, "strategy": s.to_dict(),
                           "payoff": value, "config": cfg.to_dict()}, indent=2) + "\n"
    elif args.output == "csv":
        text = _csv([[args.responder, args.set, value]], ["responder", "set", "payoff"])
    else:
        text = f"best response of {args.responder} in {args.set}: payoff {value:.10g}\n{s.to_json()}\n"
    return emit(args, text)


def _cert_text(cert):
    lines = [f"verdict: {cert.verdict} (set {cert.strategy_set}, epsilon {cert.epsilon:g})",
             f"payoffs: P_A = {cert.payoffs.p_a:.10g}, P_B = {cert.payoffs.p_b:.10g}",
             f"max gains: Alice {cert.max_gain_a:.3g}, Bob {cert.max_gain_b:.3g}"]
    if cert.witness is not None:
        lines.append(f"witness ({cert.witness_player}): {cert.witness.to_json()}")
    return "\n".join(lines) + "\n"


def cmd_nash(args):
    game = resolve_game(args.game)
    s_a, s_b = resolve_strategy(args.alice), resolve_strategy(args.bob)
    cert = eq.verify_nash(game, ewl.build_context(), s_a, s_b, args.set, search_config(args))
    if args.output == "json":
        text = json.dumps(cert.to_dict(), indent=2) + "\n"
    elif args.output == "csv":
        text = _csv([[cert.verdict, cert.payoffs.p_a, cert.payoffs.p_b, cert.max_gain_a, cert.max_gain_b]],
                    ["verdict", "p_a", "p_b", "gain_a", "gain_b"])
    else:
        text = _cert_text(cert)
    code = emit(args, text)
    if code != EXIT_OK:
        return code
    return EXIT_OK if cert.certified else EXIT_REFUTED


def cmd_find_nash(args):
    game = resolve_game(args.game)
    if args.set not in ("CL", "TP"):
        raise UsageError("find-nash supports --set CL or TP")
    certs = eq.find_nash_grid(game, ewl.build_context(), args.set, search_config(args))
    if args.output == "json":
        text = json.dumps({"set": args.set, "numerical": True,
                           "equilibria": [c.to_dict() for c in certs]}, indent=2) + "\n"
    elif args.output == "csv":
        rows = [[k, json.dumps(c.profile[0].params), json.dumps(c.profile[1].params),
                 c.payoffs.p_a, c.payoffs.p_b] for k, c in enumerate(certs)]
        text = _csv(rows, ["class", "alice", "bob", "p_a", "p_b"])
    else:
        text = f"{len(certs)} equilibrium class(es) in {args.set} (numerical, grid {args.grid}):\n"
        text += "".join(f"  {c.profile[0].params} x {c.profile[1].params} -> "
                        f"({c.payoffs.p_a:.6f}, {c.payoffs.p_b:.6f})\n" for c in certs)
    return emit(args, text)


def _report_text(reports):
    out = []
    for r in reports:
        out.append(f"== {r.scenario}: {'PASS' if r.passed else 'FAIL'} ({r.runtime:.1f} s)")
        out += [f"   note: {n}" for n in r.notes]
        for c in r.claims:
            out.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.id} {c.description}: "
                       f"expected {c.expected}, observed {c.observed}")
    return "\n".join(out) + "\n"


def _run_suites(args, names):
    cfg = search_config(args)
    try:
        reports = [scenarios.SUITES[n](cfg) for n in names]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output == "json":
        text = scenarios.reports_to_json(reports)
    elif args.output == "csv":
        text = scenarios.reports_to_csv(reports)
    else:
        text = _report_text(reports)
    code = emit(args, text)
    if code != EXIT_OK:
        return code
    return EXIT_OK if all(r.passed for r in reports) else EXIT_REFUTED


def cmd_reproduce(args):
    names = ["pd", "chicken"] if args.game == "all" else [args.game]
    return _run_suites(args, names)


def cmd_properties(args):
    return _run_suites(args, ["properties"])


def _common(p, output_default="table"):
    p.add_argument("--grid", type=int, default=61, help="grid points per axis")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--max-iterations", type=int, default=500)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--output", choices=["json", "csv", "table"], default=output_default)
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="qgame", description="EWL quantum games: payoffs and equilibria")
    sub = parser.add_subparsers(dest="command", required=True)
    sets = [s.value for s in st.StrategySet]

    p = sub.add_parser("payoff", help="expected payoffs of a strategy profile")
    p.add_argument("--game", default="pd")
    p.add_argument("--alice", required=True)
    p.add_argument("--bob", required=True)
    _common(p)
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("best-response", help="search a best reply to a fixed strategy")
    p.add_argument("--game", default="pd")
    p.add_argument("--fixed", required=True)
    p.add_argument("--responder", choices=["A", "B"], required=True)
    p.add_argument("--set", choices=sets, required=True)
    _common(p)
    p.set_defaults(func=cmd_best_response)

    p = sub.add_parser("nash", help="certify or refute a profile as epsilon-Nash")
    p.add_argument("--game", default="pd")
    p.add_argument("--alice", required=True)
    p.add_argument("--bob", required=True)
    p.add_argument("--set", choices=sets, required=True)
    _common(p)
    p.set_defaults(func=cmd_nash)

    p = sub.add_parser("find-nash", help="enumerate pure equilibria on a parameter grid")
    p.add_argument("--game", default="pd")
    p.add_argument("--set", choices=["CL", "TP"], required=True)
    _common(p)
    p.set_defaults(func=cmd_find_nash)

    p = sub.add_parser("reproduce", help="run the Prisoners' Dilemma and Chicken claim suites")
    p.add_argument("--game", choices=["pd", "chicken", "all"], default="all")
    _common(p, output_default="json")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("properties", help="run the cross-module property suite")
    _common(p, output_default="json")
    p.set_defaults(func=cmd_properties)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
