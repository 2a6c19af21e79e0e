"""Command-line front end.

Exit codes: 0 winning/valid, 1 losing/invalid, 2 inconclusive,
64 usage error, 65 input error.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys

from hatguess import io
from hatguess.classify import (
    analyze_cactus,
    classify_cycle,
    cycle_order,
    decide_path,
    is_path_graph,
    path_order,
    reduce_delete2,
    reduce_h5_path,
)
from hatguess.constructors import Certificate, Step, cactus_lower_bound_certificate
from hatguess.errors import (
    GuessOutOfRange,
    HatGuessError,
    IncompleteStrategy,
    NotACycle,
    SynthesisCapExceeded,
    TooLarge,
)
from hatguess.solver import SolveLimits, exact_solve, verify_strategy

EXIT_WIN, EXIT_LOSE, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hatguess", description="Hat guessing games on graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="decide a path, cycle or cactus game by formula")
    c.add_argument("file")

    s = sub.add_parser("solve", help="decide any game with the exact solver")
    s.add_argument("file")
    s.add_argument("--max-colorings", type=_positive_int, default=SolveLimits.max_colorings)
    s.add_argument("--max-nodes", type=_positive_int, default=SolveLimits.max_nodes)
    s.add_argument("--timeout", type=_positive_float, default=SolveLimits.timeout)
    s.add_argument("--cert", metavar="OUT", help="write a certificate when winning")

    v = sub.add_parser("verify", help="check a certificate against a game")
    v.add_argument("file")
    v.add_argument("--cert", required=True)

    h = sub.add_parser("hg", help="hat guessing number of a cactus graph")
    h.add_argument("file")
    h.add_argument("--cert", metavar="OUT", help="write a lower-bound certificate")

    r = sub.add_parser("reduce", help="apply a reduction and print the result")
    r.add_argument("file")
    r.add_argument("--lemma", required=True, choices=["delete2", "h5"])
    r.add_argument("--at", required=True, help="t,u,v,w for delete2; v for h5")

    e = sub.add_parser("export-cnf", help="write the DIMACS encoding")
    e.add_argument("file")
    e.add_argument("-o", "--output", required=True)
    return p


def _fmt(values) -> str:
    return ",".join(map(str, values))


def _cmd_classify(args, out) -> int:
    game = io.read_game(args.file)
    graph = game.graph
    if is_path_graph(graph):
        order = path_order(graph)
        hs = [game.hat(v) for v in order]
        d = decide_path(hs)
        out.write(("WINNING" if d.winning else "LOSING") + " (path, leaf-deletion fold)\n")
        out.write(f"order: {_fmt(order)}\n")
        out.write(f"fold: {_fmt(d.left)}\n")
        return EXIT_WIN if d.winning else EXIT_LOSE
    try:
        cycle_order(graph)
        is_cycle = True
    except NotACycle:
        is_cycle = False
    if is_cycle:
        res = classify_cycle(game)
        if not res.winning:
            out.write("LOSING (Theorem 1)\n")
            return EXIT_LOSE
        w = res.witness
        if w.condition == 0:
            out.write("WINNING (hatness-1 vertex)\n")
        else:
            out.write(f"WINNING (Theorem 1, Condition {w.condition})\n")
        out.write(f"witness: {_fmt(w.vertices)} with hatness {_fmt(w.hatnesses)}\n")
        return EXIT_WIN
    report = analyze_cactus(graph)
    if 1 in game.hatness:
        out.write("WINNING (hatness-1 vertex)\n")
        return EXIT_WIN
    if not game.is_constant():
        raise HatGuessError(
            "classify handles cactus graphs only with constant hatness; use 'solve'"
        )
    q = game.hatness[0]
    verdict = "WINNING" if q <= report.hg else "LOSING"
    out.write(f"{verdict} (Theorem 2, {report.statement}: HG = {report.hg})\n")
    return EXIT_WIN if q <= report.hg else EXIT_LOSE


def _solve_certificate(game) -> Step:
    verts = tuple(f"{v}:{h}" for v, h in zip(game.vertices, game.hatness))
    edges = tuple(f"{a}-{b}" for a, b in game.graph.sorted_edges())
    return Step("solve", (), verts + edges)


def _cmd_solve(args, out) -> int:
    game = io.read_game(args.file)
    limits = SolveLimits(args.max_colorings, args.max_nodes, args.timeout)
    try:
        verdict = exact_solve(game, limits)
    except TooLarge as exc:
        out.write("INCONCLUSIVE (max_colorings)\n")
        print(f"hatguess: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if not verdict.conclusive:
        out.write(f"INCONCLUSIVE ({verdict.limit_hit})\n")
        out.write(f"nodes: {verdict.nodes_explored}\n")
        return EXIT_INCONCLUSIVE
    if verdict.winning:
        out.write("WINNING\n")
        out.write(f"nodes: {verdict.nodes_explored}\n")
        if args.cert:
            cert = Certificate(game, verdict.strategy, (_solve_certificate(game),))
            io.write_certificate(cert, args.cert)
        return EXIT_WIN
    out.write("LOSING\n")
    out.write(f"nodes: {verdict.nodes_explored}\n")
    out.write(f"colorings: {verdict.colorings_covered}\n")
    if args.cert:
        print("hatguess: no certificate for a losing game", file=sys.stderr)
    return EXIT_LOSE


def _cmd_verify(args, out) -> int:
    game = io.read_game(args.file)
    try:
        cert = io.read_certificate(args.cert)
    except (IncompleteStrategy, GuessOutOfRange) as exc:
        out.write(f"INVALID ({exc})\n")
        return EXIT_LOSE
    if cert.game != game:
        raise HatGuessError("certificate was written for a different game")
    bad = verify_strategy(game, cert.strategy)
    if bad is None:
        out.write("VALID\n")
        return EXIT_WIN
    shown = " ".join(f"{v}={c}" for v, c in zip(game.vertices, bad))
    out.write(f"INVALID (counterexample: {shown})\n")
    return EXIT_LOSE


def _cmd_hg(args, out) -> int:
    game = io.read_game(args.file)
    report = analyze_cactus(game.graph)
    out.write(f"HG = {report.hg} (Theorem 2, {report.statement})\n")
    if args.cert:
        try:
            cert = cactus_lower_bound_certificate(game.graph)
        except SynthesisCapExceeded as exc:
            print(f"hatguess: certificate unavailable: {exc}", file=sys.stderr)
            return EXIT_INCONCLUSIVE
        io.write_certificate(cert, args.cert)
        out.write(f"certificate: {len(cert.game)} vertices, hatness {report.hg}\n")
    return EXIT_WIN


def _cmd_reduce(args, out) -> int:
    game = io.read_game(args.file)
    at = [x for x in args.at.split(",") if x]
    if args.lemma == "delete2":
        if len(at) != 4:
            raise UsageError("--lemma delete2 needs --at t,u,v,w")
        res = reduce_delete2(game, *at)
        out.write(f"# removed {_fmt(res.removed)}\n")
        for v, (old, new) in res.updates.items():
            out.write(f"# h({v}) {old} -> {new}\n")
        out.write(io.serialize_game(res.game))
        return EXIT_WIN
    if len(at) != 1:
        raise UsageError("--lemma h5 needs --at v")
    subs = reduce_h5_path(game, at[0])
    for k, sub in enumerate(subs):
        out.write(f"# subpath {k}\n")
        out.write(io.serialize_game(sub))
    return EXIT_WIN


def _cmd_export(args, out) -> int:
    game = io.read_game(args.file)
    nvars, nclauses = io.write_cnf(game, args.output)
    out.write(f"p cnf {nvars} {nclauses}\n")
    return EXIT_WIN


_COMMANDS = {
    "classify": _cmd_classify,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "hg": _cmd_hg,
    "reduce": _cmd_reduce,
    "export-cnf": _cmd_export,
}


def run_cli(argv=None, out=None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"hatguess: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hatguess: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HatGuessError, KeyError) as exc:
        print(f"hatguess: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    logging.basicConfig(level=logging.WARNING, format="hatguess: %(message)s")
    sys.exit(run_cli(argv))


if __name__ == "__main__":
    main()
