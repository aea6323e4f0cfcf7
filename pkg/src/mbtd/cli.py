"""Command-line surface: generate, classify, solve, verify, play, replay, serve.

Exit codes: 0 success or verdict-pass, 1 verdict-fail, 2 usage error,
3 solver budget exhausted.  Machine output goes to stdout as JSON when
--json is set; graph arguments accept a file path or '-' for stdin.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import graphs as G
from .game import GameStatus, Player, Position, classify_outcome, status, transcript, replay_transcript
from .solver import Solver, SolverConfig, find_double_trap_move, immediate_threats
from .verify import DEFAULT_SUITE, render_summary, run_campaign

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _read_graph(source: str, fmt: str) -> G.Graph:
    text = sys.stdin.read() if source == "-" else open(source).read()
    text = text.strip()
    if fmt == "auto":
        fmt = "json-edges" if text.startswith("{") else "graph6"
    return G.parse_graph(text, fmt)


def _config(args) -> SolverConfig:
    budget = getattr(args, "budget", None)
    if budget is None:
        env = os.environ.get("MBTD_NODE_BUDGET")
        budget = int(env) if env else None
    return SolverConfig(node_budget=budget)


def _cmd_generate(args) -> int:
    if args.family == "truncated":
        if not args.params:
            raise G.GraphError("truncated needs a base family, e.g. truncated complete 4")
        base = G.generate(args.params[0], *[int(x) for x in args.params[1:]])
        g = G.truncate(base)
    else:
        g = G.generate(args.family, *[int(x) for x in args.params])
    print(G.serialize(g, args.format))
    return EXIT_OK


def _cmd_classify(args) -> int:
    g = _read_graph(args.graph, args.format)
    flags = G.validate(g)
    out: dict = {"n": g.n, "edges": g.edge_count(), **flags}
    if flags["cubic"] and g.n >= 6:
        try:
            rep = G.classify_structure(g)
            out["structure"] = {
                "t1": rep.t1, "t2": rep.t2, "t3": rep.t3,
                "k1": rep.k1, "k2": rep.k2,
                "triangles": len(rep.triangles), "diamonds": len(rep.diamonds),
            }
        except G.StructureError as exc:
            out["structure_error"] = str(exc)
        for kind in ("diamond", "triangle", "claw"):
            cert = G.find_factor(g, kind)
            out[f"{kind}_factor"] = cert is not None
    solver = Solver(g, _config(args))
    rep = classify_outcome(g, solver)
    out["outcome"] = rep.outcome.value if rep.outcome else "unknown"
    out["d_game_winner"] = rep.d_game_winner.value if rep.d_game_winner else "unknown"
    out["s_game_winner"] = rep.s_game_winner.value if rep.s_game_winner else "unknown"
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"n={out['n']} edges={out['edges']} cubic={out['cubic']} "
              f"connected={out['connected']} bipartite={out['bipartite']}")
        if "structure" in out:
            s = out["structure"]
            print(f"vertex types: t1={s['t1']} t2={s['t2']} t3={s['t3']} "
                  f"(k1={s['k1']}, k2={s['k2']}); "
                  f"triangles={s['triangles']} diamonds={s['diamonds']}")
            print("factors: " + ", ".join(
                f"{k}: {'yes' if out[f'{k}_factor'] else 'no'}"
                for k in ("diamond", "triangle", "claw")))
        print(f"class: {out['outcome']}")
    return EXIT_OK if out["outcome"] != "unknown" else EXIT_BUDGET


def _cmd_solve(args) -> int:
    g = _read_graph(args.graph, args.format)
    solver = Solver(g, _config(args))
    p = Position.initial(g, Player(args.first))
    res = solver.solve(p)
    if args.json:
        print(json.dumps({
            "winner": res.winner.value if res.winner else "unknown",
            "best_move": res.best_move,
            "principal_line": list(res.principal_line),
            "nodes": res.stats.get("nodes", res.nodes),
            "memo_hits": res.stats.get("memo_hits"),
            "elapsed": res.stats.get("elapsed"),
        }, sort_keys=True))
    else:
        if res.unknown:
            print("winner: unknown (budget exhausted)")
        else:
            print(f"winner: {res.winner.value}")
            if res.best_move is not None:
                print(f"best move: {res.best_move}")
    return EXIT_BUDGET if res.unknown else EXIT_OK


def _cmd_verify(args) -> int:
    suite = list(DEFAULT_SUITE) if args.suite == ["default"] else args.suite
    summary = run_campaign(suite, out=args.out, workers=args.workers)
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        print(render_summary(summary))
    if summary["verdict"] == "pass":
        return EXIT_OK
    return EXIT_BUDGET if summary["verdict"] == "inconclusive" else EXIT_FAIL


def _cmd_replay(args) -> int:
    text = sys.stdin.read() if args.transcript == "-" else open(args.transcript).read()
    p = replay_transcript(text)
    print(f"replayed {len(p.history)} moves; status: {status(p).value}")
    return EXIT_OK


def _print_board(p: Position) -> None:
    marks = {None: ".", Player.DOMINATOR: "D", Player.STALLER: "S"}
    labels = p.graph.label_map()
    cells = []
    for v in range(p.graph.n):
        tag = f"({labels[v]})" if v in labels else ""
        cells.append(f"{v}{tag}:{marks[p.owners[v]]}")
    print("  ".join(cells))


def _cmd_play(args) -> int:
    if args.graph == "-":
        # the graph is the first stdin line; later lines are interactive moves
        text = sys.stdin.readline().strip()
        fmt = args.format
        if fmt == "auto":
            fmt = "json-edges" if text.startswith("{") else "graph6"
        g = G.parse_graph(text, fmt)
    else:
        g = _read_graph(args.graph, args.format)
    human = Player(args.as_role)
    engine = human.other()
    p = Position.initial(g, Player(args.first))
    solver = Solver(g, _config(args))
    print(f"you play {human.value}; engine plays {engine.value}; {p.to_move.value} moves first")
    while status(p) is GameStatus.ONGOING:
        _print_board(p)
        if args.hints:
            th = immediate_threats(p)
            if th.staller_wins_now:
                print(f"hint: one-move completions at {sorted(th.staller_wins_now)}")
            if p.to_move is Player.STALLER:
                trap = find_double_trap_move(p)
                if trap is not None:
                    print(f"hint: double-trap move available: {trap}")
        if p.to_move is human:
            raw = input(f"your move ({p.to_move.value}) - free vertex id: ").strip()
            try:
                v = int(raw)
            except ValueError:
                print(f"not a vertex id: {raw!r}")
                continue
            if not (0 <= v < g.n) or not p.is_free(v):
                print(f"illegal move {v}; free: {p.free_vertices()}")
                continue
            p = p.apply_move(v)
        else:
            res = solver.solve(p)
            if res.unknown:
                print("engine budget exhausted")
                return EXIT_BUDGET
            print(f"engine plays {res.best_move}")
            p = p.apply_move(res.best_move)
    _print_board(p)
    final = status(p)
    print(f"game over: {final.value}")
    if args.save:
        with open(args.save, "w") as fh:
            fh.write(transcript(p))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mbtd", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a graph from a named family")
    p.add_argument("family", choices=sorted(G.GENERATOR_CATALOG))
    p.add_argument("params", nargs="*", help="integer parameters")
    p.add_argument("--format", choices=["json-edges", "graph6"], default="json-edges")
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("classify", parents=[common],
                       help="structure report and outcome class")
    p.add_argument("graph", help="path or - for stdin")
    p.add_argument("--format", choices=["auto", "json-edges", "graph6"], default="auto")
    p.add_argument("--budget", type=int, default=None, help="solver node budget")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("solve", parents=[common],
                       help="exact winner for one first player")
    p.add_argument("graph", help="path or - for stdin")
    p.add_argument("--first", choices=["dominator", "staller"], required=True)
    p.add_argument("--format", choices=["auto", "json-edges", "graph6"], default="auto")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("verify", parents=[common],
                       help="run verification campaigns")
    p.add_argument("suite", nargs="*", default=["default"],
                   help="case ids, or 'default' for the full suite")
    p.add_argument("--out", default=None, help="write JSON report here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("replay", help="validate and summarize a transcript")
    p.add_argument("transcript", help="path or - for stdin")
    p.set_defaults(fn=_cmd_replay)

    p = sub.add_parser("play", help="interactive game against the engine")
    p.add_argument("graph", help="path or - for stdin")
    p.add_argument("--as", dest="as_role", choices=["dominator", "staller"],
                   required=True)
    p.add_argument("--first", choices=["dominator", "staller"], default="dominator")
    p.add_argument("--hints", action="store_true")
    p.add_argument("--save", default=None, help="write the transcript here")
    p.add_argument("--format", choices=["auto", "json-edges", "graph6"], default="auto")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=_cmd_play)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("MBTD_PORT", "8321")))
    p.set_defaults(fn=_cmd_serve)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (G.GraphError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
