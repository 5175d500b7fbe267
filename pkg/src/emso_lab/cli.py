"""Command-line entry point ``emso-lab``.

Every subcommand accepts ``--config FILE``: ``key = value`` lines whose keys
are flag names (dashes or underscores).  Values from the file act as defaults
and explicit flags override them.  Grids and lists are comma separated.
"""
from __future__ import annotations

import argparse
import configparser
import math
import sys
from pathlib import Path

from . import experiments as ex
from .constructions import build_W
from .game import solve_ehr
from .graphio import load_graph, save_graph, write_graph6
from .moments import (
    best_k, k_star, log_E_X1, log_E_X2, log_variance_bound_X2, oscillation_report,
)
from .witness import (
    canonical_distinguished, canonical_phi2_partition, phi1_report, phi2_report, search_phi1_witness,
)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def _k_range(text: str) -> list[int]:
    """'5', '3,4,9' or 'lo:hi' (inclusive)."""
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return list(_ints(text))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file with defaults for the flags")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _sampling(p: argparse.ArgumentParser, target: bool = True) -> None:
    if target:
        p.add_argument("--target", default="phiC1",
                       help="phiC1..3, phiI1..3, ext1..3, classify-clique, classify-independent, "
                            "or mso:<builtin name or sentence>")
    p.add_argument("--model", choices=ex.MODELS, default="gnp")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=ex.default_threads())
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--n-block", type=int, default=15)
    p.add_argument("--budget", type=int, default=1 << 24)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emso-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw G(n,p) or block graphs, print graph6 lines")
    _common(p)
    _sampling(p, target=False)
    p.set_defaults(samples=1)

    p = sub.add_parser("decide", help="evaluate targets on graph files")
    _common(p)
    p.add_argument("graphs", nargs="+")
    p.add_argument("--target", action="append", help="repeatable; default: the six sentences")
    p.add_argument("--budget", type=int, default=1 << 24)

    p = sub.add_parser("classify", help="partition labels for graph files or sampled graphs")
    _common(p)
    p.add_argument("graphs", nargs="*")
    _sampling(p, target=False)

    p = sub.add_parser("game", help="winner of the set-then-two-vertices game")
    _common(p)
    p.add_argument("action", choices=("solve",))
    p.add_argument("--a", required=True, help="graph file for A (Spoiler's set round is played here)")
    p.add_argument("--b", required=True, help="graph file for B")
    p.add_argument("--symmetric", action="store_true", help="let Spoiler pick the set in either graph")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--budget", type=int, default=1 << 24)

    p = sub.add_parser("moments", help="log-moments of the clique counts")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--log-n", type=float)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--k", default="1:10", help="k values: 'lo:hi' or a comma list")
    p.add_argument("--oscillation", action="store_true",
                   help="rows along the two critical sequences indexed by --k")

    p = sub.add_parser("witness", help="W_a witness checks")
    _common(p)
    p.add_argument("action", choices=("search", "check"))
    p.add_argument("--graph", help="graph file for 'search'")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--repaired", action="store_true", help="use the repaired PROD/TREE/START parts")
    p.add_argument("--budget", type=int, default=1 << 22)

    p = sub.add_parser("sweep", help="Monte Carlo over an n-grid and/or p-grid")
    _common(p)
    _sampling(p)
    p.add_argument("--n-grid", type=_ints)
    p.add_argument("--p-grid", type=_floats)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or not argv:
        return
    cp = configparser.ConfigParser()
    cp.read_string("[emso_lab]\n" + Path(known.config).read_text())
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    command = next((t for t in argv if t in sub.choices), None)
    if command is None:
        return
    sp = sub.choices[command]
    actions = {a.dest: a for a in sp._actions}
    defaults = {}
    for key, raw in cp["emso_lab"].items():
        dest = key.replace("-", "_")
        if dest not in actions or dest == "config":
            raise SystemExit(f"unknown config key {key!r} for {command}")
        act = actions[dest]
        if isinstance(act, argparse._StoreTrueAction):
            defaults[dest] = cp["emso_lab"].getboolean(key)
        elif act.type is not None:
            defaults[dest] = act.type(raw)
        else:
            defaults[dest] = raw
    sp.set_defaults(**defaults)


def _config_from(args) -> ex.ExperimentConfig:
    return ex.ExperimentConfig(
        target=getattr(args, "target", None) or "phiC1", model=args.model, n=args.n, p=args.p,
        samples=args.samples, seed=args.seed, ell=args.ell, n_block=args.n_block,
        n_grid=getattr(args, "n_grid", None), p_grid=getattr(args, "p_grid", None),
        budget=args.budget, threads=args.threads, out=args.out, format=args.format,
    )


def _cmd_sample(args) -> None:
    cfg = _config_from(args)
    graphs = [ex.sample_graph(cfg, i) for i in range(cfg.samples)]
    if args.out and len(graphs) == 1:
        save_graph(graphs[0], args.out)
        return
    ex.write_output("".join(write_graph6(g) + "\n" for g in graphs), args.out)


def _cmd_decide(args) -> None:
    targets = args.target or list(ex.SENTENCES)
    rows = []
    for path in args.graphs:
        g = load_graph(path)
        for t in targets:
            cfg = ex.ExperimentConfig(target=t, budget=args.budget)
            rows.append({"graph": path, "target": t, "value": ex.evaluate_target(cfg, g)})
    meta = {"command": "decide", "targets": targets}
    ex.write_output(ex.render(rows, meta, args.format, ("graph", "target", "value")), args.out)


def _cmd_classify(args) -> None:
    if args.graphs:
        rows = ex.classify_batch(args.graphs)
        meta = {"command": "classify", "graphs": args.graphs}
    else:
        cfg = _config_from(args)
        rows = ex.classify_batch(cfg)
        meta = {"command": "classify", **cfg.key()}
    ex.write_output(ex.render(rows, meta, args.format), args.out)


def _cmd_game(args) -> None:
    a, b = load_graph(args.a), load_graph(args.b)
    out = solve_ehr(a, b, budget=args.budget, trace=args.trace, symmetric=args.symmetric)
    lines = [out.winner]
    for mv in out.trace or ():
        choice = sorted(mv.choice) if isinstance(mv.choice, frozenset) else mv.choice
        lines.append(f"round {mv.round}: {mv.player} plays {choice} in {mv.side}")
    ex.write_output("\n".join(lines) + "\n", args.out)


def _num(x: float):
    return x if math.isfinite(x) else str(x)


def _cmd_moments(args) -> None:
    ks = _k_range(args.k)
    if args.oscillation:
        rows = [vars(r).copy() for r in oscillation_report(ks, args.p)]
        meta = {"command": "moments", "oscillation": True, "p": args.p, "k": args.k}
        ex.write_output(ex.render(rows, meta, args.format), args.out)
        return
    if (args.n is None) == (args.log_n is None):
        raise SystemExit("give exactly one of --n and --log-n")
    log_n = math.log(args.n) if args.n is not None else args.log_n
    ks_opt = k_star(log_n, args.p) if 0 < args.p < 1 and log_n > 0 else math.nan
    bk = best_k(log_n, args.p) if math.isfinite(ks_opt) else ""
    rows = []
    for k in ks:
        rows.append({
            "k": k, "log_n": log_n,
            "log_EX1": log_E_X1(log_n, k, args.p).log_value,
            "log_EX2": log_E_X2(log_n, k, args.p).log_value,
            "log_var_bound": log_variance_bound_X2(log_n, k, args.p).log_value,
            "k_star": ks_opt, "best_k": bk,
        })
    meta = {"command": "moments", "log_n": log_n, "p": args.p, "k": args.k}
    ex.write_output(ex.render(rows, meta, args.format), args.out)


def _cmd_witness(args) -> None:
    if args.action == "check":
        g = build_W(args.a)
        lines = []
        if args.a >= 3:
            rep = phi1_report(g, g.full, canonical_distinguished(args.a), args.repaired)
            lines += [f"phi1 {k} {'pass' if v else 'fail'}" for k, v in rep.items()]
        if args.a >= 2:
            part = canonical_phi2_partition(g, g.full, tuple(range(g.n)))
            lines += [f"phi2 item {k} {'pass' if v else 'fail'}" for k, v in phi2_report(g, part).items()]
        ex.write_output("\n".join(lines) + "\n", args.out)
        return
    if not args.graph:
        raise SystemExit("witness search needs --graph")
    found = search_phi1_witness(load_graph(args.graph), args.a, budget=args.budget)
    if found is None:
        text = "none\n"
    else:
        text = "X " + " ".join(map(str, sorted(found.X))) + "\n"
        if found.dv is not None:
            d = found.dv
            text += (f"x {d.x} y1 {d.y1} y2 {' '.join(map(str, d.y2))} "
                     f"z1 {d.z1} z2 {d.z2} w {d.w} h {d.h}\n")
    ex.write_output(text, args.out)


def _cmd_sweep(args) -> None:
    cfg = _config_from(args)
    ex.write_output(ex.run_sweep(cfg), args.out)


COMMANDS = {
    "sample": _cmd_sample, "decide": _cmd_decide, "classify": _cmd_classify, "game": _cmd_game,
    "moments": _cmd_moments, "witness": _cmd_witness, "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    _apply_config(parser, argv)
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"emso-lab: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
