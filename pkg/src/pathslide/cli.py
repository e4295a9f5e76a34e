"""Command-line front end.

Exit codes: 0 reachable / success, 10 unreachable, 2 input error,
3 capacity error, 11 witness replay failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import bounds_report
from .errors import (
    CapacityError,
    InvalidInstanceError,
    ParseError,
    PathSlideError,
    ReplayError,
    UnsupportedModeError,
)
from .fpt import solve_auto, solve_fpt
from .graph import ReconfigStep, edge, replay
from .instances import (
    Instance,
    gen_complete,
    gen_cycle,
    gen_extremal_treedepth,
    gen_grid,
    gen_path,
    gen_random_fixed_cr,
    gen_star,
    load_instance,
    random_path,
    serialize_instance,
)
from .statespace import DEFAULT_STATE_CAP, bfs_solve, build_state_graph, export_dot

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_UNREACHABLE = 10
EXIT_REPLAY = 11


@dataclass
class RunConfig:
    command: str
    algorithm: str = "auto"
    mode: str = "decide"
    state_cap: int = DEFAULT_STATE_CAP
    seed: Optional[int] = None
    output: Optional[str] = None
    json: bool = False

    def __post_init__(self):
        if self.mode == "optimize" and self.algorithm not in ("auto", "bfs"):
            raise UnsupportedModeError(
                "optimize mode needs --alg auto or bfs; the length-parameterized "
                "algorithm only decides reachability"
            )


def format_witness(inst: Instance, seq: Sequence[ReconfigStep], sep: str = "\n") -> str:
    lab = inst.label
    return sep.join(
        f"({lab(s.add[0])} {lab(s.add[1])}) ({lab(s.remove[0])} {lab(s.remove[1])})" for s in seq
    )


_STEP = re.compile(r"\(\s*(\S+)\s+(\S+)\s*\)\s*\(\s*(\S+)\s+(\S+)\s*\)")


def parse_witness(inst: Instance, text: str) -> list[ReconfigStep]:
    ids = {inst.label(v): v for v in range(inst.graph.n)}
    steps = []
    for line_no, chunk in enumerate(re.split(r"[\n;]", text), 1):
        chunk = chunk.strip()
        if not chunk or chunk.startswith("#"):
            continue
        m = _STEP.fullmatch(chunk)
        if not m:
            raise ParseError(line_no, f"cannot read step {chunk!r}")
        try:
            a, b, c, d = (ids[t] for t in m.groups())
        except KeyError as exc:
            raise ParseError(line_no, f"unknown vertex {exc.args[0]!r}") from None
        steps.append(ReconfigStep(edge(a, b), edge(c, d)))
    return steps


def _emit(cfg: RunConfig, pairs: dict) -> None:
    if cfg.json:
        text = json.dumps(pairs, indent=2) + "\n"
    else:
        text = "".join(f"{k}={v}\n" for k, v in pairs.items())
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(path: str, cfg: RunConfig) -> int:
    inst = load_instance(path)
    if cfg.algorithm == "bfs":
        res = bfs_solve(inst, mode=cfg.mode, cap=cfg.state_cap)
    elif cfg.algorithm == "fpt":
        res = solve_fpt(inst)
    else:
        res = solve_auto(inst, mode=cfg.mode, cap=cfg.state_cap)
    report = {
        "reachable": "yes" if res.reachable else "no",
        "min_moves": "unknown" if res.min_moves is None else res.min_moves,
        "witness": "none" if res.witness is None else format_witness(inst, res.witness, "; "),
        "engine": res.engine,
    }
    report.update((k, v) for k, v in res.stats.items() if k != "engine")
    _emit(cfg, report)
    return EXIT_OK if res.reachable else EXIT_UNREACHABLE


def cmd_statespace(path: str, cfg: RunConfig, dot: bool = False) -> int:
    inst = load_instance(path)
    sg = build_state_graph(inst.graph, inst.k, cap=cfg.state_cap)
    out = export_dot(sg) if dot else ""
    out += f"states={len(sg.states)} moves={len(sg.moves)}\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_bounds(path: str, cfg: RunConfig) -> int:
    inst = load_instance(path)
    rep = bounds_report(inst.graph)
    _emit(cfg, dict(line.split("=", 1) for line in rep.lines()))
    return EXIT_OK


def cmd_verify(path: str, witness_path: str) -> int:
    inst = load_instance(path)
    with open(witness_path, encoding="utf-8") as fh:
        seq = parse_witness(inst, fh.read())
    try:
        end = replay(inst.graph, inst.start, seq)
    except ReplayError as exc:
        print(f"verified=no failed_step={exc.index} reason={exc.reason}")
        return EXIT_REPLAY
    if end != inst.goal:
        print(f"verified=no failed_step={len(seq)} reason=final path differs from goal")
        return EXIT_REPLAY
    print(f"verified=yes steps={len(seq)}")
    return EXIT_OK


def cmd_gen(args, cfg: RunConfig) -> int:
    seed = 0 if cfg.seed is None else cfg.seed
    fam = args.family
    if fam == "path":
        g = gen_path(args.n)
    elif fam == "cycle":
        g = gen_cycle(args.n)
    elif fam == "complete":
        g = gen_complete(args.n)
    elif fam == "star":
        g = gen_star(args.n)
    elif fam == "grid":
        g = gen_grid(args.w, args.h)
    elif fam == "extremal":
        g = gen_extremal_treedepth(args.d, args.branch)
    else:
        g = gen_random_fixed_cr(args.n, args.r, seed)
    rng = random.Random(seed)
    start = random_path(g, args.k, rng)
    goal = random_path(g, args.k, rng)
    if start is None or goal is None:
        raise InvalidInstanceError(f"no path with {args.k} edges found in the generated graph")
    text = serialize_instance(Instance(g, start, goal))
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    env_cap = os.environ.get("PRC_CAP")
    default_cap = int(env_cap) if env_cap else DEFAULT_STATE_CAP

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=default_cap, help="visited-state cap")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--json", action="store_true", help="JSON instead of key=value lines")

    parser = argparse.ArgumentParser(prog="pathslide", description="Path sliding reconfiguration solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="decide or optimize an instance")
    p.add_argument("file")
    p.add_argument("--alg", choices=["auto", "bfs", "fpt"], default="auto")
    p.add_argument("--mode", choices=["decide", "optimize"], default="decide")

    p = sub.add_parser("statespace", parents=[common], help="materialize the state graph")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")

    p = sub.add_parser("bounds", parents=[common], help="path-count bounds report")
    p.add_argument("file")

    p = sub.add_parser("verify", parents=[common], help="replay a witness file")
    p.add_argument("file")
    p.add_argument("witness")

    p = sub.add_parser("gen", parents=[common], help="generate an instance file")
    p.add_argument("family", choices=["path", "cycle", "complete", "star", "grid", "extremal", "random-cr"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--w", type=int, default=4)
    p.add_argument("--h", type=int, default=4)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--branch", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            algorithm=getattr(args, "alg", "auto"),
            mode=getattr(args, "mode", "decide"),
            state_cap=args.cap,
            seed=args.seed,
            output=args.out,
            json=args.json,
        )
        if args.command == "solve":
            return cmd_solve(args.file, cfg)
        if args.command == "statespace":
            return cmd_statespace(args.file, cfg, dot=args.dot)
        if args.command == "bounds":
            return cmd_bounds(args.file, cfg)
        if args.command == "verify":
            return cmd_verify(args.file, args.witness)
        return cmd_gen(args, cfg)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (PathSlideError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
