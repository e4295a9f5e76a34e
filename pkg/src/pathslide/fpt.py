"""Decision procedure parameterized by path length.

The search grows a set of vertices the sliding path provably reaches. Each
growth step is a bounded tree-depth search. It stops with either a long
loose path or a set the path can never leave. Running the same procedure
from the goal and then stitching both halves along loose paths decides
the instance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .bounds import solve_complete_graph
from .errors import InvalidCertificateError, UnsupportedModeError
from .graph import (
    Graph,
    Path,
    ReconfigSequence,
    canon,
    relabel_sequence,
    replay,
    reverse_sequence,
)
from .instances import Instance
from .loose import (
    LoosePathCertificate,
    find_loose_path,
    slide_to_endpoint,
    transfer_between_loose_paths,
)
from .statespace import DEFAULT_STATE_CAP, SearchResult, bfs_solve, count_paths
from .treedepth import (
    LoosePathFound,
    TreedepthDecomposition,
    constructive_decomposition,
    solve_bounded_treedepth,
)

AUTO_BFS_PROBE = 200_000


@dataclass
class WinWinOutcome:
    kind: str  # "loose-path" or "inescapable-set"
    reached: frozenset
    witnesses: dict = field(default_factory=dict)
    certificate: Optional[LoosePathCertificate] = None
    decomposition: Optional[TreedepthDecomposition] = None


def _lift(td: TreedepthDecomposition, origin: tuple[int, ...]) -> TreedepthDecomposition:
    parent = {origin[v]: (None if a is None else origin[a]) for v, a in td.parent.items()}
    return TreedepthDecomposition(frozenset(parent), parent, td.depth)


def _decompose(g: Graph, scope, blockers, k: int):
    """Induced subgraph on ``scope`` with a decomposition in subgraph ids."""
    sub, origin = g.induced_subgraph(scope)
    index = {v: i for i, v in enumerate(origin)}
    td = constructive_decomposition(sub, [index[b] for b in blockers if b in index], k)
    if isinstance(td, LoosePathFound):
        raise AssertionError(f"scope unexpectedly holds loose path {td.path}")
    return sub, origin, index, td


def escape_test(g: Graph, p: Path, q: Path, k: int, reached, v: int) -> SearchResult:
    """Can ``p`` reach a path through ``v`` without leaving ``reached + {v}``?

    ``v`` joins the blocker chain of the decomposition, so the free part is
    a subset of ``reached``, which holds no loose path.
    """
    scope = set(reached) | {v}
    sub, origin, index, td = _decompose(g, scope, set(p) | set(q) | {v}, k)
    local = Instance(sub, tuple(index[x] for x in p), tuple(index[x] for x in p))
    target = index[v]
    res = solve_bounded_treedepth(local, td, pred=lambda path: target in path, protect=[target])
    if res.witness is not None:
        res.witness = relabel_sequence(res.witness, origin)
    if res.final is not None:
        res.final = canon(origin[x] for x in res.final)
    return res


def win_win(g: Graph, p: Path, q: Path, k: int) -> WinWinOutcome:
    """Grow a reachable vertex set from ``p`` until it either contains a
    loose path or has no escaping boundary edge."""
    p, q = canon(p), canon(q)
    reached = set(p)
    witnesses: dict[int, ReconfigSequence] = {x: [] for x in p}
    while True:
        found = None
        tried = set()
        for u, v in sorted((u, v) for u in reached for v in g.adj[u] if v not in reached):
            if v in tried:
                continue
            tried.add(v)
            res = escape_test(g, p, q, k, reached, v)
            if res.reachable:
                found = (v, res)
                break
        if found is None:
            _, origin, _, td = _decompose(g, reached, set(p) | set(q), k)
            return WinWinOutcome(
                "inescapable-set", frozenset(reached), witnesses, decomposition=_lift(td, origin)
            )
        v, res = found
        route = find_loose_path(g, p, q, k, scope=reached | {v})
        if route is not None:
            entry = slide_to_endpoint(g, route, res.witness, route[0], start=p)
            witnesses[v] = res.witness
            cert = LoosePathCertificate(route, tuple(entry))
            return WinWinOutcome("loose-path", frozenset(reached | {v}), witnesses, certificate=cert)
        reached.add(v)
        witnesses[v] = res.witness


def verify_inescapable(g: Graph, p: Path, q: Path, k: int, reached) -> bool:
    """Re-run every boundary escape test; True when all of them fail."""
    reached = set(reached)
    outside = {v for u in reached for v in g.adj[u] if v not in reached}
    return not any(escape_test(g, canon(p), canon(q), k, reached, v).reachable for v in outside)


def _solve_inside(g: Graph, scope, p: Path, q: Path, k: int) -> SearchResult:
    sub, origin, index, td = _decompose(g, scope, set(p) | set(q), k)
    local = Instance(sub, tuple(index[x] for x in p), tuple(index[x] for x in q))
    res = solve_bounded_treedepth(local, td)
    if res.witness is not None:
        res.witness = relabel_sequence(res.witness, origin)
    return res


def _stitch(g: Graph, p: Path, q: Path, k: int, fwd: LoosePathCertificate, back: LoosePathCertificate):
    seq = list(fwd.entry_sequence)
    cur = replay(g, p, seq)
    seq += transfer_between_loose_paths(g, fwd.route, back.route, k, cur)
    landing = replay(g, q, back.entry_sequence)
    r2 = back.route
    lo = min(r2.index(x) for x in landing)
    seq = slide_to_endpoint(g, r2, seq, r2[lo + k], start=p)
    return seq + reverse_sequence(back.entry_sequence)


def solve_fpt(inst: Instance) -> SearchResult:
    """Decide reachability; every yes answer carries a replayed witness."""
    t0 = time.perf_counter()
    stats: dict = {"engine": "fpt"}

    def finish(ok: bool, case: str, witness=None):
        stats["case"] = case
        stats["wall_time"] = round(time.perf_counter() - t0, 6)
        if ok and witness is not None and replay(inst.graph, inst.start, witness) != inst.goal:
            raise InvalidCertificateError("assembled witness does not reach the goal")
        return SearchResult(ok, witness=witness if ok else None, final=inst.goal if ok else None, stats=stats)

    g, p, q, k = inst.graph, inst.start, inst.goal, inst.k
    if p == q:
        return finish(True, "identical", [])
    comp = g.component_of(p[0])
    if not comp.issuperset(q):
        return finish(False, "disconnected")
    sub, origin = g.induced_subgraph(comp)
    index = {v: i for i, v in enumerate(origin)}
    sp = canon(index[x] for x in p)
    sq = canon(index[x] for x in q)

    def lifted(seq):
        return relabel_sequence(seq, origin)

    fwd = win_win(sub, sp, sq, k)
    stats["forward"] = fwd.kind
    if fwd.kind == "inescapable-set":
        if not fwd.reached.issuperset(sq):
            return finish(False, "inescapable-misses-goal")
        res = _solve_inside(sub, fwd.reached, sp, sq, k)
        return finish(res.reachable, "inescapable-solved", lifted(res.witness) if res.reachable else None)
    back = win_win(sub, sq, sp, k)
    stats["backward"] = back.kind
    if back.kind == "inescapable-set":
        if not back.reached.issuperset(sp):
            return finish(False, "reverse-inescapable-misses-start")
        res = _solve_inside(sub, back.reached, sp, sq, k)
        return finish(res.reachable, "reverse-inescapable-solved", lifted(res.witness) if res.reachable else None)
    seq = _stitch(sub, sp, sq, k, fwd.certificate, back.certificate)
    return finish(True, "two-loose-paths", lifted(seq))


def solve_auto(
    inst: Instance,
    mode: str = "decide",
    cap: int = DEFAULT_STATE_CAP,
    probe: int = AUTO_BFS_PROBE,
) -> SearchResult:
    """Pick an engine: complete-graph rule, plain BFS when the state space is
    small, otherwise the length-parameterized decision procedure."""
    g = inst.graph
    if g.is_complete() and mode == "decide":
        res = solve_complete_graph(inst)
        if res.reachable and count_paths(g, inst.k, limit=probe) <= probe:
            res.witness = bfs_solve(inst, cap=cap).witness
        res.stats["dispatch"] = "complete-graph"
        return res
    if g.is_forest():
        res = bfs_solve(inst, mode=mode, cap=cap)
        res.stats["dispatch"] = "tree"
        return res
    if count_paths(g, inst.k, limit=probe) <= probe:
        res = bfs_solve(inst, mode=mode, cap=cap)
        res.stats["dispatch"] = "small-state-space"
        return res
    if mode == "optimize":
        if count_paths(g, inst.k, limit=cap) > cap:
            raise UnsupportedModeError(
                "state space exceeds the cap and minimum move counts have no "
                "length-parameterized algorithm; only decide mode is available"
            )
        res = bfs_solve(inst, mode=mode, cap=cap)
        res.stats["dispatch"] = "large-bfs"
        return res
    res = solve_fpt(inst)
    res.stats["dispatch"] = "fpt"
    return res
