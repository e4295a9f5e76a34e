"""Exhaustive and implicit search over the space of equal-length paths."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import CapacityError, InvalidInstanceError
from .graph import Graph, Path, ReconfigSequence, canon, legal_moves
from .instances import Instance

DEFAULT_STATE_CAP = 10_000_000

Predicate = Callable[[Path], bool]


@dataclass
class SearchResult:
    reachable: bool
    min_moves: Optional[int] = None
    witness: Optional[ReconfigSequence] = None
    final: Optional[Path] = None
    stats: dict = field(default_factory=dict)

    @property
    def engine(self) -> str:
        return self.stats.get("engine", "unknown")


def format_stats(stats: dict) -> str:
    return "\n".join(f"{k}={v}" for k, v in stats.items())


def enumerate_paths(g: Graph, k: int, limit: Optional[int] = None) -> list[Path]:
    """All canonical simple paths with exactly ``k`` edges, sorted.

    With ``limit`` set, stops early once more than ``limit`` paths are found.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    adj = g.adj
    out: list[Path] = []
    stack = [(v,) for v in range(g.n - 1, -1, -1)]
    while stack:
        seq = stack.pop()
        if len(seq) == k + 1:
            # endpoints differ, so canonical iff first < last
            if seq[0] < seq[-1]:
                out.append(seq)
                if limit is not None and len(out) > limit:
                    break
            continue
        for w in reversed(adj[seq[-1]]):
            if w not in seq:
                stack.append(seq + (w,))
    out.sort()
    return out


def count_paths(g: Graph, k: int, limit: Optional[int] = None) -> int:
    """Number of canonical ``k``-edge paths, counting at most ``limit + 1``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    adj = g.adj
    total = 0
    for s in range(g.n):
        seq = [s]
        on = {s}
        iters = [iter(adj[s])]
        while iters:
            if len(seq) == k + 1:
                if seq[0] < seq[-1]:
                    total += 1
                    if limit is not None and total > limit:
                        return total
                iters.pop()
                on.discard(seq.pop())
                continue
            for w in iters[-1]:
                if w not in on:
                    seq.append(w)
                    on.add(w)
                    iters.append(iter(adj[w]))
                    break
            else:
                iters.pop()
                on.discard(seq.pop())
    return total


@dataclass
class StateGraph:
    k: int
    states: list[Path]
    moves: set[tuple[int, int]]

    def index(self) -> dict[Path, int]:
        return {s: i for i, s in enumerate(self.states)}

    def adjacency(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.states]
        for i, j in self.moves:
            nb[i].append(j)
            nb[j].append(i)
        for row in nb:
            row.sort()
        return nb

    def distances(self, source: Path) -> dict[Path, int]:
        """Plain BFS distances over the materialized graph."""
        idx = self.index()
        nb = self.adjacency()
        dist = {idx[canon(source)]: 0}
        queue = deque(dist)
        while queue:
            u = queue.popleft()
            for w in nb[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return {self.states[i]: d for i, d in dist.items()}


def build_state_graph(g: Graph, k: int, cap: int = DEFAULT_STATE_CAP) -> StateGraph:
    states = enumerate_paths(g, k, limit=cap)
    if len(states) > cap:
        raise CapacityError(cap)
    idx = {s: i for i, s in enumerate(states)}
    moves = set()
    for i, s in enumerate(states):
        for _, q in legal_moves(g, s):
            j = idx[q]
            moves.add((i, j) if i < j else (j, i))
    return StateGraph(k, states, moves)


def export_dot(sg: StateGraph) -> str:
    lines = ["graph statespace {"]
    for i, s in enumerate(sg.states):
        lines.append(f'  s{i} [label="{"-".join(map(str, s))}"];')
    for i, j in sorted(sg.moves):
        lines.append(f"  s{i} -- s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _trace(g: Graph, parent: dict, end: Path) -> ReconfigSequence:
    chain = [end]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    chain.reverse()
    seq = []
    for a, b in zip(chain, chain[1:]):
        seq.append(next(s for s, q in legal_moves(g, a) if q == b))
    return seq


def _search(
    g: Graph,
    start: Path,
    is_goal: Predicate,
    scope: Optional[frozenset] = None,
    cap: int = DEFAULT_STATE_CAP,
    keep_parents: bool = True,
    engine: str = "bfs",
) -> SearchResult:
    t0 = time.perf_counter()
    start = canon(start)
    stats = {"engine": engine, "states_expanded": 0, "states_visited": 1, "frontier_peak": 1}

    def done(reachable, depth=None, end=None, parent=None):
        stats["wall_time"] = round(time.perf_counter() - t0, 6)
        witness = None
        if reachable and parent is not None:
            witness = _trace(g, parent, end)
        return SearchResult(reachable, depth, witness, end, stats)

    parent: Optional[dict] = {start: None} if keep_parents else None
    visited = parent if parent is not None else {start}
    if is_goal(start):
        return done(True, 0, start, parent)

    adj = g.adj
    frontier = [start]
    depth = 0
    expanded = 0
    while frontier:
        depth += 1
        nxt = []
        for p in frontier:
            expanded += 1
            succ = []
            for body in (p[1:], p[-2::-1]):
                tip = body[-1]
                for w in adj[tip]:
                    if w in body or (scope is not None and w not in scope):
                        continue
                    q = body + (w,)
                    r = q[::-1]
                    if r < q:
                        q = r
                    if q not in visited:
                        succ.append(q)
            if len(succ) > 1:
                succ.sort()
            for q in succ:
                if q in visited:
                    continue
                if parent is not None:
                    parent[q] = p
                else:
                    visited.add(q)
                if len(visited) > cap:
                    stats["states_expanded"] = expanded
                    raise CapacityError(cap)
                if is_goal(q):
                    stats["states_expanded"] = expanded
                    stats["states_visited"] = len(visited)
                    return done(True, depth, q, parent)
                nxt.append(q)
        frontier = nxt
        stats["frontier_peak"] = max(stats["frontier_peak"], len(frontier))
    stats["states_expanded"] = expanded
    stats["states_visited"] = len(visited)
    return done(False)


def bfs_solve(
    inst: Instance,
    mode: str = "decide",
    cap: int = DEFAULT_STATE_CAP,
    witness: bool = True,
) -> SearchResult:
    """Implicit breadth-first search from start to goal.

    Both modes stop when the goal is first generated, which in a
    breadth-first search already happens at minimum depth; optimize mode
    additionally reports that depth. ``witness=False`` drops the parent map
    (decide mode only) to save memory.
    """
    if mode not in ("decide", "optimize"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(inst.start) != len(inst.goal):
        raise InvalidInstanceError("start and goal lengths differ")
    goal = inst.goal
    res = _search(
        inst.graph, inst.start, goal.__eq__, cap=cap,
        keep_parents=witness or mode == "optimize",
    )
    if mode == "decide":
        res.min_moves = None
    return res


def goal_predicate_bfs(
    g: Graph,
    k: int,
    start: Path,
    pred: Predicate,
    scope: Optional[Iterable[int]] = None,
    cap: int = DEFAULT_STATE_CAP,
) -> SearchResult:
    """BFS from ``start`` to the nearest state satisfying ``pred``, never
    leaving ``scope`` when one is given. Reports the minimum move count."""
    if len(start) != k + 1:
        raise InvalidInstanceError(f"start path does not have length {k}")
    sc = None
    if scope is not None:
        sc = frozenset(scope)
        if not sc.issuperset(start):
            raise InvalidInstanceError("start path leaves the search scope")
    return _search(g, start, pred, scope=sc, cap=cap)


def uses_vertex(v: int) -> Predicate:
    return lambda p: v in p


def touches(vertices: Iterable[int]) -> Predicate:
    vs = frozenset(vertices)
    return lambda p: not vs.isdisjoint(p)
