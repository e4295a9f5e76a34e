"""Loose paths: long paths avoiding both the start and the goal, and the
maneuvers that move the sliding path onto and between them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import InvalidCertificateError, NoTransferError
from .graph import Graph, Path, ReconfigSequence, ReconfigStep, canon, replay_states, slide_step
from .statespace import SearchResult


@dataclass(frozen=True)
class LoosePathCertificate:
    route: Path
    entry_sequence: tuple[ReconfigStep, ...]


def find_loose_path(
    g: Graph,
    p: Sequence[int],
    q: Sequence[int],
    k: int,
    scope: Optional[Iterable[int]] = None,
    method: str = "dfs",
    seed: Optional[int] = None,
) -> Optional[Path]:
    """A simple path with ``2k`` edges disjoint from ``p`` and ``q``, or None.

    ``method="dfs"`` is exhaustive. ``method="color-coding"`` runs
    ceil(e^(2k) ln n) random colorings and may miss a path.
    """
    allowed = set(range(g.n)) if scope is None else set(scope)
    free = allowed - set(p) - set(q)
    if len(free) < 2 * k + 1:
        return None
    if method == "dfs":
        return _dfs_path(g, free, 2 * k)
    if method == "color-coding":
        return _color_coding_path(g, free, 2 * k, random.Random(seed))
    raise ValueError(f"unknown method {method!r}")


def _dfs_path(g: Graph, free: set, length: int) -> Optional[Path]:
    adj = g.adj
    done: set[int] = set()
    for root in sorted(free):
        if root in done:
            continue
        comp = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in free and w not in comp:
                    comp.add(w)
                    stack.append(w)
        done |= comp
        if len(comp) < length + 1:
            continue
        for s in sorted(comp):
            seq = [s]
            on = {s}
            iters = [iter(adj[s])]
            while iters:
                if len(seq) == length + 1:
                    return canon(seq)
                for w in iters[-1]:
                    if w in comp and w not in on:
                        seq.append(w)
                        on.add(w)
                        iters.append(iter(adj[w]))
                        break
                else:
                    iters.pop()
                    on.discard(seq.pop())
    return None


def _color_coding_path(g: Graph, free: set, length: int, rng: random.Random) -> Optional[Path]:
    verts = sorted(free)
    colors = length + 1
    trials = math.ceil(math.exp(colors - 1) * math.log(max(len(verts), 2)))
    full = (1 << colors) - 1
    for _ in range(trials):
        col = {v: rng.randrange(colors) for v in verts}
        # layer[v] maps color set -> predecessor vertex (None at path start)
        layer = {v: {1 << col[v]: None} for v in verts}
        history = [layer]
        for _ in range(length):
            nxt: dict = {}
            for v in verts:
                bit = 1 << col[v]
                for u in g.adj[v]:
                    if u not in layer:
                        continue
                    for mask in layer[u]:
                        if not mask & bit:
                            nxt.setdefault(v, {}).setdefault(mask | bit, u)
            layer = nxt
            history.append(layer)
        for v in sorted(layer):
            if full in layer[v]:
                seq = [v]
                mask = full
                for h in range(length, 0, -1):
                    u = history[h][seq[-1]][mask]
                    mask ^= 1 << col[seq[-1]]
                    seq.append(u)
                return canon(seq)
    return None


def _window_moves(r: Path, lo: int, k: int, target: int) -> tuple[ReconfigSequence, tuple]:
    """Slide a path occupying ``r[lo .. lo+k]`` to ``r[target .. target+k]``."""
    seq = []
    while lo < target:
        oriented = r[lo: lo + k + 1]
        seq.append(slide_step(oriented, r[lo + k + 1]))
        lo += 1
    while lo > target:
        oriented = r[lo: lo + k + 1][::-1]
        seq.append(slide_step(oriented, r[lo - 1]))
        lo -= 1
    return seq, r[lo: lo + k + 1]


def _window_start(r: Path, state: Sequence[int]) -> Optional[int]:
    """Index in ``r`` where ``state`` sits as a contiguous piece, else None."""
    pos = {x: i for i, x in enumerate(r)}
    if not all(x in pos for x in state):
        return None
    idx = [pos[x] for x in state]
    if idx[0] > idx[-1]:
        idx.reverse()
    if idx != list(range(idx[0], idx[0] + len(idx))):
        return None
    return idx[0]


def target_window(r: Path, v: int, k: int) -> int:
    """Start index of the length-``k`` window ending at ``v`` on the longer side."""
    i = r.index(v)
    return i - k if i >= k else i


def slide_to_endpoint(
    g: Graph,
    r: Path,
    entry: Union[SearchResult, Sequence[ReconfigStep]],
    v: int,
    start: Sequence[int],
) -> ReconfigSequence:
    """Extend ``entry`` (from ``start``) so that the path ends as a sub-path of
    ``r`` with endpoint ``v``.

    ``entry`` is cut at the first state meeting ``r``; that state's only
    vertex on ``r`` is its newest endpoint, from which the path runs along
    ``r`` toward whichever end of ``r`` is at least ``k`` steps away, and
    then shifts to the window ending at ``v``.
    """
    witness = entry.witness if isinstance(entry, SearchResult) else entry
    if witness is None:
        raise InvalidCertificateError("entry search carries no witness")
    k = len(start) - 1
    if len(r) < 2 * k + 1:
        raise InvalidCertificateError(f"route has {len(r) - 1} edges, need {2 * k}")
    if v not in r:
        raise InvalidCertificateError(f"vertex {v} is not on the route")
    rset = set(r)
    states = replay_states(g, start, witness)
    cut = next((i for i, st in enumerate(states) if not rset.isdisjoint(st)), None)
    if cut is None:
        raise InvalidCertificateError("entry never reaches the route")
    seq = list(witness[:cut])
    cur = states[cut]
    lo = _window_start(r, cur)
    if lo is None:
        hits = [x for x in cur if x in rset]
        if cut == 0 or len(hits) != 1 or hits[0] not in (cur[0], cur[-1]):
            raise InvalidCertificateError("route contact is not a single new endpoint")
        u = hits[0]
        oriented = cur if cur[-1] == u else cur[::-1]
        j = r.index(u)
        step = 1 if len(r) - 1 - j >= k else -1
        for t in range(1, k + 1):
            nxt = r[j + step * t]
            seq.append(slide_step(oriented, nxt))
            oriented = oriented[1:] + (nxt,)
        lo = j if step == 1 else j - k
    moves, _ = _window_moves(r, lo, k, target_window(r, v, k))
    return seq + moves


def _bridge(g: Graph, r: Path, l: Path) -> Optional[list[int]]:
    """Shortest path from ``r`` to ``l`` (multi-source BFS, smallest ids first)."""
    lset = set(l)
    parent = {x: None for x in sorted(r)}
    layer = sorted(r)
    while layer:
        nxt = []
        for u in layer:
            for w in g.adj[u]:
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        hits = sorted(w for w in nxt if w in lset)
        if hits:
            chain = [hits[0]]
            while parent[chain[-1]] is not None:
                chain.append(parent[chain[-1]])
            return chain[::-1]
        layer = nxt
    return None


def transfer_between_loose_paths(
    g: Graph, r: Path, l: Path, k: int, current: Sequence[int]
) -> ReconfigSequence:
    """Steps taking ``current`` (a sub-path of ``r``) to a path meeting ``l``."""
    lo = _window_start(r, current)
    if lo is None or len(current) != k + 1:
        raise InvalidCertificateError("current path is not a sub-path of the route")
    lset = set(l)
    if canon(r) == canon(l) or not lset.isdisjoint(current):
        return []
    shared = [x for x in r if x in lset]
    if shared:
        v = shared[0]
        moves, _ = _window_moves(r, lo, k, target_window(r, v, k))
        return moves
    bridge = _bridge(g, r, l)
    if bridge is None:
        raise NoTransferError("routes lie in different components")
    v = bridge[0]
    target = target_window(r, v, k)
    seq, window = _window_moves(r, lo, k, target)
    oriented = window if window[-1] == v else window[::-1]
    for w in bridge[1:]:
        seq.append(slide_step(oriented, w))
        oriented = oriented[1:] + (w,)
    return seq
