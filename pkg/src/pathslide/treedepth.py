"""Bounded tree-depth machinery: elimination forests, flaps, and the
flap-removal kernel."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .graph import Graph, Path, canon, relabel_sequence
from .instances import Instance
from .statespace import (
    DEFAULT_STATE_CAP,
    Predicate,
    SearchResult,
    bfs_solve,
    goal_predicate_bfs,
)


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest over ``scope``; ``parent[v]`` is ``None`` for roots."""

    scope: frozenset
    parent: dict
    depth: int

    @classmethod
    def from_parents(cls, parent: dict) -> "TreedepthDecomposition":
        levels = _levels(parent)
        return cls(frozenset(parent), dict(parent), max(levels.values(), default=0))

    def levels(self) -> dict[int, int]:
        """Distance from the root for every scope vertex."""
        return _levels(self.parent)

    def children(self) -> dict:
        ch: dict = {v: [] for v in self.parent}
        ch[None] = []
        for v in sorted(self.parent):
            ch[self.parent[v]].append(v)
        return ch

    def ancestors(self, v: int) -> list[int]:
        out = []
        a = self.parent[v]
        while a is not None:
            out.append(a)
            a = self.parent[a]
        return out

    def is_ancestor(self, a: int, v: int) -> bool:
        while v is not None:
            if v == a:
                return True
            v = self.parent[v]
        return False

    def violations(self, g: Graph) -> list[tuple[int, int]]:
        """Edges inside ``scope`` whose endpoints are not ancestor-related."""
        bad = []
        for u, v in g.sorted_edges():
            if u in self.scope and v in self.scope:
                if not (self.is_ancestor(u, v) or self.is_ancestor(v, u)):
                    bad.append((u, v))
        return bad

    def is_valid_for(self, g: Graph) -> bool:
        if self.depth != max(self.levels().values(), default=0):
            return False
        return not self.violations(g)

    def restrict(self, origin: tuple[int, ...]) -> "TreedepthDecomposition":
        """Decomposition of the induced subgraph on ``origin``, relabeled to
        ``0 .. len(origin)-1``; dropped vertices are spliced out."""
        index = {v: i for i, v in enumerate(origin)}
        parent = {}
        for v in origin:
            a = self.parent[v]
            while a is not None and a not in index:
                a = self.parent[a]
            parent[index[v]] = None if a is None else index[a]
        return TreedepthDecomposition.from_parents(parent)


def _levels(parent: dict) -> dict[int, int]:
    lev: dict[int, int] = {}
    for v in parent:
        chain = []
        u = v
        while u is not None and u not in lev:
            chain.append(u)
            u = parent[u]
        base = -1 if u is None else lev[u]
        for w in reversed(chain):
            base += 1
            lev[w] = base
    return lev


@dataclass(frozen=True)
class LoosePathFound:
    """A path with ``2k`` edges avoiding the blocker set, found by the DFS."""

    path: Path


def _chain_and_forest(g: Graph, avoid: Iterable[int], cutoff: Optional[int]):
    chain = sorted(v for v in set(avoid) if 0 <= v < g.n)
    blocked = set(chain)
    parent: dict = {}
    prev = None
    for v in chain:
        parent[v] = prev
        prev = v
    hook = prev
    adj = g.adj
    for root in range(g.n):
        if root in parent:
            continue
        parent[root] = hook
        stack = [root]
        iters = [iter(adj[root])]
        while stack:
            if cutoff is not None and len(stack) - 1 >= cutoff:
                return LoosePathFound(canon(stack[: cutoff + 1]))
            for w in iters[-1]:
                if w not in blocked and w not in parent:
                    parent[w] = stack[-1]
                    stack.append(w)
                    iters.append(iter(adj[w]))
                    break
            else:
                stack.pop()
                iters.pop()
    return TreedepthDecomposition.from_parents(parent)


def constructive_decomposition(
    g: Graph, avoid: Iterable[int], k: int
) -> Union[TreedepthDecomposition, LoosePathFound]:
    """Blockers on a single chain, with a depth-first forest of the rest
    hung beneath it.

    If the forest would reach depth ``2k`` the root-to-node DFS path is a
    ``2k``-edge path disjoint from ``avoid`` and is returned instead.
    """
    return _chain_and_forest(g, avoid, 2 * k)


def elimination_forest(g: Graph, avoid: Iterable[int] = ()) -> TreedepthDecomposition:
    """Same shape as :func:`constructive_decomposition` with no depth cutoff;
    always valid, not necessarily shallow."""
    return _chain_and_forest(g, avoid, None)


@dataclass(frozen=True)
class Flap:
    anchor: frozenset
    members: frozenset


@dataclass
class FlapClass:
    canonical_code: str
    flaps: list = field(default_factory=list)


def find_flaps(g: Graph, s: Iterable[int]) -> list[Flap]:
    """Connected components of ``g - s``, each an ``s``-flap."""
    anchor = frozenset(s)
    seen = set(anchor)
    flaps = []
    for v in range(g.n):
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        stack = [v]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        flaps.append(Flap(anchor, frozenset(comp)))
    return flaps


def is_flap(g: Graph, s: Iterable[int], x: Iterable[int]) -> bool:
    s, x = set(s), set(x)
    if s & x:
        return False
    return all(w in s or w in x for u in x for w in g.adj[u])


class _Coder:
    """Canonical strings for labeled subtrees of a decomposition.

    A vertex is labeled by the levels of its graph-adjacent ancestors; a
    subtree's code is its root label followed by the sorted child codes.
    """

    def __init__(self, g: Graph, td: TreedepthDecomposition, alive=None):
        self.g = g
        self.td = td
        self.levels = td.levels()
        self.children = td.children()
        self.alive = alive
        self.memo: dict[int, str] = {}

    def label(self, v: int) -> str:
        lev = self.levels
        hits = sorted(lev[a] for a in self.td.ancestors(v) if self.g.has_edge(a, v))
        return ",".join(map(str, hits))

    def code(self, v: int) -> str:
        if v in self.memo:
            return self.memo[v]
        kids = [w for w in self.children[v] if self.alive is None or w in self.alive]
        c = "(" + self.label(v) + "".join(sorted(self.code(w) for w in kids)) + ")"
        self.memo[v] = c
        return c


def flap_classes(
    g: Graph, s: Iterable[int], td: TreedepthDecomposition, flaps: list[Flap]
) -> list[FlapClass]:
    """Group flaps by the canonical code of their labeled subtrees.

    Each flap must be a union of whole subtrees of ``td`` whose ancestors all
    lie in ``s``. Equal codes imply an isomorphism fixing ``s``; the converse
    need not hold.
    """
    s = frozenset(s)
    coder = _Coder(g, td)
    by_code: dict[str, FlapClass] = {}
    for flap in sorted(flaps, key=lambda f: min(f.members)):
        roots = sorted(v for v in flap.members if td.parent[v] not in flap.members)
        for v in flap.members:
            if any(w not in flap.members for w in coder.children[v]):
                raise ValueError(f"flap {sorted(flap.members)} cuts a subtree at {v}")
        for r in roots:
            if any(a not in s for a in td.ancestors(r)):
                raise ValueError(f"subtree at {r} does not hang below the anchor set")
        code = "|".join(sorted(f"{td.parent[r]}:{coder.code(r)}" for r in roots))
        by_code.setdefault(code, FlapClass(code)).flaps.append(flap)
    return list(by_code.values())


def retention(k: int) -> int:
    """Equivalent flaps kept per class: ceil((k+1)/2) + 1."""
    return (k + 2) // 2 + 1


def kernel_vertices(
    inst: Instance, td: TreedepthDecomposition, protect: Iterable[int] = ()
) -> list[int]:
    """Vertices surviving flap removal, bottom-up over ``td``.

    At every vertex ``v`` (and at the virtual super-root) the child subtrees
    are flaps over the ancestors of ``v``; within each class of equal codes
    at most ``retention(k)`` unprotected flaps are kept. Subtrees meeting the
    start, goal or ``protect`` vertices are never removed.
    """
    g = inst.graph
    if len(td.scope) != g.n or any(v not in td.scope for v in range(g.n)):
        raise ValueError("decomposition must cover every vertex of the instance")
    keep_per_class = retention(inst.k)
    guarded = set(inst.start) | set(inst.goal) | set(protect)
    children = td.children()
    levels = td.levels()
    alive = set(range(g.n))
    coder = _Coder(g, td, alive)

    hit: dict[int, bool] = {}
    order = sorted(range(g.n), key=lambda v: -levels[v])
    for v in order:
        hit[v] = v in guarded or any(hit[w] for w in children[v])

    def drop(w: int) -> None:
        stack = [w]
        while stack:
            u = stack.pop()
            alive.discard(u)
            stack.extend(children[u])

    for v in order + [None]:
        groups: dict[str, list[int]] = {}
        for w in children[v]:
            if w in alive and not hit[w]:
                groups.setdefault(coder.code(w), []).append(w)
        for members in groups.values():
            for w in members[keep_per_class:]:
                drop(w)
    return sorted(alive)


def kernelize_with_origin(
    inst: Instance, td: TreedepthDecomposition, protect: Iterable[int] = ()
) -> tuple[Instance, tuple[int, ...]]:
    keep = kernel_vertices(inst, td, protect)
    sub, origin = inst.graph.induced_subgraph(keep)
    index = {v: i for i, v in enumerate(origin)}
    labels = None
    if inst.labels is not None:
        labels = tuple(inst.labels[v] for v in origin)
    kern = Instance(
        sub,
        tuple(index[v] for v in inst.start),
        tuple(index[v] for v in inst.goal),
        labels,
    )
    return kern, origin


def kernelize(inst: Instance, td: TreedepthDecomposition) -> Instance:
    return kernelize_with_origin(inst, td)[0]


def solve_bounded_treedepth(
    inst: Instance,
    td: TreedepthDecomposition,
    pred: Optional[Predicate] = None,
    protect: Iterable[int] = (),
    mode: str = "decide",
    cap: int = DEFAULT_STATE_CAP,
) -> SearchResult:
    """Kernelize, then search the kernel.

    ``pred`` replaces the goal test; it sees paths in the ids of ``inst``.
    Any vertex the predicate depends on must be listed in ``protect``.
    Witness and final state are mapped back to the ids of ``inst``.
    """
    kern, origin = kernelize_with_origin(inst, td, protect)
    if pred is None:
        res = bfs_solve(kern, mode=mode, cap=cap)
    else:
        res = goal_predicate_bfs(
            kern.graph, kern.k, kern.start,
            lambda p: pred(tuple(origin[x] for x in p)), cap=cap,
        )
    if res.witness is not None:
        res.witness = relabel_sequence(res.witness, origin)
    if res.final is not None:
        res.final = canon(origin[x] for x in res.final)
    res.stats["engine"] = "treedepth-kernel"
    res.stats["kernel_n"] = kern.graph.n
    res.stats["original_n"] = inst.graph.n
    return res


def extremal_treedepth(d: int, branch: int) -> tuple[Graph, TreedepthDecomposition]:
    """Depth-``d`` tree built from stars of ``branch`` leaves, joined in pairs
    under fresh roots, and the graph of all its ancestor-descendant pairs.

    The tree is returned as the decomposition certifying depth ``d``.
    """
    if d < 1 or branch < 2:
        raise ValueError("need d >= 1 and branch >= 2")
    parent: dict = {}

    def build(depth: int) -> int:
        root = len(parent)
        parent[root] = None
        if depth == 1:
            for _ in range(branch):
                parent[len(parent)] = root
        else:
            for _ in range(2):
                parent[build(depth - 1)] = root
        return root

    build(d)
    edges = []
    for v in parent:
        a = parent[v]
        while a is not None:
            edges.append((a, v))
            a = parent[a]
    return Graph(len(parent), edges), TreedepthDecomposition.from_parents(parent)


def extremal_treedepth_graph(d: int, branch: int) -> Graph:
    return extremal_treedepth(d, branch)[0]
