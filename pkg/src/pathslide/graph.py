"""Graphs, paths and the sliding move.

A path is a tuple of vertex ids stored in canonical orientation: the tuple
is lexicographically no larger than its reversal. A reconfiguration step is
an ``(add, remove)`` pair of edges, each edge a sorted 2-tuple.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple, Sequence

from .errors import IllegalStepError, InvalidPathError, ReplayError

Edge = tuple[int, int]
Path = tuple[int, ...]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class ReconfigStep(NamedTuple):
    add: Edge
    remove: Edge

    def reversed(self) -> "ReconfigStep":
        return ReconfigStep(self.remove, self.add)

    def __str__(self) -> str:
        return f"({self.add[0]} {self.add[1]}) ({self.remove[0]} {self.remove[1]})"


ReconfigSequence = list[ReconfigStep]


class Graph:
    """Immutable undirected simple graph on vertices ``0 .. n-1``."""

    __slots__ = ("n", "edges", "adj", "_adjsets")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            es.add(edge(u, v))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._adjsets = tuple(frozenset(a) for a in self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adjsets[u]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Return ``(sub, origin)`` where ``origin[i]`` is the id in ``self`` of
        vertex ``i`` of ``sub``. Vertex order is preserved."""
        origin = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(origin)}
        sub_edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        return Graph(len(origin), sub_edges), origin

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def component_of(self, v: int) -> set[int]:
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_of(0)) == self.n

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2


def canon(seq: Sequence[int]) -> Path:
    """Canonical orientation without validation."""
    t = tuple(seq)
    r = t[::-1]
    return t if t <= r else r


def is_path(g: Graph, seq: Sequence[int]) -> bool:
    if len(seq) == 0 or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < g.n for v in seq):
        return False
    return all(g.has_edge(a, b) for a, b in zip(seq, seq[1:]))


def check_path(g: Graph, seq: Sequence[int]) -> None:
    if len(seq) == 0:
        raise InvalidPathError("empty vertex sequence")
    for v in seq:
        if not 0 <= v < g.n:
            raise InvalidPathError(f"vertex {v} not in graph")
    if len(set(seq)) != len(seq):
        raise InvalidPathError(f"sequence {tuple(seq)} repeats a vertex")
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            raise InvalidPathError(f"({a}, {b}) is not an edge")


def canonicalize(g: Graph, raw: Sequence[int]) -> Path:
    """Validate ``raw`` as a simple path of ``g`` and return its canonical form."""
    check_path(g, raw)
    return canon(raw)


def path_edges(p: Sequence[int]) -> list[Edge]:
    return [edge(a, b) for a, b in zip(p, p[1:])]


def apply_step(g: Graph, p: Sequence[int], s: ReconfigStep) -> Path:
    """Apply one sliding move to ``p`` and return the canonical result."""
    add, remove = edge(*s.add), edge(*s.remove)
    if len(p) < 2:
        raise IllegalStepError("a path of length 0 has no end edges")
    if add == remove:
        raise IllegalStepError("added and removed edge coincide")
    if not g.has_edge(*add):
        raise IllegalStepError(f"{add} is not an edge of the graph")
    p = tuple(p)
    front, back = edge(p[0], p[1]), edge(p[-2], p[-1])
    candidates = []
    # removing the front edge drops p[0]; the new edge hangs off p[-1]
    if remove == front:
        candidates.append((p[1:], p[-1]))
    if remove == back:
        candidates.append((p[-2::-1], p[0]))
    if not candidates:
        raise IllegalStepError(f"{remove} is not an end edge of {p}")
    for body, tip in candidates:
        if tip not in add:
            continue
        w = add[0] if add[1] == tip else add[1]
        if w in body:
            raise IllegalStepError(f"adding {add} revisits vertex {w}")
        return canon(body + (w,))
    raise IllegalStepError(f"{add} is not incident to the far end of {p}")


def legal_moves(g: Graph, p: Sequence[int]) -> list[tuple[ReconfigStep, Path]]:
    """All legal steps from ``p`` with their canonical successors, sorted by successor."""
    p = tuple(p)
    if len(p) < 2:
        return []
    out = {}
    adj = g.adj
    for body, removed in ((p[1:], p[0]), (p[-2::-1], p[-1])):
        tip = body[-1]
        rem = edge(removed, body[0])
        for w in adj[tip]:
            if w in body:
                continue
            add = edge(tip, w)
            if add == rem:
                continue
            q = canon(body + (w,))
            out.setdefault(q, ReconfigStep(add, rem))
    return [(s, q) for q, s in sorted(out.items())]


def successors(g: Graph, p: Path) -> list[Path]:
    return [q for _, q in legal_moves(g, p)]


def reverse_sequence(seq: Sequence[ReconfigStep]) -> ReconfigSequence:
    return [ReconfigStep(s.remove, s.add) for s in reversed(seq)]


def replay(g: Graph, p: Sequence[int], seq: Sequence[ReconfigStep]) -> Path:
    """Apply ``seq`` from ``p``; raises :class:`ReplayError` at the first illegal step."""
    cur = canon(p)
    for i, s in enumerate(seq):
        try:
            cur = apply_step(g, cur, s)
        except IllegalStepError as exc:
            raise ReplayError(i, str(exc)) from None
    return cur


def replay_states(g: Graph, p: Sequence[int], seq: Sequence[ReconfigStep]) -> list[Path]:
    """Every state visited by ``seq``, starting with ``canon(p)``."""
    states = [canon(p)]
    for i, s in enumerate(seq):
        try:
            states.append(apply_step(g, states[-1], s))
        except IllegalStepError as exc:
            raise ReplayError(i, str(exc)) from None
    return states


def slide_step(cur: Sequence[int], new_head: int) -> ReconfigStep:
    """The step moving oriented path ``cur`` forward so that ``new_head``
    becomes its last vertex."""
    return ReconfigStep(edge(cur[-1], new_head), edge(cur[0], cur[1]))


def relabel_sequence(seq: Sequence[ReconfigStep], origin: Sequence[int]) -> ReconfigSequence:
    """Map a sequence expressed in subgraph ids back to the parent graph."""
    return [
        ReconfigStep(edge(origin[s.add[0]], origin[s.add[1]]),
                     edge(origin[s.remove[0]], origin[s.remove[1]]))
        for s in seq
    ]
