"""Problem instances, the text file format, and graph family generators.

File format (line oriented, ``#`` comments allowed anywhere)::

    p pathreconfig <n> <m> <k>
    e <u> <v>            (m lines)
    s <v0> ... <vk>      (start path)
    t <v0> ... <vk>      (goal path)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import GenerationError, InvalidInstanceError, InvalidPathError, ParseError
from .graph import Graph, Path, canon, check_path, edge


@dataclass(frozen=True)
class Instance:
    graph: Graph
    start: Path
    goal: Path
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        for name in ("start", "goal"):
            seq = getattr(self, name)
            try:
                check_path(self.graph, seq)
            except InvalidPathError as exc:
                raise InvalidInstanceError(f"{name} path invalid: {exc}") from None
            object.__setattr__(self, name, canon(seq))
        if len(self.start) != len(self.goal):
            raise InvalidInstanceError(
                f"start has length {len(self.start) - 1}, goal has length {len(self.goal) - 1}"
            )
        if len(self.start) < 2:
            raise InvalidInstanceError("paths of length 0 cannot move; need k >= 1")
        if self.labels is not None and len(self.labels) != self.graph.n:
            raise InvalidInstanceError("label count differs from vertex count")

    @property
    def k(self) -> int:
        return len(self.start) - 1

    def reversed(self) -> "Instance":
        return Instance(self.graph, self.goal, self.start, self.labels)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


def _label_key(tok: str):
    try:
        return (0, int(tok), tok)
    except ValueError:
        return (1, 0, tok)


def parse_instance(text: str) -> Instance:
    header = None
    raw_edges: list[tuple[int, str, str]] = []
    paths: dict[str, tuple[int, list[str]]] = {}
    for line_no, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0].startswith("#"):
            continue
        kind = toks[0]
        if kind == "p":
            if header is not None:
                raise ParseError(line_no, "duplicate problem line")
            if len(toks) != 5 or toks[1] != "pathreconfig":
                raise ParseError(line_no, "expected 'p pathreconfig <n> <m> <k>'")
            try:
                header = tuple(int(t) for t in toks[2:])
            except ValueError:
                raise ParseError(line_no, "non-integer in problem line") from None
            if min(header) < 0:
                raise ParseError(line_no, "negative count in problem line")
        elif header is None:
            raise ParseError(line_no, "problem line must come first")
        elif kind == "e":
            if len(toks) != 3:
                raise ParseError(line_no, "edge line needs exactly two endpoints")
            raw_edges.append((line_no, toks[1], toks[2]))
        elif kind in ("s", "t"):
            if kind in paths:
                raise ParseError(line_no, f"duplicate '{kind}' line")
            if len(toks) < 2:
                raise ParseError(line_no, "path line needs at least one vertex")
            paths[kind] = (line_no, toks[1:])
        else:
            raise ParseError(line_no, f"unknown line type {kind!r}")
    if header is None:
        raise ParseError(0, "missing problem line")
    n, m, k = header
    last = len(text.splitlines())
    for kind in ("s", "t"):
        if kind not in paths:
            raise ParseError(last, f"missing '{kind}' line")
    if len(raw_edges) != m:
        raise ParseError(last, f"header declares {m} edges, found {len(raw_edges)}")

    tokens = {t for _, a, b in raw_edges for t in (a, b)}
    for _, toks in paths.values():
        tokens.update(toks)
    if all(t.isdigit() and int(t) < n for t in tokens):
        ids = {t: int(t) for t in tokens}
        labels = None
    else:
        ordered = sorted(tokens, key=_label_key)
        if len(ordered) > n:
            raise InvalidInstanceError(f"{len(ordered)} distinct labels but n={n}")
        ordered += [f"_{i}" for i in range(len(ordered), n)]
        ids = {t: i for i, t in enumerate(ordered)}
        labels = tuple(ordered)

    seen_edges = set()
    for line_no, a, b in raw_edges:
        if a == b:
            raise ParseError(line_no, f"self-loop at {a}")
        e = edge(ids[a], ids[b])
        if e in seen_edges:
            raise ParseError(line_no, f"parallel edge {a} {b}")
        seen_edges.add(e)
    g = Graph(n, seen_edges)

    resolved = {}
    for kind, (line_no, toks) in paths.items():
        seq = [ids[t] for t in toks]
        name = "start" if kind == "s" else "goal"
        if len(seq) != k + 1:
            raise InvalidInstanceError(
                f"line {line_no}: {name} path has {len(seq) - 1} edges, header says k={k}"
            )
        if len(set(seq)) != len(seq):
            raise InvalidInstanceError(f"line {line_no}: {name} path repeats a vertex")
        for a, b in zip(toks, toks[1:]):
            if not g.has_edge(ids[a], ids[b]):
                raise InvalidInstanceError(
                    f"line {line_no}: {name} path uses non-edge ({a}, {b})"
                )
        resolved[name] = seq
    return Instance(g, tuple(resolved["start"]), tuple(resolved["goal"]), labels)


def serialize_instance(inst: Instance) -> str:
    lab = inst.label
    g = inst.graph
    lines = [f"p pathreconfig {g.n} {g.m} {inst.k}"]
    lines += [f"e {lab(u)} {lab(v)}" for u, v in g.sorted_edges()]
    lines.append("s " + " ".join(lab(v) for v in inst.start))
    lines.append("t " + " ".join(lab(v) for v in inst.goal))
    return "\n".join(lines) + "\n"


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# Hand-encoded six-vertex example: a hexagon with one long chord and paths of
# three edges. It approximates the usual illustration of a small state space;
# its state and move counts are regression values only.
SIX_VERTEX_EXAMPLE = """\
# approximate six-vertex example (hexagon plus chord 1-4), k = 3
p pathreconfig 6 7 3
e 0 1
e 0 5
e 1 2
e 1 4
e 2 3
e 3 4
e 4 5
s 0 1 2 3
t 2 3 4 5
"""


def six_vertex_example() -> Instance:
    return parse_instance(SIX_VERTEX_EXAMPLE)


# --- generators -------------------------------------------------------------


def gen_path(n: int) -> Graph:
    if n < 1:
        raise GenerationError("path graph needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise GenerationError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise GenerationError("complete graph needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def gen_star(n: int) -> Graph:
    """Star on ``n`` vertices: center 0 and leaves ``1 .. n-1``."""
    if n < 2:
        raise GenerationError("star needs n >= 2")
    return Graph(n, [(0, i) for i in range(1, n)])


def gen_grid(w: int, h: int) -> Graph:
    """``w`` by ``h`` grid; vertex ``(x, y)`` has id ``y * w + x``."""
    if w < 1 or h < 1:
        raise GenerationError("grid needs positive dimensions")
    es = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                es.append((v, v + 1))
            if y + 1 < h:
                es.append((v, v + w))
    return Graph(w * h, es)


def gen_extremal_treedepth(d: int, branch: int) -> Graph:
    from .treedepth import extremal_treedepth_graph

    return extremal_treedepth_graph(d, branch)


def gen_random_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]


def gen_random_fixed_cr(n: int, r: int, seed: int) -> Graph:
    """Random connected graph with circuit rank exactly ``r``: a random
    spanning tree plus ``r`` extra edges."""
    if n < 1:
        raise GenerationError("need n >= 1")
    room = n * (n - 1) // 2 - (n - 1)
    if r < 0 or r > room:
        raise GenerationError(f"circuit rank {r} infeasible for n={n} (max {room})")
    rng = random.Random(seed)
    tree = {edge(u, v) for u, v in gen_random_tree(n, rng)}
    spare = [e for e in itertools.combinations(range(n), 2) if e not in tree]
    return Graph(n, tree | set(rng.sample(spare, r)))


def gen_random_connected(n: int, p: float, rng: random.Random) -> Graph:
    es = {edge(u, v) for u, v in gen_random_tree(n, rng)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            es.add((u, v))
    return Graph(n, es)


def random_path(g: Graph, k: int, rng: random.Random, tries: int = 200) -> Optional[Path]:
    """A random simple path with ``k`` edges, by randomized extension."""
    for _ in range(tries):
        seq = [rng.randrange(g.n)]
        while len(seq) < k + 1:
            opts = [w for w in g.adj[seq[-1]] if w not in seq]
            if not opts:
                break
            seq.append(rng.choice(opts))
        if len(seq) == k + 1:
            return canon(seq)
    return None


def gen_duplicate_flap(
    base: Instance,
    copies: int,
    anchor: Optional[int] = None,
    branch: Optional[Graph] = None,
) -> Instance:
    """Attach ``copies`` disjoint copies of ``branch`` to ``anchor``.

    Vertex 0 of ``branch`` is joined to the anchor; the copies are therefore
    pairwise equivalent flaps over any anchor set containing ``anchor`` and
    separating them. The default branch is a single edge and the default
    anchor is the first start vertex.
    """
    if copies < 0:
        raise GenerationError("copies must be nonnegative")
    g = base.graph
    if anchor is None:
        anchor = base.start[0]
    if not 0 <= anchor < g.n:
        raise GenerationError(f"anchor {anchor} not in graph")
    if branch is None:
        branch = gen_path(2)
    if branch.n < 1:
        raise GenerationError("branch must be nonempty")
    es = set(g.edges)
    n = g.n
    for _ in range(copies):
        es.add(edge(anchor, n))
        es.update(edge(n + u, n + v) for u, v in branch.edges)
        n += branch.n
    labels = None
    if base.labels is not None:
        labels = base.labels + tuple(f"_{i}" for i in range(g.n, n))
    return Instance(Graph(n, es), base.start, base.goal, labels)
