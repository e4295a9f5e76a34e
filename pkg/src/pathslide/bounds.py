"""Path-count bounds from circuit rank and feedback vertex sets, and the
closed-form rule for complete graphs."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Optional

from .errors import SizeLimitError, WrongSolverError
from .graph import Graph, canon
from .instances import Instance
from .statespace import SearchResult, count_paths

FVS_EXACT_LIMIT = 20


def circuit_rank(g: Graph) -> int:
    return g.m - g.n + len(g.components())


def path_count_bound_cr(n: int, r: int) -> int:
    """At most 2^r * C(n, 2) paths with distinct endpoints."""
    if n < 2 or r < 0:
        raise ValueError("need n >= 2 and r >= 0")
    return (1 << r) * math.comb(n, 2)


def path_count_bound_fvs(n: int, phi: int) -> int:
    if not 0 <= phi <= n:
        raise ValueError("need n >= phi >= 0")
    rest = n - phi
    return math.factorial(phi) * (1 << phi) * (math.comb(rest, 2) + rest + 1) ** (phi + 1)


def _is_forest_without(g: Graph, removed: set) -> bool:
    # union-find cycle check on the remaining edges
    root = list(range(g.n))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for u, v in g.edges:
        if u in removed or v in removed:
            continue
        a, b = find(u), find(v)
        if a == b:
            return False
        root[a] = b
    return True


def min_fvs(g: Graph, limit: int = FVS_EXACT_LIMIT) -> int:
    """Feedback vertex set number, by trying subsets in order of size."""
    if g.n > limit:
        raise SizeLimitError(f"exact feedback vertex set limited to n <= {limit}, got {g.n}")
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            if _is_forest_without(g, set(subset)):
                return size
    return g.n


def total_path_count(g: Graph) -> int:
    """Canonical simple paths of every length >= 1."""
    return sum(count_paths(g, k) for k in range(1, g.n))


@dataclass
class BoundsReport:
    n: int
    m: int
    circuit_rank: int
    bound_cr: int
    fvs_number: Optional[int] = None
    bound_fvs: Optional[int] = None
    actual_path_count: Optional[int] = None

    def lines(self) -> list[str]:
        def fmt(x):
            return "unknown" if x is None else str(x)

        return [
            f"n={self.n}",
            f"m={self.m}",
            f"circuit_rank={self.circuit_rank}",
            f"bound_cr={self.bound_cr}",
            f"fvs_number={fmt(self.fvs_number)}",
            f"bound_fvs={fmt(self.bound_fvs)}",
            f"actual_path_count={fmt(self.actual_path_count)}",
        ]


def bounds_report(g: Graph, fvs_limit: int = FVS_EXACT_LIMIT, enumerate_limit: int = 14) -> BoundsReport:
    r = circuit_rank(g)
    rep = BoundsReport(g.n, g.m, r, path_count_bound_cr(max(g.n, 2), r))
    if g.n <= fvs_limit:
        rep.fvs_number = min_fvs(g, fvs_limit)
        rep.bound_fvs = path_count_bound_fvs(g.n, rep.fvs_number)
    if g.n <= enumerate_limit:
        rep.actual_path_count = total_path_count(g)
    return rep


def solve_complete_graph(inst: Instance) -> SearchResult:
    """Decide reachability in a complete graph without search.

    Paths missing some vertex can always reach each other; Hamiltonian paths
    reach exactly their cyclic shifts and the reversals of those.
    """
    t0 = time.perf_counter()
    g = inst.graph
    if not g.is_complete():
        raise WrongSolverError("complete-graph rule applied to a non-complete graph")
    n, k = g.n, inst.k
    if k + 1 < n:
        ok = True
    else:
        s = inst.start
        shifts = {canon(s[i:] + s[:i]) for i in range(n)}
        ok = inst.goal in shifts
    stats = {"engine": "complete-graph", "wall_time": round(time.perf_counter() - t0, 6)}
    return SearchResult(ok, stats=stats)
