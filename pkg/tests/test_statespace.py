import math
import random

import pytest

from pathslide.errors import CapacityError, InvalidInstanceError
from pathslide.graph import canon, replay
from pathslide.instances import (
    Instance,
    gen_complete,
    gen_cycle,
    gen_grid,
    gen_path,
    gen_random_connected,
    gen_star,
)
from pathslide.statespace import (
    bfs_solve,
    build_state_graph,
    count_paths,
    enumerate_paths,
    export_dot,
    goal_predicate_bfs,
    uses_vertex,
)

from oracles import brute_distances, brute_paths, connected_atlas


def test_enumerate_paths_examples():
    assert len(enumerate_paths(gen_path(4), 1)) == 3
    assert len(enumerate_paths(gen_complete(4), 3)) == 12
    for n in range(3, 8):
        assert len(enumerate_paths(gen_star(n), 2)) == math.comb(n - 1, 2)


@pytest.mark.parametrize("n, edges", connected_atlas(6)[::7])
def test_enumerate_paths_matches_permutation_oracle(n, edges):
    from pathslide.graph import Graph

    g = Graph(n, edges)
    for k in range(1, n):
        got = enumerate_paths(g, k)
        assert got == brute_paths(n, edges, k)
        assert count_paths(g, k) == len(got)


def test_count_paths_limit_stops_early():
    g = gen_complete(7)
    assert count_paths(g, 4, limit=10) == 11


def test_state_graph_of_path_graph_is_a_path():
    for n in range(3, 8):
        for k in range(1, n):
            sg = build_state_graph(gen_path(n), k)
            assert len(sg.states) == n - k
            assert len(sg.moves) == n - k - 1


def test_state_graph_of_cycle_is_a_cycle():
    for n in range(4, 9):
        for k in range(1, n - 1):
            sg = build_state_graph(gen_cycle(n), k)
            assert len(sg.states) == n
            assert len(sg.moves) == n
            assert all(len(row) == 2 for row in sg.adjacency())


def test_state_graph_capacity():
    with pytest.raises(CapacityError) as info:
        build_state_graph(gen_complete(6), 3, cap=10)
    assert info.value.cap == 10


def test_bfs_examples():
    g = gen_path(6)
    res = bfs_solve(Instance(g, (0, 1, 2), (0, 1, 2)), mode="optimize")
    assert res.reachable and res.min_moves == 0 and res.witness == []
    res = bfs_solve(Instance(g, (0, 1, 2), (3, 4, 5)), mode="optimize")
    assert res.min_moves == 3
    assert replay(g, (0, 1, 2), res.witness) == (3, 4, 5)
    g = gen_cycle(6)
    res = bfs_solve(Instance(g, (0, 1, 2), canon((3, 4, 5))), mode="optimize")
    assert res.min_moves == 3
    assert brute_distances(g.n, g.edges, 2, (0, 1, 2))[(3, 4, 5)] == 3


def test_bfs_unreachable_on_disconnected_graph():
    from pathslide.graph import Graph

    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    res = bfs_solve(Instance(g, (0, 1), (4, 5)), mode="optimize")
    assert not res.reachable and res.witness is None and res.min_moves is None


def test_bfs_capacity_error():
    g = gen_grid(6, 6)
    with pytest.raises(CapacityError):
        bfs_solve(Instance(g, (0, 1, 2), (33, 34, 35)), cap=50)


def test_bfs_decide_mode_reports_no_min_moves_but_has_witness():
    g = gen_path(6)
    res = bfs_solve(Instance(g, (0, 1, 2), (3, 4, 5)))
    assert res.reachable and res.min_moves is None
    assert replay(g, (0, 1, 2), res.witness) == (3, 4, 5)
    lean = bfs_solve(Instance(g, (0, 1, 2), (3, 4, 5)), witness=False)
    assert lean.reachable and lean.witness is None


def test_goal_predicate_examples():
    g = gen_path(6)
    direct = bfs_solve(Instance(g, (0, 1, 2), (2, 3, 4)), mode="optimize")
    via_pred = goal_predicate_bfs(g, 2, (0, 1, 2), lambda p: p == (2, 3, 4))
    assert via_pred.min_moves == direct.min_moves and via_pred.witness == direct.witness
    assert goal_predicate_bfs(g, 2, (0, 1, 2), uses_vertex(1)).min_moves == 0
    scope = range(5)
    res = goal_predicate_bfs(g, 2, (0, 1, 2), uses_vertex(4), scope=scope)
    assert res.reachable and res.min_moves == 2
    assert not goal_predicate_bfs(g, 2, (0, 1, 2), uses_vertex(5), scope=scope).reachable
    with pytest.raises(InvalidInstanceError):
        goal_predicate_bfs(g, 2, (0, 1, 2), uses_vertex(5), scope=[1, 2, 3])


def test_export_dot():
    from pathslide.statespace import StateGraph

    empty = export_dot(StateGraph(2, [], set()))
    assert "--" not in empty and "label" not in empty
    single = export_dot(build_state_graph(gen_path(3), 2))
    assert single.count("label") == 1 and "--" not in single
    two = export_dot(build_state_graph(gen_path(4), 2))
    assert two.count("label") == 2 and two.count("--") == 1
    assert export_dot(build_state_graph(gen_cycle(5), 2)) == export_dot(build_state_graph(gen_cycle(5), 2))


def random_instances(count, seed, max_n=7, max_k=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = gen_random_connected(rng.randint(3, max_n), rng.choice([0.2, 0.35, 0.5]), rng)
        k = rng.randint(1, max_k)
        paths = enumerate_paths(g, k)
        if paths:
            out.append(Instance(g, rng.choice(paths), rng.choice(paths)))
    return out


@pytest.mark.parametrize("inst", random_instances(60, 11), ids=lambda i: f"n{i.graph.n}k{i.k}")
def test_bfs_matches_explicit_oracle(inst):
    dist = brute_distances(inst.graph.n, inst.graph.edges, inst.k, inst.start)
    opt = bfs_solve(inst, mode="optimize")
    dec = bfs_solve(inst)
    assert opt.reachable == dec.reachable == (inst.goal in dist)
    if opt.reachable:
        assert opt.min_moves == dist[inst.goal] == len(opt.witness)
        assert replay(inst.graph, inst.start, opt.witness) == inst.goal
        assert replay(inst.graph, inst.start, dec.witness) == inst.goal
    back = bfs_solve(inst.reversed(), mode="optimize")
    assert back.reachable == opt.reachable and back.min_moves == opt.min_moves


def test_triangle_inequality_on_sampled_triples():
    rng = random.Random(3)
    for _ in range(20):
        g = gen_random_connected(rng.randint(4, 7), 0.4, rng)
        paths = enumerate_paths(g, 2)
        if len(paths) < 3:
            continue
        sg = build_state_graph(g, 2)
        for _ in range(10):
            a, b, c = rng.sample(paths, 3)
            da, db = sg.distances(a), sg.distances(b)
            if b in da and c in db:
                assert da[c] <= da[b] + db[c]
