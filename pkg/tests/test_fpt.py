import random

import pytest

from pathslide.errors import UnsupportedModeError
from pathslide.fpt import solve_auto, solve_fpt, verify_inescapable, win_win
from pathslide.graph import Graph, canon, replay
from pathslide.instances import (
    Instance,
    gen_complete,
    gen_grid,
    gen_path,
    gen_random_connected,
    random_path,
)
from pathslide.statespace import bfs_solve, enumerate_paths, goal_predicate_bfs, uses_vertex


def test_win_win_start_is_whole_graph():
    g = gen_path(3)
    out = win_win(g, (0, 1, 2), (0, 1, 2), 2)
    assert out.kind == "inescapable-set" and out.reached == {0, 1, 2}


def test_win_win_finds_loose_path_on_line():
    k = 2
    g = gen_path(3 * k + 3)
    p = (0, 1, 2)
    q = (0, 1, 2)
    out = win_win(g, p, q, k)
    assert out.kind == "loose-path"
    cert = out.certificate
    assert len(cert.route) == 2 * k + 1 and not set(cert.route) & set(p)
    end = replay(g, p, list(cert.entry_sequence))
    assert set(end) <= set(cert.route)


def test_win_win_other_component():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)])
    out = win_win(g, (0, 1), (3, 4), 1)
    assert out.kind == "inescapable-set"
    assert out.reached == {0, 1, 2}
    assert not out.reached & {3, 4}


def sample_instances(count, seed, n_range=(4, 9)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = gen_random_connected(rng.randint(*n_range), rng.choice([0.1, 0.25, 0.4]), rng)
        k = rng.randint(1, 3)
        p, q = random_path(g, k, rng), random_path(g, k, rng)
        if p is not None and q is not None:
            out.append(Instance(g, p, q))
    return out


@pytest.mark.parametrize("inst", sample_instances(40, 5), ids=lambda i: f"n{i.graph.n}k{i.k}")
def test_win_win_certificates(inst):
    g, p, q, k = inst.graph, inst.start, inst.goal, inst.k
    out = win_win(g, p, q, k)
    for v, seq in out.witnesses.items():
        assert v in replay(g, p, seq)
    if out.kind == "inescapable-set":
        assert out.reached >= set(p)
        assert out.decomposition.depth <= len((set(p) | set(q)) & out.reached) + 2 * k - 1
        assert verify_inescapable(g, p, q, k, out.reached)
        # nothing outside the set is reachable at all
        for v in set(range(g.n)) - out.reached:
            assert not goal_predicate_bfs(g, k, p, uses_vertex(v)).reachable
    else:
        end = replay(g, p, list(out.certificate.entry_sequence))
        assert set(end) <= set(out.certificate.route)


def test_solve_fpt_trivial_cases():
    g = gen_path(5)
    res = solve_fpt(Instance(g, (0, 1), (0, 1)))
    assert res.reachable and res.witness == []
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    res = solve_fpt(Instance(g, (0, 1), (3, 4)))
    assert not res.reachable and res.stats["case"] == "disconnected"


@pytest.mark.parametrize("inst", sample_instances(80, 9, (4, 12)), ids=lambda i: f"n{i.graph.n}k{i.k}")
def test_solve_fpt_matches_bfs_and_is_symmetric(inst):
    res = solve_fpt(inst)
    assert res.reachable == bfs_solve(inst).reachable
    assert solve_fpt(inst.reversed()).reachable == res.reachable
    if res.reachable:
        assert replay(inst.graph, inst.start, res.witness) == inst.goal


def test_solve_fpt_two_loose_paths_case_on_grid():
    g = gen_grid(5, 5)
    inst = Instance(g, (0, 1), (23, 24))
    res = solve_fpt(inst)
    assert res.reachable and res.stats["case"] == "two-loose-paths"
    assert replay(g, inst.start, res.witness) == inst.goal


def test_solve_auto_dispatch():
    res = solve_auto(Instance(gen_complete(5), (0, 1, 2), (2, 3, 4)))
    assert res.stats["dispatch"] == "complete-graph" and res.reachable
    assert replay(gen_complete(5), (0, 1, 2), res.witness) == (2, 3, 4)
    res = solve_auto(Instance(gen_path(6), (0, 1), (4, 5)))
    assert res.stats["dispatch"] == "tree"
    res = solve_auto(Instance(gen_grid(4, 4), (0, 1), (14, 15)))
    assert res.stats["dispatch"] == "small-state-space"


def test_solve_auto_uses_fpt_when_state_space_is_large():
    g = gen_grid(5, 5)
    inst = Instance(g, (0, 1), (23, 24))
    res = solve_auto(inst, probe=10)
    assert res.stats["dispatch"] == "fpt" and res.reachable
    with pytest.raises(UnsupportedModeError):
        solve_auto(inst, mode="optimize", probe=10, cap=20)
    opt = solve_auto(inst, mode="optimize", probe=10)
    assert opt.min_moves == bfs_solve(inst, mode="optimize").min_moves


@pytest.mark.parametrize("inst", sample_instances(30, 13), ids=lambda i: f"n{i.graph.n}k{i.k}")
def test_solve_auto_agrees_with_bfs(inst):
    assert solve_auto(inst, probe=5).reachable == bfs_solve(inst).reachable
