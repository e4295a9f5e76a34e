import json
import re

import pytest

from pathslide.cli import RunConfig, format_witness, main, parse_witness
from pathslide.errors import UnsupportedModeError
from pathslide.graph import Graph
from pathslide.instances import (
    Instance,
    gen_cycle,
    gen_grid,
    gen_path,
    gen_random_fixed_cr,
    parse_instance,
    serialize_instance,
    six_vertex_example,
)
from pathslide.statespace import bfs_solve, count_paths


def write(tmp_path, inst, name="inst.txt"):
    f = tmp_path / name
    f.write_text(serialize_instance(inst))
    return str(f)


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines() if "=" in line)


def test_solve_path_graph(tmp_path, capsys):
    f = write(tmp_path, Instance(gen_path(6), (0, 1, 2), (3, 4, 5)))
    assert main(["solve", f]) == 0
    out = kv(capsys.readouterr().out)
    assert out["reachable"] == "yes" and out["engine"]


def test_solve_disconnected(tmp_path, capsys):
    f = write(tmp_path, Instance(Graph(4, [(0, 1), (2, 3)]), (0, 1), (2, 3)))
    assert main(["solve", f]) == 10
    assert kv(capsys.readouterr().out)["witness"] == "none"


@pytest.mark.parametrize("seed", range(8))
def test_fpt_and_bfs_agree_on_reachable_line(tmp_path, capsys, seed):
    f = str(tmp_path / "g.txt")
    assert main(["gen", "random-cr", "--n", "9", "--r", "2", "--k", "2", "--seed", str(seed), "--out", f]) == 0
    lines = []
    for alg in ("fpt", "bfs"):
        main(["solve", f, "--alg", alg])
        lines.append(kv(capsys.readouterr().out)["reachable"])
    assert lines[0] == lines[1]


def test_optimize_reports_min_moves(tmp_path, capsys):
    f = write(tmp_path, Instance(gen_path(6), (0, 1, 2), (3, 4, 5)))
    assert main(["solve", f, "--alg", "bfs", "--mode", "optimize"]) == 0
    assert kv(capsys.readouterr().out)["min_moves"] == "3"
    assert main(["solve", f, "--alg", "fpt", "--mode", "optimize"]) == 2
    with pytest.raises(UnsupportedModeError):
        RunConfig("solve", algorithm="fpt", mode="optimize")


def test_statespace_dot(tmp_path, capsys):
    f = write(tmp_path, six_vertex_example())
    assert main(["statespace", f, "--dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph statespace {")
    assert out.strip().splitlines()[-1] == "states=14 moves=18"
    main(["statespace", f, "--dot"])
    assert capsys.readouterr().out == out


def test_statespace_capacity(tmp_path, capsys):
    f = write(tmp_path, Instance(gen_grid(5, 5), (0, 1, 2), (22, 23, 24)))
    assert main(["statespace", f, "--cap", "10"]) == 3


def test_capacity_from_environment(tmp_path, monkeypatch):
    f = write(tmp_path, Instance(gen_grid(5, 5), (0, 1, 2), (22, 23, 24)))
    monkeypatch.setenv("PRC_CAP", "10")
    assert main(["statespace", f]) == 3
    assert main(["solve", f, "--alg", "bfs"]) == 3


@pytest.mark.parametrize("g, rank", [(gen_path(5), "0"), (gen_cycle(5), "1")])
def test_bounds(tmp_path, capsys, g, rank):
    f = write(tmp_path, Instance(g, (0, 1), (0, 1)))
    assert main(["bounds", f]) == 0
    assert kv(capsys.readouterr().out)["circuit_rank"] == rank


def test_bounds_random_graph_under_bound(tmp_path, capsys):
    g = gen_random_fixed_cr(9, 2, 3)
    f = write(tmp_path, Instance(g, (0, g.adj[0][0]), (0, g.adj[0][0])))
    main(["bounds", f])
    out = kv(capsys.readouterr().out)
    total = sum(count_paths(g, k) for k in range(1, g.n))
    assert int(out["actual_path_count"]) == total <= int(out["bound_cr"])


def test_json_output(tmp_path, capsys):
    f = write(tmp_path, Instance(gen_path(4), (0, 1), (2, 3)))
    assert main(["solve", f, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["reachable"] == "yes"


def test_verify(tmp_path, capsys):
    inst = Instance(gen_path(6), (0, 1, 2), (3, 4, 5))
    f = write(tmp_path, inst)
    w = tmp_path / "w.txt"
    w.write_text("(2 3) (0 1)\n(3 4) (1 2)\n(4 5) (2 3)\n")
    assert main(["verify", f, str(w)]) == 0
    w.write_text("(2 3) (0 1)\n(4 5) (1 2)\n(4 5) (2 3)\n")
    assert main(["verify", f, str(w)]) == 11
    assert "failed_step=1" in capsys.readouterr().out
    same = write(tmp_path, Instance(gen_path(6), (0, 1, 2), (0, 1, 2)), "same.txt")
    w.write_text("")
    assert main(["verify", same, str(w)]) == 0


def test_solve_output_verifies(tmp_path, capsys):
    for seed in range(6):
        f = str(tmp_path / f"g{seed}.txt")
        main(["gen", "grid", "--w", "4", "--h", "3", "--k", "3", "--seed", str(seed), "--out", f])
        out = tmp_path / "out.txt"
        if main(["solve", f, "--out", str(out)]) != 0:
            continue
        witness = kv(out.read_text())["witness"]
        w = tmp_path / "w.txt"
        w.write_text(witness)
        assert main(["verify", f, str(w)]) == 0


def test_witness_format_round_trip_with_labels():
    inst = parse_instance("p pathreconfig 3 2 1\ne a b\ne b c\ns a b\nt b c\n")
    seq = bfs_solve(inst).witness
    text = format_witness(inst, seq)
    assert re.fullmatch(r"\(\S+ \S+\) \(\S+ \S+\)", text)
    assert parse_witness(inst, text) == seq
    assert parse_witness(inst, format_witness(inst, seq, "; ")) == seq


def test_bad_input_exit_code(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("p pathreconfig 2 1 1\nq\n")
    assert main(["solve", str(f)]) == 2
    assert main(["solve", str(tmp_path / "missing.txt")]) == 2
