import pickle

import pytest

from hexpivot.configuration import Configuration, normalize
from hexpivot.explorer import (
    CACHE_ENV,
    BudgetExceeded,
    CapExceeded,
    bfs_path,
    build_graph,
    components,
    enumerate_shapes,
    rigidity_scan,
    slow_enumerate,
    summary,
)
from hexpivot.hexgrid import Cell
from hexpivot.move_model import HexMonkey, HexRestricted, legal_moves, verify_plan

FIXED_POLYHEX = [1, 3, 11, 44, 186, 814]


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_slow_enumerator(n):
    fast = enumerate_shapes(n)
    assert len(fast) == FIXED_POLYHEX[n - 1]
    assert {c.sorted() for c in fast} == slow_enumerate(n)
    assert len({c.sorted() for c in fast}) == len(fast)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_shapes(9)
    with pytest.raises(CapExceeded):
        build_graph(4, cap=3)


def test_trivial_graph():
    g = build_graph(1)
    assert len(g.nodes) == 1 and not g.edges


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_monkey_graph_connected(n):
    g = build_graph(n, HexMonkey)
    assert len(components(g)) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_restricted_edges_subset(n):
    assert build_graph(n, HexRestricted).edges <= build_graph(n, HexMonkey).edges


def test_degree_accounts_for_every_move():
    g = build_graph(4)
    adj = g.neighbors()
    loops = 0
    for i, c in enumerate(g.nodes):
        targets = set()
        for mv in legal_moves(c):
            k = g.index[normalize(Configuration((c.cells - {mv.mover}) | {mv.dest})).sorted()]
            if k == i:
                loops += 1
            else:
                targets.add(k)
        assert targets == set(adj[i])
    assert loops == g.self_loops


def test_threads_give_same_edges():
    assert build_graph(5, threads=3).edges == build_graph(5, threads=1).edges


def test_bfs_path():
    a = Configuration([Cell(0, 0), Cell(0, 1)])
    assert len(bfs_path(a, a)) == 0
    b = Configuration([Cell(0, 0), Cell(1, 0)])
    plan = bfs_path(a, b)
    assert len(plan) == 1
    assert normalize(verify_plan(a, plan)) == normalize(b)
    line = Configuration([Cell(0, i) for i in range(5)])
    blob = Configuration([Cell(0, 0), Cell(1, 0), Cell(0, 1), Cell(1, 1), Cell(2, 0)])
    with pytest.raises(BudgetExceeded):
        bfs_path(line, blob, budget=3)


def test_rigidity():
    assert [c.sorted() for c in rigidity_scan(1)] == [(Cell(0, 0),)]
    for n in range(2, 6):
        assert rigidity_scan(n, HexMonkey) == []


def test_restricted_rigidity_fixture():
    # no external ground truth: the counts are a regression fixture
    assert [len(rigidity_scan(n, HexRestricted)) for n in range(2, 7)] == [0, 0, 0, 0, 0]


def test_summary_order():
    s = summary(4, want_components=True)
    assert list(s) == ["nodes", "edges", "components"]
    assert s["nodes"] == 44 and s["components"] == 1


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    first = enumerate_shapes(4)
    files = list(tmp_path.glob("shapes-n4-*.pickle"))
    assert len(files) == 1
    with files[0].open("rb") as fh:
        assert len(pickle.load(fh)) == 44
    assert enumerate_shapes(4) == first
    build_graph(3)
    assert list(tmp_path.glob("graph-n3-monkey-*.pickle"))


def test_no_cache_without_env(tmp_path, monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)
    monkeypatch.chdir(tmp_path)
    enumerate_shapes(3)
    assert not list(tmp_path.iterdir())
