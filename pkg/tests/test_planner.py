import pytest
from hypothesis import given, settings

from conftest import cfg, shapes
from hexpivot.cli_io import random_configuration
from hexpivot.configuration import Configuration, canonical_path, is_canonical_path, normalize
from hexpivot.explorer import bfs_path, enumerate_shapes
from hexpivot.graph_analysis import biconnected, block_tree
from hexpivot.hexgrid import Cell, neighbors
from hexpivot.move_model import HexRestricted, MovePlan, verify_plan
from hexpivot.planner import (
    Board,
    ModelNotSupported,
    SizeMismatch,
    phase1,
    phase2,
    phase3,
    plan_to_canonical,
    reconfigure,
    run_phases,
)
from hexpivot.planner.merge import core_block, merge
from hexpivot.planner.phase1 import degree_one

TRI = cfg((0, 0), (0, 1), (1, 0))
BOWTIE = cfg((0, 0), (0, 1), (1, 0), (-1, 2), (0, 2))


def test_phase1_three_path_becomes_triangle():
    b = Board(canonical_path(3).cells)
    phase1(b)
    assert not degree_one(b.occ)
    assert len(biconnected(b.occ)[0]) == 1
    assert normalize(verify_plan(canonical_path(3), b.plan())) == normalize(Configuration(b.occ))


def test_phase1_leafless_is_noop(ring6):
    b = Board(ring6.cells)
    phase1(b)
    assert not b.log


def test_phase1_spider():
    # three long legs: every pivot of a foot lands next to a single module
    legs = {Cell(0, 0)} | {Cell(0, -k) for k in range(1, 4)} | {Cell(k, 0) for k in range(1, 4)}
    legs |= {Cell(-k, k) for k in range(1, 4)}
    b = Board(legs)
    phase1(b)
    assert not degree_one(b.occ)
    verify_plan(Configuration(legs), b.plan())


@given(shapes(3, 25))
def test_phase1_property(c):
    b = Board(c.cells)
    phase1(b)
    assert not degree_one(b.occ)
    assert len(b.log) <= 50 * len(c) ** 2


def test_phase2_examples():
    b = Board(TRI.cells)
    phase2(b)
    assert not b.log
    assert len(biconnected(BOWTIE.cells)[0]) == 2
    b = Board(BOWTIE.cells)
    phase1(b)
    phase2(b)
    assert len(block_tree(b.occ).blocks) == 1
    verify_plan(BOWTIE, b.plan())


def test_merge_never_shrinks_core():
    c = random_configuration(24, 5)
    b = Board(c.cells)
    phase1(b)
    b.root = max(b.occ, key=lambda x: (-(2 * x[1] + x[0]), x[0]))
    while True:
        bt = block_tree(b.occ, b.root)
        if len(bt.blocks) == 1:
            break
        blocks = len(bt.blocks)
        core = core_block(b.occ, b.root)
        leaf = bt.leaves()[0]
        merge(b, frozenset(bt.blocks[leaf] - {bt.parent_cut[leaf]}))
        assert core <= core_block(b.occ, b.root)
        assert len(block_tree(b.occ, b.root).blocks) < blocks


@pytest.mark.parametrize("c", [TRI, Configuration(neighbors(Cell(0, 0)))], ids=["triangle", "ring"])
def test_phase3_examples(c):
    b = Board(c.cells)
    phase3(b)
    assert is_canonical_path(b.occ)
    assert len(b.path) == len(c)


def test_frozen_path_never_moves():
    b = run_phases(random_configuration(18, 11))
    assert is_canonical_path(b.path)
    for cell in b.path[1:]:
        landed = max(i for i, mv in enumerate(b.log) if mv.dest == cell)
        assert all(mv.mover != cell for mv in b.log[landed + 1:])


def test_plan_to_canonical():
    res = plan_to_canonical(random_configuration(15, 2))
    assert is_canonical_path(res.final.cells)
    assert sum(res.phase_moves.values()) == len(res.plan)


def test_reconfigure_examples():
    assert len(reconfigure(cfg((0, 0)), cfg((4, 4)))) == 0
    assert len(reconfigure(TRI, cfg((5, 5), (5, 6), (6, 5)))) == 0
    with pytest.raises(SizeMismatch):
        reconfigure(TRI, cfg((0, 0)))
    with pytest.raises(ModelNotSupported):
        reconfigure(TRI, canonical_path(3), HexRestricted)


def test_reconfigure_matches_bfs_reachability():
    shapes4 = enumerate_shapes(4)
    a = shapes4[0]
    for b in shapes4[1:12]:
        plan = reconfigure(a, b)
        assert normalize(verify_plan(a, plan)) == normalize(b)
        assert len(bfs_path(a, b)) <= len(plan)


@settings(max_examples=25)
@given(shapes(2, 14), shapes(2, 14))
def test_reconfigure_property(a, b):
    if len(a) != len(b):
        b = random_configuration(len(a), len(b))
    plan = reconfigure(a, b)
    assert isinstance(plan, MovePlan)
    assert normalize(verify_plan(a, plan)) == normalize(b)
