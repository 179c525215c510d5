import random

import pytest
from hypothesis import given, strategies as st

from conftest import cfg, shapes
from hexpivot.cli_io import random_configuration
from hexpivot.configuration import canonical_path, corners, rotate, translate
from hexpivot.graph_analysis import cut_vertices
from hexpivot.hexgrid import Cell, Direction, are_adjacent, cells_at, neighbor, neighbors
from hexpivot.move_model import (
    FREE_SPACE,
    HexMonkey,
    HexRestricted,
    IllegalMove,
    ModelId,
    MovePlan,
    StepIllegal,
    apply,
    cw_cycle,
    legal_moves,
    verify_plan,
)

PAIR = cfg((0, 0), (0, 1))
# the origin module has a monkey move about its N neighbour onto (-1,1)
HOOK = cfg((0, 0), (0, -1), (-1, -1), (-2, 0), (-2, 1))


def test_model_parse():
    assert ModelId.parse("monkey") is HexMonkey
    assert ModelId.parse("HexRestricted") is HexRestricted
    with pytest.raises(ValueError):
        ModelId.parse("leapfrog")


def test_pair_has_four_restricted_moves():
    moves = legal_moves(PAIR, HexMonkey)
    assert len(moves) == 4
    assert all(m.kind == "restricted" for m in moves)
    for x in PAIR.cells:
        assert sorted(m.rotation for m in moves if m.mover == x) == ["ccw", "cw"]


def test_cut_vertex_and_singleton_have_no_moves():
    line = canonical_path(3)
    assert not [m for m in legal_moves(line) if m.mover == Cell(0, 1)]
    assert legal_moves(cfg((0, 0))) == []


def test_move_geometry():
    for (kind, rot, d), (dest, empty, s2) in FREE_SPACE.items():
        s = neighbor(Cell(0, 0), d)
        assert dest in empty and s not in empty
        if kind == "restricted":
            assert are_adjacent(dest, s)
            assert s2 is None
        else:
            assert are_adjacent(s2, dest) and s2 not in empty


def test_pivot_vertices():
    for mv in legal_moves(HOOK):
        assert mv.mover in cells_at(mv.pivot) and mv.support in cells_at(mv.pivot)
        if mv.kind == "monkey":
            assert mv.second_support in cells_at(mv.second_pivot)
            assert mv.dest in cells_at(mv.second_pivot)


@given(shapes(2, 10))
def test_apply_and_inverse(c):
    for mv in legal_moves(c):
        after = apply(c, mv)
        assert len(after) == len(c)
        assert apply(after, mv.inverse()) == c


def test_apply_rejects_occupied_dest():
    mv = legal_moves(PAIR)[0]
    bad = type(mv)(mv.mover, Cell(0, 1) if mv.mover != Cell(0, 1) else Cell(0, 0), mv.rotation, mv.kind, mv.support)
    with pytest.raises(IllegalMove) as e:
        apply(PAIR, bad)
    assert e.value.reason == "occupancy"


def test_pair_transitions_match_oracle():
    # every pair orientation is one move from the vertical pair
    results = {tuple(sorted(apply(PAIR, m).cells)) for m in legal_moves(PAIR)}
    for r in results:
        a, b = r
        assert are_adjacent(a, b)
    assert len(results) == 4


def test_verify_plan_examples():
    c = cfg((0, 0), (0, 1), (1, 0), (1, 1))
    assert verify_plan(c, MovePlan()) == c
    rng = random.Random(3)
    plan = MovePlan()
    cur = c
    for _ in range(12):
        mv = rng.choice(legal_moves(cur))
        plan.append(mv)
        cur = apply(cur, mv)
    assert verify_plan(c, plan) == cur
    assert verify_plan(c, plan + plan.inverted()) == c
    k = 5
    occupied = next(iter(verify_plan(c, plan[:k]).cells - {plan[k].mover}))
    broken = MovePlan(plan.moves[:k] + [type(plan[k])(plan[k].mover, occupied, plan[k].rotation,
                                                      plan[k].kind, plan[k].support)])
    with pytest.raises(StepIllegal) as e:
        verify_plan(c, broken)
    assert e.value.index == k


def test_restricted_model_rejects_monkey_moves():
    c = HOOK
    monkeys = [m for m in legal_moves(c, HexMonkey) if m.kind == "monkey"]
    assert Cell(-1, 1) in {m.dest for m in monkeys if m.mover == Cell(0, 0)}
    with pytest.raises(StepIllegal):
        verify_plan(c, MovePlan(monkeys[:1]), HexRestricted)


def test_cw_cycle_pair():
    plan = cw_cycle(PAIR, Cell(0, 0))
    assert len(plan) == 6
    assert all(m.kind == "restricted" and m.rotation == "cw" for m in plan)
    assert {m.dest for m in plan} == set(neighbors(Cell(0, 1)))
    assert verify_plan(PAIR, plan) == PAIR


def test_cw_cycle_triangle():
    tri = cfg((0, 0), (0, 1), (1, 0))
    for m in tri.cells:
        plan = cw_cycle(tri, m)
        assert plan[-1].dest == m
        assert verify_plan(tri, plan) == tri
        assert all(mv.mover != x for mv in plan for x in tri.cells if x != m)


@given(shapes(2, 9))
def test_cw_cycle_of_non_cut_corners(c):
    cuts = cut_vertices(c)
    found = False
    for m in sorted(corners(c) - cuts):
        try:
            plan = cw_cycle(c, m)
        except Exception:
            continue
        assert verify_plan(c, plan) == c
        found = True
    assert found


@given(shapes(1, 9))
def test_model_monotonicity(c):
    assert set(legal_moves(c, HexRestricted)) <= set(legal_moves(c, HexMonkey))


@given(shapes(2, 12))
def test_reversibility(c):
    for mv in legal_moves(c):
        assert mv.inverse() in legal_moves(apply(c, mv))


@given(shapes(2, 12))
def test_cut_vertices_never_move(c):
    cuts = cut_vertices(c)
    assert not [m for m in legal_moves(c) if m.mover in cuts]


@given(shapes(2, 10), st.integers(0, 5), st.integers(-9, 9), st.integers(-9, 9))
def test_equivariance(c, k, dq, dr):
    def sig(conf):
        return sorted((m.dest[0] - m.mover[0], m.dest[1] - m.mover[1], m.kind) for m in legal_moves(conf))

    assert sig(translate(c, Cell(dq, dr))) == sig(c)
    assert len(legal_moves(rotate(c, k))) == len(legal_moves(c))
    moved = {(m.mover, m.dest) for m in legal_moves(translate(c, Cell(dq, dr)))}
    assert moved == {(m.mover + (dq, dr), m.dest + (dq, dr)) for m in legal_moves(c)}


def test_no_rigid_small_random_shapes():
    for seed in range(200):
        c = random_configuration(2 + seed % 10, seed)
        assert legal_moves(c, HexMonkey)


def test_direction_table_covers_all_supports():
    for kind in ("restricted", "monkey"):
        for rot in ("cw", "ccw"):
            assert {d for (k, r, d) in FREE_SPACE if k == kind and r == rot} == set(Direction)
