import pytest

from hexpivot.configuration import Configuration, pockets
from hexpivot.graph_analysis import Flower, flower_valid, is_biconnected
from hexpivot.hexgrid import Cell, distance, neighbors
from hexpivot.move_model import verify_plan
from hexpivot.planner import PreconditionViolated
from hexpivot.planner.board import Board
from hexpivot.planner.subprocs import (
    PatternMismatch,
    ShiftBlocked,
    _crew_bfs,
    ascending_path,
    descending_path,
    flower_walk,
    op_bridge,
    op_bubble_up,
    op_deflate,
    op_incorporate,
    op_inflate,
    op_local_bridge,
    op_shift,
)

SUPPORT = [Cell(q, 1) for q in range(-5, 2)]
ROW = [Cell(0, 0), Cell(-1, 0), Cell(-2, 0)]


def _replays(b: Board, start) -> None:
    end = verify_plan(Configuration(start), b.plan())
    assert end.cells == frozenset(b.occ)


def test_shift_row_cw():
    b = Board(SUPPORT + ROW)
    moves = op_shift(b, ROW, "cw")
    assert [mv.mover for mv in moves] == ROW
    # every module after the first takes the slot its predecessor left
    assert [mv.dest for mv in moves[1:]] == ROW[:-1]
    _replays(b, SUPPORT + ROW)


def test_shift_then_reverse_restores():
    b = Board(SUPPORT + ROW)
    before = frozenset(b.occ)
    moves = op_shift(b, ROW, "cw")
    back = [mv.dest for mv in reversed(moves)]
    op_shift(b, back, "ccw")
    assert frozenset(b.occ) == before


def test_shift_blocked_leaves_board_alone():
    # a module inside a full ring cannot pivot at all
    ring = neighbors(Cell(0, 0))
    b = Board(ring + [Cell(0, 0)])
    before = frozenset(b.occ)
    with pytest.raises(ShiftBlocked) as e:
        op_shift(b, [Cell(0, 0)], "cw")
    assert e.value.index == 0
    assert frozenset(b.occ) == before and not b.log


def test_paths_in_a_row():
    occ = set(SUPPORT + ROW)
    assert ascending_path(occ, Cell(-2, 0)) == [Cell(0, 0), Cell(-1, 0), Cell(-2, 0)]
    assert descending_path(occ, Cell(0, 0)) == [Cell(-2, 0), Cell(-1, 0), Cell(0, 0)]


@pytest.mark.parametrize("extra", [[], [Cell(2, -1)], [Cell(2, -1), Cell(2, 0)]])
def test_deflate_fills_the_hole(extra):
    start = neighbors(Cell(0, 0)) + extra
    b = Board(start)
    op_deflate(b, Cell(0, 0))
    assert Cell(0, 0) in b.occ
    assert not pockets(b.occ)
    assert is_biconnected(b.occ)
    _replays(b, start)


def test_deflate_rejects_filled_cell():
    b = Board(neighbors(Cell(0, 0)) + [Cell(0, 0)])
    with pytest.raises(PatternMismatch):
        op_deflate(b, Cell(0, 0))


def test_bubble_up_needs_both_corners():
    # the single hole of a ring has m↘↗ empty, so only deflate applies
    b = Board(neighbors(Cell(0, 0)))
    with pytest.raises(PatternMismatch):
        op_bubble_up(b, Cell(0, 0))


@pytest.mark.parametrize("cells,m", [
    ([(0, 0), (0, 1), (1, -1), (1, 0), (2, -1), (2, 0)], (0, 1)),
    ([(0, 0), (1, -1), (1, 0), (1, 1), (2, -1), (2, 0)], (1, 1)),
])
def test_inflate_moves_into_upper_left(cells, m):
    start = [Cell(*c) for c in cells]
    b = Board(start)
    dest, moves = op_inflate(b, Cell(*m))
    assert dest == Cell(m[0] - 1, m[1])
    assert dest in b.occ
    assert len(b.occ) == len(start)
    assert moves
    _replays(b, start)


def test_inflate_precondition():
    # m↑ is empty here
    b = Board([Cell(0, 0), Cell(1, 0), Cell(1, -1)])
    with pytest.raises(PreconditionViolated):
        op_inflate(b, Cell(0, 0))


ELL = [Cell(0, 0), Cell(0, 1), Cell(0, 2), Cell(1, 0), Cell(1, 1)]


def test_local_bridge_squeezes_next_to_outside():
    outside = Cell(-1, 1)
    b = Board(ELL + [outside])
    crew, moves = op_local_bridge(b, Cell(0, 2), ell=ELL)
    assert [mv.mover for mv in moves] == [Cell(0, 2)]
    (x,) = crew.modules
    nbs = set(neighbors(x))
    assert nbs & (set(ELL) - {Cell(0, 2)}) and outside in nbs
    _replays(b, ELL + [outside])


def test_incorporate_plain_pivot():
    b = Board(ELL + [Cell(-1, 0)])
    moves = op_incorporate(b, Cell(0, 2), ell=ELL)
    assert len(moves) >= 1
    assert b.stats.cases.get("incorporate:4") == 1
    _replays(b, ELL + [Cell(-1, 0)])


def test_incorporate_fills_enclosed_cell():
    ell = [Cell(*c) for c in [(0, 0), (0, 1), (0, 2), (1, -1), (1, 1), (2, -1), (2, 0)]]
    b = Board(ell + [Cell(-1, 0)])
    op_incorporate(b, Cell(0, 2), ell=ell)
    assert Cell(1, 0) in b.occ
    assert b.stats.cases.get("incorporate:1") == 1


def test_incorporate_rejects_non_ascender():
    b = Board(ELL + [Cell(-1, 1)])
    with pytest.raises(PreconditionViolated):
        op_incorporate(b, Cell(0, 1), ell=ELL)


STRIP = {Cell(q, r) for q in range(9) for r in (0, 1)}
CREW = [Cell(3, 2), Cell(4, 2), Cell(3, 3)]


def test_flower_walk_follows_the_strip():
    occ = STRIP | set(CREW)
    cw = flower_walk(occ, STRIP, CREW, Cell(3, 3), "cw")
    ccw = flower_walk(occ, STRIP, CREW, Cell(3, 3), "ccw")
    assert cw[0] == ccw[0] == Cell(3, 3)
    assert cw[1] != ccw[1]
    for c in cw + ccw:
        assert min(distance(c, x) for x in STRIP) == 2


@pytest.mark.parametrize("mstar,direction", [(Cell(8, 2), "ccw"), (Cell(0, 2), "cw")])
def test_bridge_reaches_the_outside(mstar, direction):
    start = STRIP | set(CREW) | {mstar}
    b = Board(start)
    f = Flower(Cell(3, 3))
    assert flower_valid(b.occ, STRIP, CREW, f)
    crew, moves = op_bridge(b, STRIP, f, CREW, direction)
    mine = set(crew.modules)
    assert any(nb == mstar for x in mine for nb in neighbors(x))
    assert any(nb in STRIP for x in mine for nb in neighbors(x))
    assert moves
    _replays(b, start)


def test_bridge_needs_valid_flower():
    b = Board(STRIP | set(CREW))
    with pytest.raises(PreconditionViolated):
        op_bridge(b, STRIP, Flower(Cell(3, 3)), CREW[:2] + [Cell(0, 0)])


def test_crew_turns_inside_its_flower():
    # both triangle orientations are reachable without leaving the flower
    tri = [Cell(3, 2), Cell(4, 2), Cell(3, 3)]
    b = Board(STRIP | set(tri))
    region = Flower(Cell(3, 3)).cells()
    seen = set()

    def record(occ):
        mine = sorted(occ - STRIP)
        seen.add(tuple((c[0] - mine[0][0], c[1] - mine[0][1]) for c in mine))
        return False

    _crew_bfs(b, tri, region, record, budget=5000)
    assert ((0, 0), (0, 1), (1, 0)) in seen
    assert ((0, 0), (1, -1), (1, 0)) in seen
