import pytest

from hexpivot.freespace import SHRINK, STEP_DEG, derive_free_space
from hexpivot.hexgrid import Cell, Direction, neighbor, rotate_cw
from hexpivot.move_model import FREE_SPACE


@pytest.fixture(scope="module")
def fresh():
    return derive_free_space(STEP_DEG)


def test_oracle_parameters():
    assert STEP_DEG == 1.0 and SHRINK == 1e-9


def test_frozen_table_equals_fresh_sweep(fresh):
    assert set(fresh) == set(FREE_SPACE)
    for key, res in fresh.items():
        dest, empty, s2 = FREE_SPACE[key]
        assert (res.dest, res.must_be_empty, res.second_support) == (dest, empty, s2), key


def test_dest_in_table_support_not(fresh):
    for (kind, rot, d), res in fresh.items():
        assert res.dest in res.must_be_empty
        assert neighbor(Cell(0, 0), d) not in res.must_be_empty


def test_rotational_closure():
    # each support direction is the base case rotated
    for kind in ("restricted", "monkey"):
        for rot in ("cw", "ccw"):
            dest0, empty0, s20 = FREE_SPACE[(kind, rot, Direction.N)]
            for k in range(6):
                dest, empty, s2 = FREE_SPACE[(kind, rot, Direction(k))]
                assert dest == rotate_cw(dest0, k)
                assert empty == frozenset(rotate_cw(c, k) for c in empty0)
                if s20 is not None:
                    assert s2 == rotate_cw(s20, k)


def test_restricted_clearance_beyond_dest(fresh):
    for (kind, rot, d), res in fresh.items():
        if kind == "restricted":
            # the swing also brushes three cells besides the destination
            assert len(res.must_be_empty) == 4


def test_finer_sweep_agrees():
    assert {k: v.must_be_empty for k, v in derive_free_space(0.5).items()} == {
        k: v[1] for k, v in FREE_SPACE.items()
    }
