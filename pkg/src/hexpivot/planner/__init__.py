"""Universal reconfiguration under the monkey model.

``plan_to_canonical`` drives any connected configuration to a vertical path in
three phases (drop degree-1 modules, make the graph 2-connected, peel modules
into the path). ``reconfigure`` glues the plan for the start to the reversed
plan for the target.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

from ..configuration import Configuration, is_canonical_path, normalize
from ..graph_analysis import block_tree
from ..hexgrid import Cell
from ..move_model import HexMonkey, ModelId, MovePlan, verify_plan
from .board import Board, CaseFallthrough, PlannerError, PlannerStats, PreconditionViolated
from .merge import core_block, merge, phase2
from .phase1 import degree_one, phase1
from .phase3 import phase3

PlannerState = Board


class SizeMismatch(ValueError):
    def __init__(self, a: int, b: int):
        super().__init__(f"start has {a} modules, target has {b}")
        self.sizes = (a, b)


class ModelNotSupported(ValueError):
    """Plans are only produced for the monkey model."""


@dataclass
class PlanResult:
    plan: MovePlan
    final: Configuration
    stats: PlannerStats
    phase_moves: dict[str, int] = field(default_factory=dict)


def run_phases(c: Configuration, *, checks: bool = True) -> Board:
    """Run the three phases on a copy of ``c``; the board holds log and stats.

    With ``checks`` on, each phase's postcondition is asserted.
    """
    board = Board(c.cells)
    if len(board) <= 1:
        return board
    phase1(board)
    if checks and len(board) > 2 and degree_one(board.occ):
        raise PlannerError("degree-1 modules left after phase 1", board)
    phase2(board)
    if checks and len(block_tree(board.occ).blocks) != 1:
        raise PlannerError("more than one block after phase 2", board)
    phase3(board)
    if checks and not is_canonical_path(board.occ):
        raise PlannerError("phase 3 did not end on the canonical path", board)
    return board


def plan_to_canonical(c: Configuration) -> PlanResult:
    board = run_phases(c)
    plan = board.plan()
    final = verify_plan(c, plan, HexMonkey)
    return PlanResult(plan, final, board.stats, plan.counts("phase"))


def _top(cells) -> Cell:
    return min(cells, key=lambda x: (x[1], x[0]))


class _Memo:
    """Canonical plans per normalized shape (the planner is deterministic)."""

    def __init__(self, size: int = 4096):
        self.size = size
        self.data: OrderedDict = OrderedDict()

    def get(self, c: Configuration) -> tuple[MovePlan, Configuration]:
        norm = normalize(c)
        lo = min(c.cells)
        key = norm.sorted()
        if key in self.data:
            self.data.move_to_end(key)
            plan, final = self.data[key]
        else:
            res = plan_to_canonical(norm)
            plan, final = res.plan, res.final
            self.data[key] = (plan, final)
            if len(self.data) > self.size:
                self.data.popitem(last=False)
        v = Cell(lo[0], lo[1])
        return plan.translated(v), Configuration((x + v for x in final.cells), check=False)


_MEMO = _Memo()


def reconfigure(a: Configuration, b: Configuration, model: ModelId | str = HexMonkey) -> MovePlan:
    """A verified monkey plan taking ``a`` to ``b`` up to translation."""
    model = ModelId.parse(model)
    if model != HexMonkey:
        raise ModelNotSupported(f"planning is only available for the monkey model, not {model.value}")
    if len(a) != len(b):
        raise SizeMismatch(len(a), len(b))
    if normalize(a) == normalize(b):
        return MovePlan()
    plan_a, line_a = _MEMO.get(a)
    plan_b, line_b = _MEMO.get(b)
    ta, tb = _top(line_a.cells), _top(line_b.cells)
    back = MovePlan(m.tagged(proc="reverse") for m in plan_b.inverted().translated(ta - tb))
    plan = plan_a + back
    end = verify_plan(a, plan, HexMonkey)
    if normalize(end) != normalize(b):
        raise PlannerError("reconfiguration ended on the wrong shape")
    return plan


__all__ = [
    "Board",
    "CaseFallthrough",
    "ModelNotSupported",
    "PlanResult",
    "PlannerError",
    "PlannerState",
    "PlannerStats",
    "PreconditionViolated",
    "SizeMismatch",
    "core_block",
    "merge",
    "phase1",
    "phase2",
    "phase3",
    "plan_to_canonical",
    "reconfigure",
    "run_phases",
]
