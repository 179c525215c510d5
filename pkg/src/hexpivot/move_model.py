"""Pivot moves: legality, enumeration, application and plan verification.

Legality is decided from frozen free-space tables. For a mover at the origin
pivoting about a stationary neighbour ``s`` in direction ``D``, each entry
gives the destination, the cells that must be empty during the swing and, for
monkey moves, the cell of the second support ``s'``. The tables were produced
by the sweep oracle in :mod:`hexpivot.freespace` (1 degree steps, hexagon
shrunk by 1e-9) and the test suite re-derives them.

A restricted move turns 120 degrees about the vertex shared by the mover,
``s`` and the destination. A monkey move turns 60 degrees about that vertex,
then 60 degrees about a vertex ``w`` of ``s'`` and lands in the cell next to
the restricted destination, adjacent to ``s'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .configuration import Configuration, empty_runs, is_connected
from .hexgrid import (
    DELTAS,
    Cell,
    Direction,
    Frame,
    Vertex,
    direction_between,
    neighbor,
)


class ModelId(str, Enum):
    RESTRICTED = "restricted"
    MONKEY = "monkey"

    @classmethod
    def parse(cls, s) -> "ModelId":
        if isinstance(s, ModelId):
            return s
        key = str(s).lower()
        for m in cls:
            if key in (m.value, "hex" + m.value):
                return m
        raise ValueError(f"unknown move model {s!r}")


HexRestricted = ModelId.RESTRICTED
HexMonkey = ModelId.MONKEY

KINDS = {ModelId.RESTRICTED: ("restricted",), ModelId.MONKEY: ("restricted", "monkey")}

# (kind, rotation, support direction) -> (dest, must-be-empty, second support)
FREE_SPACE: dict[tuple[str, str, Direction], tuple[Cell, frozenset[Cell], Cell | None]] = {}

_FROZEN = [
    ("restricted", "ccw", "N", (1, -1), [(0, 1), (1, -1), (1, 0), (2, -1)], None),
    ("restricted", "ccw", "NE", (1, 0), [(-1, 1), (0, 1), (1, 0), (1, 1)], None),
    ("restricted", "ccw", "SE", (0, 1), [(-1, 0), (-1, 1), (-1, 2), (0, 1)], None),
    ("restricted", "ccw", "S", (-1, 1), [(-2, 1), (-1, 0), (-1, 1), (0, -1)], None),
    ("restricted", "ccw", "SW", (-1, 0), [(-1, -1), (-1, 0), (0, -1), (1, -1)], None),
    ("restricted", "ccw", "NW", (0, -1), [(0, -1), (1, -2), (1, -1), (1, 0)], None),
    ("restricted", "cw", "N", (-1, 0), [(-2, 1), (-1, 0), (-1, 1), (0, 1)], None),
    ("restricted", "cw", "NE", (0, -1), [(-1, -1), (-1, 0), (-1, 1), (0, -1)], None),
    ("restricted", "cw", "SE", (1, -1), [(-1, 0), (0, -1), (1, -2), (1, -1)], None),
    ("restricted", "cw", "S", (1, 0), [(0, -1), (1, -1), (1, 0), (2, -1)], None),
    ("restricted", "cw", "SW", (0, 1), [(0, 1), (1, -1), (1, 0), (1, 1)], None),
    ("restricted", "cw", "NW", (-1, 1), [(-1, 1), (-1, 2), (0, 1), (1, 0)], None),
    ("monkey", "ccw", "N", (1, 0), [(0, 1), (1, -1), (1, 0)], (2, -1)),
    ("monkey", "ccw", "NE", (0, 1), [(-1, 1), (0, 1), (1, 0)], (1, 1)),
    ("monkey", "ccw", "SE", (-1, 1), [(-1, 0), (-1, 1), (0, 1)], (-1, 2)),
    ("monkey", "ccw", "S", (-1, 0), [(-1, 0), (-1, 1), (0, -1)], (-2, 1)),
    ("monkey", "ccw", "SW", (0, -1), [(-1, 0), (0, -1), (1, -1)], (-1, -1)),
    ("monkey", "ccw", "NW", (1, -1), [(0, -1), (1, -1), (1, 0)], (1, -2)),
    ("monkey", "cw", "N", (-1, 1), [(-1, 0), (-1, 1), (0, 1)], (-2, 1)),
    ("monkey", "cw", "NE", (-1, 0), [(-1, 0), (-1, 1), (0, -1)], (-1, -1)),
    ("monkey", "cw", "SE", (0, -1), [(-1, 0), (0, -1), (1, -1)], (1, -2)),
    ("monkey", "cw", "S", (1, -1), [(0, -1), (1, -1), (1, 0)], (2, -1)),
    ("monkey", "cw", "SW", (1, 0), [(0, 1), (1, -1), (1, 0)], (1, 1)),
    ("monkey", "cw", "NW", (0, 1), [(-1, 1), (0, 1), (1, 0)], (-1, 2)),
]

for _kind, _rot, _d, _dest, _empty, _s2 in _FROZEN:
    FREE_SPACE[(_kind, _rot, Direction[_d])] = (
        Cell(*_dest),
        frozenset(Cell(*c) for c in _empty),
        Cell(*_s2) if _s2 is not None else None,
    )
del _kind, _rot, _d, _dest, _empty, _s2


def flip(rotation: str) -> str:
    return "ccw" if rotation == "cw" else "cw"


class IllegalMove(ValueError):
    def __init__(self, reason: str, move: "Move | None" = None):
        self.reason = reason
        self.move = move
        super().__init__(f"{reason}: {move}")


class StepIllegal(ValueError):
    def __init__(self, index: int, reason: str, move: "Move | None" = None):
        self.index = index
        self.reason = reason
        self.move = move
        super().__init__(f"step {index} illegal ({reason}): {move}")


class NoCwMove(RuntimeError):
    pass


class CycleCapExceeded(RuntimeError):
    pass


def _vertex(*cells) -> Vertex:
    return Vertex(*sorted(Cell(*c) for c in cells))


@dataclass(frozen=True)
class Move:
    """One pivot. ``support`` is the stationary neighbour about whose vertex the
    swing starts; monkey moves also name the second support they hand over to.
    ``phase`` and ``proc`` are annotations and do not take part in equality."""

    mover: Cell
    dest: Cell
    rotation: str
    kind: str
    support: Cell
    second_support: Cell | None = None
    phase: str = field(default="", compare=False)
    proc: str = field(default="", compare=False)

    @property
    def via(self) -> Cell:
        """The cell swept halfway (the restricted destination for monkeys)."""
        if self.kind == "restricted":
            return self.dest
        d = direction_between(self.mover, self.support)
        return neighbor(self.mover, d.ccw() if self.rotation == "cw" else d.cw())

    @property
    def pivot(self) -> Vertex:
        return _vertex(self.mover, self.support, self.via)

    first_pivot = pivot

    @property
    def second_pivot(self) -> Vertex | None:
        if self.kind != "monkey":
            return None
        return _vertex(self.dest, self.via, self.second_support)

    def inverse(self) -> "Move":
        if self.kind == "restricted":
            return Move(self.dest, self.mover, flip(self.rotation), "restricted", self.support,
                        None, self.phase, self.proc)
        return Move(self.dest, self.mover, flip(self.rotation), "monkey", self.second_support,
                    self.support, self.phase, self.proc)

    def translated(self, v) -> "Move":
        def t(c):
            return None if c is None else Cell(c[0] + v[0], c[1] + v[1])

        return replace(self, mover=t(self.mover), dest=t(self.dest), support=t(self.support),
                       second_support=t(self.second_support))

    def mapped(self, frame: Frame) -> "Move":
        """Map a move expressed in ``frame`` coordinates back to world coordinates."""
        f = frame.to_world
        return replace(
            self,
            mover=f(self.mover),
            dest=f(self.dest),
            support=f(self.support),
            second_support=None if self.second_support is None else f(self.second_support),
            rotation=frame.rot_to_world(self.rotation),
        )

    def tagged(self, phase: str | None = None, proc: str | None = None) -> "Move":
        return replace(self, phase=self.phase if phase is None else phase,
                       proc=self.proc if proc is None else proc)

    def __repr__(self) -> str:
        tag = "M" if self.kind == "monkey" else "R"
        return f"{tag}{self.rotation}({self.mover!r}->{self.dest!r})"


def move_about(mover: Cell, support: Cell, rotation: str, kind: str) -> Move | None:
    """Build the move of ``mover`` pivoting about ``support`` (geometry only)."""
    d = direction_between(mover, support)
    if d is None:
        return None
    dest, _, s2 = FREE_SPACE[(kind, rotation, d)]
    dest = Cell(mover[0] + dest[0], mover[1] + dest[1])
    if s2 is not None:
        s2 = Cell(mover[0] + s2[0], mover[1] + s2[1])
    return Move(mover, dest, rotation, kind, Cell(*support), s2)


def swing_clear(occ, mover: Cell, d: Direction, rotation: str, kind: str) -> bool:
    """Free-space and support test for one table entry (ignores connectivity)."""
    dest, empty, s2 = FREE_SPACE[(kind, rotation, d)]
    q, r = mover
    for dq, dr in empty:
        if (q + dq, r + dr) in occ:
            return False
    if s2 is not None and (q + s2[0], r + s2[1]) not in occ:
        return False
    return True


def check_move(occ, move: Move, model: ModelId = HexMonkey, *, connectivity: bool = True) -> str | None:
    """Return None if ``move`` is legal in ``occ``, else the violated clause."""
    model = ModelId.parse(model)
    if move.mover not in occ or move.dest in occ:
        return "occupancy"
    if move.kind not in KINDS[model]:
        return "model"
    d = direction_between(move.mover, move.support)
    if d is None or move.support not in occ:
        return "support"
    expected = move_about(move.mover, move.support, move.rotation, move.kind)
    if expected is None or expected.dest != move.dest or expected.second_support != move.second_support:
        return "geometry"
    if not swing_clear(occ, move.mover, d, move.rotation, move.kind):
        return "free-space"
    if connectivity and not is_connected(occ, without=move.mover):
        return "connectivity"
    return None


def is_legal(c, move: Move, model: ModelId = HexMonkey) -> bool:
    occ = c.cells if isinstance(c, Configuration) else c
    return check_move(occ, move, model) is None


def moves_of(occ, m: Cell, model: ModelId = HexMonkey) -> list[Move]:
    """Legal moves of module ``m`` assuming ``occ`` minus ``m`` is connected."""
    out = []
    kinds = KINDS[ModelId.parse(model)]
    q, r = m
    for d in Direction:
        dq, dr = DELTAS[d]
        s = Cell(q + dq, r + dr)
        if s not in occ:
            continue
        for rot in ("cw", "ccw"):
            for kind in kinds:
                if swing_clear(occ, m, d, rot, kind):
                    out.append(move_about(m, s, rot, kind))
    return out


def legal_moves(c, model: ModelId = HexMonkey) -> list[Move]:
    occ = c.cells if isinstance(c, Configuration) else frozenset(c)
    if len(occ) < 2:
        return []
    out = []
    for m in sorted(occ):
        if not is_connected(occ, without=m):
            continue
        out.extend(moves_of(occ, m, model))
    out.sort(key=lambda mv: (mv.mover, mv.rotation, mv.dest, mv.kind, mv.support))
    return out


def apply(c: Configuration, move: Move, model: ModelId = HexMonkey) -> Configuration:
    reason = check_move(c.cells, move, model)
    if reason is not None:
        raise IllegalMove(reason, move)
    return apply_unchecked(c, move)


def apply_unchecked(c: Configuration, move: Move) -> Configuration:
    return Configuration((c.cells - {move.mover}) | {move.dest}, check=False)


# --- plans -------------------------------------------------------------------


class MovePlan:
    """An ordered list of moves with phase / sub-procedure annotations."""

    def __init__(self, moves: Iterable[Move] = ()):
        self.moves: list[Move] = list(moves)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return MovePlan(self.moves[i])
        return self.moves[i]

    def __add__(self, other: "MovePlan | Sequence[Move]") -> "MovePlan":
        return MovePlan(self.moves + list(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, MovePlan):
            return self.moves == other.moves
        return NotImplemented

    def __repr__(self) -> str:
        return f"MovePlan({len(self.moves)} moves)"

    def append(self, move: Move) -> None:
        self.moves.append(move)

    def extend(self, moves: Iterable[Move]) -> None:
        self.moves.extend(moves)

    def inverted(self) -> "MovePlan":
        """Moves undoing this plan, in order."""
        return MovePlan(m.inverse() for m in reversed(self.moves))

    def translated(self, v) -> "MovePlan":
        return MovePlan(m.translated(v) for m in self.moves)

    def counts(self, by: str = "phase") -> dict[str, int]:
        out: dict[str, int] = {}
        for m in self.moves:
            key = getattr(m, by) or "-"
            out[key] = out.get(key, 0) + 1
        return out


def verify_plan(start: Configuration, plan: Iterable[Move], model: ModelId = HexMonkey) -> Configuration:
    """Replay ``plan`` with a full legality check per step; return the end state."""
    occ = set(start.cells)
    for i, mv in enumerate(plan):
        reason = check_move(occ, mv, model)
        if reason is not None:
            raise StepIllegal(i, reason, mv)
        occ.discard(mv.mover)
        occ.add(mv.dest)
    return Configuration(occ, check=False)


# --- rolling along a boundary -------------------------------------------------


def roll(occ, pos: Cell, support: Direction, rotation: str):
    """One wall-following pivot of a module at ``pos`` (not in ``occ``).

    ``support`` is the direction of the neighbour the module last pivoted
    about. Scanning from there against the sense of rotation, the next pivot
    is about the first occupied neighbour followed by three empty ones; gaps
    of one or two empty cells are too narrow to swing through and are skipped.
    Returns ``(move, next_support)`` or None when the module is stuck.
    """
    step = -1 if rotation == "cw" else 1
    full = [neighbor(pos, d) in occ for d in Direction]
    k = int(support)
    if not full[k % 6]:
        return None
    for _ in range(6):
        if not (full[(k + step) % 6] or full[(k + 2 * step) % 6] or full[(k + 3 * step) % 6]):
            break
        k += step
        while not full[k % 6]:
            k += step
    else:
        return None
    d = Direction(k % 6)
    s = neighbor(pos, d)
    probe = set(occ)
    probe.add(pos)
    for kind in ("restricted", "monkey"):
        if swing_clear(probe, pos, d, rotation, kind):
            mv = move_about(pos, s, rotation, kind)
            if kind == "restricted":
                back = direction_between(mv.dest, s)
            else:
                back = direction_between(mv.dest, mv.second_support)
            return mv, back
    return None


def initial_support(occ, pos: Cell, rotation: str) -> Direction | None:
    """Support direction that starts a roll into the longest empty run."""
    runs = empty_runs(occ, pos)
    if not runs or runs[0][1] == 6:
        return None
    start, length = max(runs, key=lambda r: (r[1], -r[0]))
    if rotation == "cw":
        return Direction((start + length) % 6)
    return Direction((start - 1) % 6)


def cw_cycle(c: Configuration, m: Cell, rotation: str = "cw") -> MovePlan:
    """Pivot ``m`` clockwise along the boundary until it is back where it started."""
    if m not in c.cells:
        raise ValueError(f"{m} is not a module")
    occ = frozenset(c.cells - {m})
    if not is_connected(occ):
        raise ValueError(f"{m} is a cut vertex")
    sup = initial_support(occ, m, rotation)
    if sup is None:
        raise NoCwMove(f"{m} has no neighbour to pivot about")
    plan = MovePlan()
    pos = m
    cap = 6 * len(c)
    while True:
        step = roll(occ, pos, sup, rotation)
        if step is None:
            raise NoCwMove(f"{m} stuck at {pos} after {len(plan)} moves")
        mv, sup = step
        plan.append(mv)
        pos = mv.dest
        if pos == m:
            return plan
        if len(plan) > cap:
            raise CycleCapExceeded(f"{m} did not return within {cap} moves")
