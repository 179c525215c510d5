"""Mutable planning state: occupancy, the frozen canonical path and the move log."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..configuration import Configuration, is_connected
from ..hexgrid import Cell, Direction, Frame, direction_between, neighbor, topmost_rightmost
from ..move_model import (
    HexMonkey,
    IllegalMove,
    Move,
    MovePlan,
    check_move,
    initial_support,
    moves_of,
    roll,
)


class PlannerError(RuntimeError):
    """An internal planner assertion failed. Carries the state for a dump."""

    def __init__(self, msg: str, state: "Board | None" = None):
        super().__init__(msg)
        self.state = state

    def dump(self) -> str:
        if self.state is None:
            return str(self)
        lines = [f"# {self}", f"# phase {self.state.phase}, {len(self.state.log)} moves so far"]
        frozen = set(self.state.path)
        for c in sorted(self.state.occ):
            tag = "  # P" if c in frozen else ""
            lines.append(f"{c.q} {c.r}{tag}")
        return "\n".join(lines) + "\n"


class CaseFallthrough(PlannerError):
    pass


class PreconditionViolated(PlannerError):
    pass


@dataclass
class PlannerStats:
    moves: dict[str, int] = field(default_factory=dict)
    procs: dict[str, int] = field(default_factory=dict)
    cases: dict[str, int] = field(default_factory=dict)
    fallbacks: int = 0
    merges: int = 0
    relocations: int = 0

    def bump(self, table: str, key: str, k: int = 1) -> None:
        d = getattr(self, table)
        d[key] = d.get(key, 0) + k


class Board:
    """Occupied cells plus the canonical path ``path`` growing up from ``root``.

    Every move goes through :meth:`move`, which re-checks legality under the
    monkey model and appends to the log with the current phase and
    sub-procedure tags.
    """

    def __init__(self, cells, *, check: bool = True):
        self.occ: set[Cell] = {Cell(*c) for c in cells}
        self.path: list[Cell] = []
        self.log: list[Move] = []
        self.phase = ""
        self.proc = ""
        self.check = check
        self.stats = PlannerStats()
        self.root = topmost_rightmost(self.occ)
        # modules parked outside their block, waiting for a later ascender
        self.parked: dict[Cell, str] = {}

    # --- views ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.occ)

    def config(self) -> Configuration:
        return Configuration(self.occ, check=False)

    @property
    def working(self) -> set[Cell]:
        """G: the modules not yet frozen into the canonical path."""
        return self.occ - set(self.path)

    def degree(self, c: Cell, among=None) -> int:
        among = self.occ if among is None else among
        return sum(1 for d in Direction if neighbor(c, d) in among)

    def plan(self) -> MovePlan:
        return MovePlan(self.log)

    def copy(self) -> "Board":
        b = Board(self.occ, check=self.check)
        b.path = list(self.path)
        b.phase, b.proc = self.phase, self.proc
        b.root = self.root
        b.parked = dict(self.parked)
        return b

    # --- moving --------------------------------------------------------------

    def move(self, mv: Move) -> Move:
        if mv.mover in self.path:
            raise PlannerError(f"frozen module {mv.mover} asked to move", self)
        if self.check:
            reason = check_move(self.occ, mv, HexMonkey)
            if reason is not None:
                raise IllegalMove(reason, mv)
        self.occ.discard(mv.mover)
        self.occ.add(mv.dest)
        mv = mv.tagged(self.phase, self.proc)
        self.log.append(mv)
        self.stats.bump("moves", self.phase or "-")
        if self.proc:
            self.stats.bump("procs", self.proc)
        return mv

    def run(self, moves) -> None:
        for mv in moves:
            self.move(mv)

    def undo_to(self, k: int) -> None:
        """Roll the board back to the state after ``k`` logged moves."""
        while len(self.log) > k:
            mv = self.log.pop()
            self.occ.discard(mv.dest)
            self.occ.add(mv.mover)
            self.stats.bump("moves", mv.phase or "-", -1)
            if mv.proc:
                self.stats.bump("procs", mv.proc, -1)

    def pivots(self, x: Cell, rotation: str) -> list[Move]:
        """Legal pivots of ``x`` in one sense (connectivity included)."""
        if x not in self.occ or not is_connected(self.occ, without=x):
            return []
        return [mv for mv in moves_of(self.occ, x) if mv.rotation == rotation]

    def tour(self, x: Cell, rotation: str, cap: int | None = None) -> list[Move]:
        """Wall-following pivots of ``x`` until it is back home (not applied).

        Returns the moves made before getting stuck or returning; the caller
        truncates at whatever position it wants.
        """
        rest = frozenset(self.occ - {x})
        if not rest or not is_connected(rest):
            return []
        sup = initial_support(rest, x, rotation)
        if sup is None:
            return []
        out: list[Move] = []
        pos = x
        cap = cap or 6 * len(self.occ) + 6
        while len(out) < cap:
            step = roll(rest, pos, sup, rotation)
            if step is None:
                break
            mv, sup = step
            out.append(mv)
            pos = mv.dest
            if pos == x:
                break
        return out


def apply_frame(m: Cell, frame: Frame, rel: Cell) -> Cell:
    """World cell at frame-relative offset ``rel`` from ``m``."""
    w = frame.to_world(rel)
    return Cell(m[0] + w[0], m[1] + w[1])


def frames_with(m: Cell, p: Cell, want: Direction) -> list[Frame]:
    """Frames in which ``p`` lies in direction ``want`` from ``m``."""
    from ..hexgrid import ALL_FRAMES, DELTAS

    d = direction_between(m, p)
    out = []
    for f in ALL_FRAMES:
        if f.to_frame(DELTAS[d]) == DELTAS[want]:
            out.append(f)
    return out
