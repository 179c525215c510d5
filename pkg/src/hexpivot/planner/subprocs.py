"""Local sub-procedures used while merging a 2-connected piece ``ell``.

Positions are described relative to a module ``m`` through arrow strings read
in a frame of reference (``rel(m, frame, "↑↗")``), so each operation can be
applied in any of the twelve lattice orientations. Preconditions are checked
up front and a violation raises with the board attached.

Shift, the Inflate choreography and the squeeze branch of Local-Bridge are
scripted step by step. Deflate, Bubble-Up, the Incorporate repairs and the
crew maneuvers of Bridge are specified by their net effect; they are realized
by a bounded search over the few modules involved, which keeps them O(1)
moves each.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from ..configuration import is_connected, pockets
from ..graph_analysis import Crew, Flower, biconnected, flower_valid, two_cut
from ..hexgrid import IDENTITY, ORIGIN, Cell, Frame, distance, neighbors, offset
from ..move_model import Move, flip, moves_of
from .board import Board, PlannerError, PreconditionViolated, apply_frame
from .search import local_search


class ShiftBlocked(PlannerError):
    def __init__(self, index: int, module: Cell, state=None):
        super().__init__(f"shift blocked at index {index} ({module})", state)
        self.index = index


class PatternMismatch(PreconditionViolated):
    pass


class ManeuverUnreachable(PlannerError):
    pass


def rel(m: Cell, frame: Frame, arrows: str) -> Cell:
    return apply_frame(m, frame, offset(ORIGIN, arrows))


def row_of(c: Cell, frame: Frame) -> int:
    """Row index in the frame; larger is lower."""
    return frame.to_frame(c)[1]


def _is_2connected(cells) -> bool:
    cells = set(cells)
    if len(cells) <= 2:
        return is_connected(cells) if cells else True
    return is_connected(cells) and len(biconnected(cells)[0]) == 1


def _area(cells) -> int:
    return sum(len(p) for p in pockets(cells))


def _piece_after(ell, occ_before, occ_after) -> set[Cell]:
    """``ell`` after a local rearrangement, assuming outside modules stayed put."""
    return set(occ_after) - (set(occ_before) - set(ell))


def _realize(board: Board, label: str, goal, around, radius: int = 2, max_depth: int = 8,
             budget: int = 60000) -> list[Move]:
    moves = local_search(board, goal, around=around, radius=radius, max_depth=max_depth,
                         budget=budget)
    if moves is None:
        raise ManeuverUnreachable(f"{label}: net effect not reachable within {max_depth} moves", board)
    board.proc = label
    board.run(moves)
    board.stats.bump("cases", f"{label}:search")
    return moves


# --- paths in rows -------------------------------------------------------------


def ascending_path(occ, end: Cell, frame: Frame = IDENTITY) -> list[Cell]:
    """Maximal ascending path (each next module top-left of the previous) ending at ``end``."""
    if end not in occ:
        return []
    out = [end]
    c = rel(end, frame, "↘")
    while c in occ:
        out.append(c)
        c = rel(c, frame, "↘")
    return out[::-1]


def descending_path(occ, end: Cell, frame: Frame = IDENTITY) -> list[Cell]:
    """Maximal descending path (each next module bottom-right of the previous) ending at ``end``."""
    if end not in occ:
        return []
    out = [end]
    c = rel(end, frame, "↖")
    while c in occ:
        out.append(c)
        c = rel(c, frame, "↖")
    return out[::-1]


# --- Shift -------------------------------------------------------------------


def _companion_fix(board: Board, nxt: Cell, rot: str, skip: set[Cell]) -> None:
    # a degree-1 module next to the upcoming mover pivots the other way first
    for r in neighbors(nxt):
        if r in board.occ and r not in skip and r not in board.path and board.degree(r) == 1:
            opts = board.pivots(r, flip(rot))
            if opts:
                opts.sort(key=lambda mv: (-board.degree(mv.dest, board.occ - {r}), mv.dest))
                board.move(opts[0])
            return


def op_shift(board: Board, M: Sequence[Cell], d: str, frame: Frame = IDENTITY) -> list[Move]:
    """One pivot in sense ``d`` per module of ``M``, in order.

    Each module prefers the slot its predecessor just left. The board is left
    untouched when some module cannot pivot.
    """
    rot = frame.rot_to_world(d)
    k0 = len(board.log)
    proc = board.proc
    board.proc = "shift"
    M = [Cell(*c) for c in M]
    prev: Cell | None = None
    for i, m in enumerate(M):
        opts = board.pivots(m, rot)
        if not opts:
            board.undo_to(k0)
            board.proc = proc
            raise ShiftBlocked(i, m, board)
        opts.sort(key=lambda mv: (mv.dest != prev, mv.kind != "restricted",
                                  row_of(mv.dest, frame) != row_of(m, frame), mv.dest))
        board.move(opts[0])
        prev = m
        if i + 1 < len(M):
            _companion_fix(board, M[i + 1], rot, set(M))
    board.proc = proc
    return board.log[k0:]


# --- Deflate / Bubble-Up -------------------------------------------------------


def _corner_frame_check(board: Board, p: Cell, frame: Frame) -> Cell:
    m = rel(p, frame, "↙")
    occ = frozenset(board.occ)
    if m not in occ:
        raise PatternMismatch(f"no module below-left of {p}", board)
    if p in occ:
        raise PatternMismatch(f"{p} is not empty", board)
    for a in ("↖", "↙", "↓"):
        if rel(m, frame, a) in occ:
            raise PatternMismatch(f"{m} is not a SW corner ({a} full)", board)
    if not any(p in pk for pk in pockets(occ)):
        raise PatternMismatch(f"{p} is not enclosed", board)
    return m


def deflate_applies(board: Board, p: Cell, frame: Frame = IDENTITY) -> bool:
    m = rel(p, frame, "↙")
    return not (rel(m, frame, "↘↗") in board.occ and rel(m, frame, "↑↖") in board.occ)


def op_deflate(board: Board, p: Cell, frame: Frame = IDENTITY, ell=None) -> list[Move]:
    """Fill the enclosed cell ``p`` with a nearby module of ``ell``: pocket area drops by one."""
    m = _corner_frame_check(board, p, frame)
    if not deflate_applies(board, p, frame):
        raise PatternMismatch("deflate needs one of m↘↗, m↑↖ empty", board)
    ell = set(ell) if ell is not None else set(board.occ)
    before = frozenset(board.occ)
    area = _area(ell)

    def goal(occ):
        if p not in occ:
            return False
        piece = _piece_after(ell, before, occ)
        return _area(piece) == area - 1 and _is_2connected(piece)

    return _realize(board, "deflate", goal, around=[m, p], radius=2, max_depth=6)


def op_bubble_up(board: Board, p: Cell, frame: Frame = IDENTITY, ell=None) -> list[Move]:
    """Move the enclosed empty cell at ``p`` one step top-left, keeping ``ell`` 2-connected."""
    m = _corner_frame_check(board, p, frame)
    occ = frozenset(board.occ)
    if not (rel(m, frame, "↘↗") in occ and rel(m, frame, "↑↖") in occ):
        raise PatternMismatch("bubble-up needs m↘↗ and m↑↖ full", board)
    ell = set(ell) if ell is not None else set(occ)
    g, g2 = rel(m, frame, "↘"), rel(m, frame, "↘↗")
    if g in ell and g2 in ell:
        tc = two_cut(ell, g, g2)
        if tc is not None and not tc.trivial:
            raise PatternMismatch(f"{{{g}, {g2}}} is a nontrivial 2-cut", board)
    target = rel(p, frame, "↖")
    before = frozenset(occ)

    def goal(o):
        if p not in o or target in o or rel(m, frame, "↖") not in o:
            return False
        piece = _piece_after(ell, before, o)
        return any(target in pk for pk in pockets(piece)) and _is_2connected(piece)

    return _realize(board, "bubble-up", goal, around=[m, p], radius=2, max_depth=8)


# --- Inflate -----------------------------------------------------------------


def _run_script(board: Board, frame: Frame, pos: dict, steps: list, goal) -> bool:
    """Depth-first over the pivot choices of a script of pivots and shifts."""
    if not steps:
        return goal(board.occ)
    kind, key, d = steps[0]
    k = len(board.log)
    if kind == "shift":
        path = pos[key] if not key.endswith("^-1") else pos[key[:-3]][::-1]
        if not path:
            return _run_script(board, frame, pos, steps[1:], goal)
        try:
            moves = op_shift(board, path, d, frame)
        except ShiftBlocked:
            return False
        where = {mv.mover: mv.dest for mv in moves}
        nxt = dict(pos)
        base = key[:-3] if key.endswith("^-1") else key
        nxt[base] = [where.get(c, c) for c in pos[base]]
        if _run_script(board, frame, nxt, steps[1:], goal):
            return True
        board.undo_to(k)
        return False
    if pos.get(key) is None:
        return _run_script(board, frame, pos, steps[1:], goal)
    for mv in board.pivots(pos[key], frame.rot_to_world(d)):
        board.move(mv)
        nxt = dict(pos)
        nxt[key] = mv.dest
        if _run_script(board, frame, nxt, steps[1:], goal):
            return True
        board.undo_to(k)
    return False


def inflate_precondition(board: Board, m: Cell, frame: Frame = IDENTITY, ell=None) -> str | None:
    occ = frozenset(board.occ)
    ell = set(ell) if ell is not None else set(occ)
    for a in ("↖", "↙", "↓"):
        if rel(m, frame, a) in occ:
            return f"m{a} full"
    for a in ("↑", "↗"):
        if rel(m, frame, a) not in occ:
            return f"m{a} empty"
    if not any(rel(m, frame, a) in occ for a in ("↑↖", "↑↗", "↑↑↖")):
        return "none of m↑↖, m↑↗, m↑↑↖ full"
    for a, b in (("↑", "↑↗"), ("↑↑", "↑↑↖")):
        x, y = rel(m, frame, a), rel(m, frame, b)
        if x in ell and y in ell:
            tc = two_cut(ell, x, y)
            if tc is not None and not tc.trivial:
                return f"{{m{a}, m{b}}} is a nontrivial 2-cut"
    return None


def op_inflate(board: Board, m: Cell, frame: Frame = IDENTITY, ell=None) -> tuple[Cell, list[Move]]:
    """Move the module at m↑ to m↖; returns its new cell and the moves."""
    why = inflate_precondition(board, m, frame, ell)
    if why is not None:
        raise PreconditionViolated(f"inflate: {why}", board)
    occ = frozenset(board.occ)
    ell = set(ell) if ell is not None else set(occ)
    k0 = len(board.log)
    up, dest = rel(m, frame, "↑"), rel(m, frame, "↖")
    both = rel(m, frame, "↑↖") in occ and rel(m, frame, "↑↗") in occ
    M1 = [] if both else descending_path(occ, rel(m, frame, "↑↖"), frame)
    M2 = ascending_path(occ, m, frame)
    before = frozenset(occ)
    allowed = {up, rel(m, frame, "↑↑")} if both else {up}
    # repairs may pivot the modules of a trivial child hanging off s or s'
    for a, b in (("↑", "↑↗"), ("↑↑", "↑↑↖")):
        x, y = rel(m, frame, a), rel(m, frame, b)
        tc = two_cut(ell, x, y) if x in ell and y in ell else None
        if tc is not None:
            allowed |= {rel(m, frame, "↑↗"), rel(m, frame, "↑↑↖")}
            allowed |= {z for ch in tc.children if len(ch) <= 4 for z in ch} - {x, y, m}

    def goal(o):
        gone = before - o
        if dest not in o or not gone or not gone <= allowed or len(o - before) != len(gone):
            return False
        # m and the relocated module may hang off the rest: they form the bridge
        piece = _piece_after(ell, before, o)
        return _is_2connected(piece) or _is_2connected(piece - {dest, m})

    s = rel(m, frame, "↑↗")
    pos = {"M1": M1, "M2": M2, "m'": up, "s": s if s in occ else None,
           "m''": rel(m, frame, "↑↑") if both else None}
    head = [("shift", "M2", "ccw"), ("shift", "M1", "cw"), ("pivot", "m'", "ccw")]
    tail = [("shift", "M1^-1", "ccw"), ("pivot", "m'", "ccw"), ("shift", "M2^-1", "cw")]
    if both:
        scripts = [head + [("pivot", "m''", "cw")] + tail]
    else:
        # second variant: the repair used when s is left hanging
        scripts = [head + tail, head + [("pivot", "m'", "ccw"), ("pivot", "s", "ccw"),
                                        ("shift", "M1^-1", "ccw"), ("shift", "M2^-1", "cw")]]
    board.proc = "inflate"
    for steps in scripts:
        if _run_script(board, frame, pos, steps, goal):
            board.stats.bump("cases", "inflate:script")
            break
        board.undo_to(k0)
    else:
        board.undo_to(k0)
        _realize(board, "inflate", goal, around=[m, up, dest], radius=2, max_depth=10)
    return dest, board.log[k0:]


# --- Local-Bridge / Incorporate --------------------------------------------------


def _check_ascender(board: Board, m: Cell, frame: Frame, label: str) -> None:
    if m not in board.occ:
        raise PreconditionViolated(f"{label}: no module at {m}", board)
    for a in ("↖", "↙", "↓"):
        if rel(m, frame, a) in board.occ:
            raise PreconditionViolated(f"{label}: m{a} is full, m is not ascending", board)


def next_cw(board: Board, m: Cell) -> Move | None:
    tour = board.tour(m, "cw", cap=1)
    return tour[0] if tour else None


def op_local_bridge(board: Board, m: Cell, frame: Frame = IDENTITY, ell=None) -> tuple[Crew, list[Move]]:
    """Bridge from ``ell`` right where the ascending module ``m`` got blocked."""
    occ = frozenset(board.occ)
    ell = set(ell) if ell is not None else set(occ)
    _check_ascender(board, m, frame, "local-bridge")
    k0 = len(board.log)
    first = next_cw(board, m)
    if first is None:
        raise PreconditionViolated("local-bridge: m cannot pivot clockwise", board)
    cw = frame.rot_to_world("cw")
    if first.rotation != cw:
        first = next((mv for mv in board.pivots(m, cw)), None)
        if first is None:
            raise PreconditionViolated("local-bridge: m cannot pivot clockwise", board)
    r0 = row_of(m, frame)
    if row_of(first.dest, frame) == r0 + 1 and rel(m, frame, "↗") in occ:
        for a, b in (("↑", "↑↗"), ("↑↑", "↑↑↖")):
            x, y = rel(m, frame, a), rel(m, frame, b)
            tc = two_cut(ell, x, y, board.root if board.root in ell else None) if x in ell and y in ell else None
            if tc is not None and not tc.trivial:
                from .merge import merge

                child = max(tc.children, key=len) - {x, y}
                merge(board, frozenset(child))
                board.stats.bump("cases", "local-bridge:recurse")
                ell = (ell & board.occ) | {c for c in board.occ if c not in occ}
                break
        new, _ = op_inflate(board, m, frame, ell)
        board.stats.bump("cases", "local-bridge:inflate")
        return Crew((new,)), board.log[k0:]
    if row_of(first.dest, frame) == r0:
        M = ascending_path(occ, rel(m, frame, "↑"), frame)
        below = {rel(c, frame, d) for c in M for d in ("↓", "↙")}
        others = {c for c in below if c in occ and c != m and row_of(c, frame) == r0}
        outside = set(occ) - ell
        if M and not others and set(neighbors(first.dest)) & outside:
            before = frozenset(occ)

            def goal(o):
                if before - o != {m} or len(o - before) != 1:
                    return False
                x = next(iter(o - before))
                nbs = set(neighbors(x))
                return bool(nbs & (ell - {m})) and bool(nbs & outside)

            pos = {"m": m, "M": M}
            steps = [("pivot", "m", "cw"), ("shift", "M", "ccw"), ("pivot", "m", "ccw"),
                     ("shift", "M^-1", "cw")]
            board.proc = "local-bridge"
            if not _run_script(board, frame, pos, steps, goal):
                board.undo_to(k0)
                _realize(board, "local-bridge", goal, around=[m], radius=2, max_depth=8)
            else:
                board.stats.bump("cases", "local-bridge:squeeze")
            x = next(iter(set(board.occ) - before))
            return Crew((x,)), board.log[k0:]
    raise PreconditionViolated("local-bridge: requirements not met", board)


def op_incorporate(board: Board, m: Cell, frame: Frame = IDENTITY, ell=None) -> list[Move]:
    """Bring the ascending module ``m`` into the row above, or park it outside ``ell``."""
    occ = frozenset(board.occ)
    ell = set(ell) if ell is not None else set(occ)
    _check_ascender(board, m, frame, "incorporate")
    k0 = len(board.log)
    r0 = row_of(m, frame)
    before = frozenset(occ)
    up_right = rel(m, frame, "↑↗")
    enclosed = any(up_right in pk for pk in pockets(ell))

    if enclosed and up_right not in occ:
        area = _area(ell)

        def goal1(o):
            piece = _piece_after(ell, before, o)
            return up_right in o and _area(piece) == area - 1 and _is_2connected(piece)

        moves = local_search(board, goal1, around=[m, up_right], radius=2, max_depth=8, budget=60000)
        if moves is not None:
            board.proc = "incorporate"
            board.run(moves)
            board.stats.bump("cases", "incorporate:1")
            return board.log[k0:]

    if rel(m, frame, "↗") not in occ and up_right in occ:
        spot = rel(m, frame, "↗")

        def goal2(o):
            return before - o == {m} and o - before == {spot} and _is_2connected(
                _piece_after(ell, before, o))

        M = descending_path(occ, rel(m, frame, "↑"), frame)
        steps = [("pivot", "m", "ccw"), ("pivot", "m", "ccw"), ("shift", "M", "cw"),
                 ("pivot", "m", "cw"), ("pivot", "m", "cw"), ("shift", "M^-1", "ccw")]
        board.proc = "incorporate"
        if _run_script(board, frame, {"m": m, "M": M}, steps, goal2):
            board.stats.bump("cases", "incorporate:2:script")
        else:
            board.undo_to(k0)
            _realize(board, "incorporate", goal2, around=[m], radius=2, max_depth=8)
        board.stats.bump("cases", "incorporate:2")
        return board.log[k0:]

    cw = frame.rot_to_world("cw")
    step = next((mv for mv in board.pivots(m, cw)), None)
    if step is None:
        raise PreconditionViolated("incorporate: m cannot pivot clockwise", board)
    lands_up = row_of(step.dest, frame) == r0 - 1
    if lands_up and board.degree(step.dest, board.occ - {m}) == 1:

        def goal3(o):
            new = o - before
            if not new or any(row_of(x, frame) != r0 - 1 for x in new if x not in ell):
                return False
            piece = _piece_after(ell, before, o)
            return m not in o and _is_2connected(piece)

        mp = next(x for x in neighbors(step.dest) if x in board.occ and x != m)
        steps = [("pivot", "m", "ccw"), ("pivot", "m'", "cw"), ("pivot", "m", "cw")]
        board.proc = "incorporate"
        if rel(m, frame, "↘") in occ or not _run_script(board, frame, {"m": m, "m'": mp}, steps, goal3):
            board.undo_to(k0)
            _realize(board, "incorporate", goal3, around=[m], radius=2, max_depth=8)
        board.stats.bump("cases", "incorporate:3")
        return board.log[k0:]

    board.proc = "incorporate"
    board.move(step)
    board.stats.bump("cases", "incorporate:4")
    if not (set(neighbors(step.dest)) & (ell - {m})):
        board.parked[step.dest] = "incorporate"
    return board.log[k0:]


# --- Bridge ------------------------------------------------------------------


def _flower_free(occ, ell, crew, center: Cell) -> bool:
    cells = Flower(center).cells()
    if cells & set(ell):
        return False
    if (cells & set(occ)) - set(crew):
        return False
    return any(nb in ell for c in cells for nb in neighbors(c))


def flower_walk(occ, ell, crew, start: Cell, direction: str = "cw") -> list[Cell]:
    """Flower centres from ``start`` one unit at a time around ``ell``.

    The walk keeps ``ell`` on one side (right for cw) and stops before a
    flower that would hold a module other than the crew.
    """
    occ, ell, crew = set(occ), set(ell), set(crew)
    out = [start]
    seen = {start}
    heading = None
    c = start
    for _ in range(4 * len(occ) + 24):
        cand = []
        for k in range(6):
            nxt = Cell(*offset(c, [k]))
            if nxt in seen:
                continue
            if distance(nxt, min(ell, key=lambda x: distance(nxt, x))) != 2:
                continue
            cand.append((k, nxt))
        if not cand:
            break
        if heading is None:
            # first step: keep ell on the right (cw) or on the left (ccw)
            sign = 1 if direction == "cw" else -1

            def side(k):
                near = lambda x: min(distance(x, y) for y in ell)  # noqa: E731
                return sign * (near(offset(c, [(k + 1) % 6])) - near(offset(c, [(k - 1) % 6])))

            cand.sort(key=lambda t: (side(t[0]), t[0]))
        else:
            # sharpest turn towards ell first
            if direction == "cw":
                cand.sort(key=lambda t: (heading - t[0] + 2) % 6)
            else:
                cand.sort(key=lambda t: (t[0] - heading + 2) % 6)
        k, nxt = cand[0]
        if not _flower_free(occ, ell, crew, nxt):
            break
        out.append(nxt)
        seen.add(nxt)
        heading = k
        c = nxt
    return out


def _crew_bfs(board: Board, crew: list[Cell], region: set[Cell], goal, budget: int = 20000):
    start = frozenset(board.occ)
    frozen = board.occ - set(crew)
    parent = {start: None}
    q = deque([start])
    while q and len(parent) < budget:
        occ = q.popleft()
        if goal(occ):
            out = []
            while parent[occ] is not None:
                occ, mv = parent[occ]
                out.append(mv)
            return out[::-1]
        for x in sorted(occ - frozen):
            if not is_connected(occ, without=x):
                continue
            for mv in moves_of(occ, x):
                if mv.dest not in region:
                    continue
                nxt = (occ - {x}) | {mv.dest}
                if nxt not in parent:
                    parent[nxt] = (occ, mv)
                    q.append(nxt)
    return None


def op_bridge(board: Board, ell, f: Flower, crew: Sequence[Cell], direction: str = "cw") -> tuple[Crew, list[Move]]:
    """Walk a crew of three in a valid flower around ``ell`` and bridge to the outside."""
    ell = set(ell)
    crew = [Cell(*c) for c in crew]
    if not flower_valid(board.occ, ell, crew, f):
        raise PreconditionViolated("bridge: flower is not valid for the crew", board)
    k0 = len(board.log)
    board.proc = "bridge"
    centers = flower_walk(board.occ, ell, crew, f.center, direction)
    cur = set(crew)
    for a, b in zip(centers, centers[1:]):
        region = Flower(a).cells() | Flower(b).cells()
        target = Flower(b).cells()

        def goal(occ, target=target):
            mine = occ - (board.occ - cur)
            return mine <= target and any(nb in ell for x in mine for nb in neighbors(x))

        moves = _crew_bfs(board, sorted(cur), region, goal)
        if moves is None:
            raise ManeuverUnreachable(f"crew cannot pass from flower {a} to {b}", board)
        for mv in moves:
            board.move(mv)
            cur.discard(mv.mover)
            cur.add(mv.dest)
    last = Flower(centers[-1]).cells()
    outside = set(board.occ) - ell - cur

    def bridged(occ):
        mine = occ - (board.occ - cur)
        touch_in = any(nb in ell for x in mine for nb in neighbors(x))
        touch_out = any(nb in outside for x in mine for nb in neighbors(x))
        return touch_in and touch_out and is_connected(mine)

    region = last | {nb for c in last for nb in neighbors(c) if nb not in board.occ}
    moves = _crew_bfs(board, sorted(cur), region, bridged)
    if moves is None:
        raise ManeuverUnreachable("no bridge at the last flower", board)
    for mv in moves:
        board.move(mv)
        cur.discard(mv.mover)
        cur.add(mv.dest)
    board.stats.bump("cases", "bridge")
    return Crew(tuple(sorted(cur))), board.log[k0:]
