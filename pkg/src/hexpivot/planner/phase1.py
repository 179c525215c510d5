"""Phase 1: remove every degree-1 module from the contact graph.

A degree-1 module ``m`` first rolls clockwise along the boundary and stops at
the first spot that lowers the number of degree-1 modules. If there is none it
parks next to the neighbour ``p`` farthest from the root, the frame is turned
so that ``p`` sits directly above ``m``, and a short coordinated pattern of
pivots from the case ladder below finishes the job. Cells around ``m`` are
named as follows (frame coordinates, ``m`` at the origin)::

    alpha = m^{up up}         beta  = m^{up ur}     beta'  = m^{up ul}
    gamma = m^{ur ur}         gamma' = m^{ul ul}
    delta = m^{dr ur}         delta' = m^{dl ul}
    eps   = m^{dr dr}         zeta  = m^{dr dn}
"""

from __future__ import annotations

from collections import deque

from ..hexgrid import DELTAS, ORIGIN, Cell, Direction, Frame, neighbors, offset
from .board import Board, CaseFallthrough, apply_frame, frames_with
from .search import local_search

NAMED = {
    "alpha": "↑↑",
    "beta": "↑↗",
    "beta'": "↑↖",
    "gamma": "↗↗",
    "gamma'": "↖↖",
    "delta": "↘↗",
    "delta'": "↙↖",
    "eps": "↘↘",
    "zeta": "↘↓",
}


def degree_one(occ) -> list[Cell]:
    out = []
    for c in occ:
        k = 0
        for dq, dr in DELTAS:
            if (c[0] + dq, c[1] + dr) in occ:
                k += 1
                if k > 1:
                    break
        if k == 1:
            out.append(c)
    return sorted(out)


def leaf_count(occ) -> int:
    return len(degree_one(occ))


def _distances(occ, src: Cell) -> dict[Cell, int]:
    dist = {src: 0}
    dq = deque([src])
    while dq:
        x = dq.popleft()
        for nb in neighbors(x):
            if nb in occ and nb not in dist:
                dist[nb] = dist[x] + 1
                dq.append(nb)
    return dist


def named(m: Cell, frame: Frame, name: str) -> Cell:
    return apply_frame(m, frame, offset(ORIGIN, NAMED[name]))


def _execute(board: Board, frame: Frame, pos: dict[str, Cell], pattern, goal) -> bool:
    """Depth-first over the choices of each ``(name, rotation)`` step."""
    if not pattern:
        return goal(board.occ)
    name, rot = pattern[0]
    world_rot = frame.rot_to_world(rot)
    k = len(board.log)
    for mv in board.pivots(pos[name], world_rot):
        board.move(mv)
        nxt = dict(pos)
        nxt[name] = mv.dest
        if _execute(board, frame, nxt, pattern[1:], goal):
            return True
        board.undo_to(k)
    return False


def _ladder(board: Board, m: Cell, p: Cell) -> list[tuple[str, Frame, list]]:
    """Candidate (case, frame, pattern) triples in the order of the case analysis."""
    occ = board.occ
    frames = frames_with(m, p, Direction.N)
    full = lambda f, name: named(m, f, name) in occ  # noqa: E731
    plain = [f for f in frames if not f.mirrored][0]
    mirror = [f for f in frames if f.mirrored][0]
    out: list[tuple[str, Frame, list]] = []
    if not (full(plain, "beta") and full(plain, "beta'")):
        f = plain if not full(plain, "beta'") else mirror
        if full(f, "delta"):
            out.append(("a", f, [("m", "ccw"), ("p", "cw"), ("m", "cw"), ("p", "ccw")]))
        else:
            out.append(("b", f, [("m", "ccw")]))
            out.append(("b", f, [("m", "ccw"), ("m", "ccw")]))
            out.append(("b", f, [("m", "ccw"), ("m", "ccw"), ("p", "cw"), ("m", "cw"), ("p", "ccw")]))
        return out
    if not (full(plain, "delta") and full(plain, "delta'")):
        f = plain if not full(plain, "delta") else mirror
        out.append(("c", f, [("m", "ccw")]))
        return out
    if full(plain, "alpha") or (full(plain, "gamma") and full(plain, "gamma'")):
        for f in (plain, mirror):
            out.append(("d", f, [("m", "ccw"), ("p", "cw"), ("m", "cw")]))
        return out
    for f in (plain, mirror):
        q = named(m, f, "delta")
        q_deg = board.degree(q)
        if full(f, "eps"):
            out.append(("e", f, [("m", "ccw")]))
        elif q_deg == 1:
            out.append(("f", f, [("m", "ccw")]))
        elif full(f, "zeta"):
            out.append(("g", f, [("m", "ccw")]))
        else:
            out.append(("h", f, [("q", "ccw"), ("m", "ccw"), ("m", "ccw")]))
    return out


def fix_leaf(board: Board, m: Cell) -> bool:
    """Lower the number of degree-1 modules, starting from leaf ``m``."""
    before = leaf_count(board.occ)
    goal = lambda occ: leaf_count(occ) < before  # noqa: E731
    k0 = len(board.log)

    # roll m clockwise; stop at the first spot that helps
    tour = board.tour(m, "cw")
    probe = set(board.occ)
    probe.discard(m)
    for i, mv in enumerate(tour):
        probe.add(mv.dest)
        if goal(probe):
            board.proc = "roll"
            board.run(tour[: i + 1])
            board.stats.bump("cases", "roll")
            return True
        probe.discard(mv.dest)

    # park m next to the neighbour farthest from the root, then run the ladder;
    # parking may strand m's old neighbour, so further spots are tried in turn
    rest = board.occ - {m}
    root = max(rest, key=lambda c: (-(2 * c[1] + c[0]), c[0]))
    dist = _distances(rest, root)
    spots = []
    for i, spot in [(-1, m)] + [(i, mv.dest) for i, mv in enumerate(tour)]:
        nbs = [nb for nb in neighbors(spot) if nb in rest]
        if len(nbs) == 1:
            spots.append((-dist.get(nbs[0], -1), i, spot, nbs[0]))
    spots.sort(key=lambda t: (t[0], t[1]))
    for _, i, spot, p in spots:
        board.proc = "park"
        board.run(tour[: i + 1])
        board.proc = "ladder"
        k1 = len(board.log)
        for label, frame, pattern in _ladder(board, spot, p):
            pos = {"m": spot, "p": p, "q": named(spot, frame, "delta")}
            if _execute(board, frame, pos, pattern, goal):
                board.stats.bump("cases", label)
                return True
            board.undo_to(k1)
        board.undo_to(k0)
    return False


def phase1(board: Board) -> None:
    """Remove all degree-1 modules of G (no-op for two modules or fewer)."""
    board.phase = "phase1"
    if len(board.working) <= 2:
        return
    guard = 4 * len(board.occ) + 4
    while guard:
        guard -= 1
        leaves = degree_one(board.occ)
        if not leaves:
            return
        if any(fix_leaf(board, m) for m in leaves):
            continue
        before = len(leaves)
        board.proc = "fallback"
        moves = local_search(board, lambda occ: leaf_count(occ) < before, around=leaves, radius=3)
        if moves is None:
            raise CaseFallthrough(f"no case reduces the {before} degree-1 modules", board)
        board.stats.fallbacks += 1
        board.run(moves)
    raise CaseFallthrough("phase 1 did not converge", board)
