"""Bounded breadth-first search over short move sequences.

Used as a safety net when a structured step does not apply. Only modules near
the trouble spot may move and the search stops after a fixed node budget.
"""

from __future__ import annotations

from collections import deque

from ..configuration import is_connected
from ..hexgrid import Cell, distance
from ..move_model import Move, moves_of


def local_search(board, goal, around, radius: int = 3, max_depth: int = 6,
                 budget: int = 20000) -> list[Move] | None:
    frozen = set(board.path)
    around = [Cell(*c) for c in around]

    def near(c):
        return any(distance(c, a) <= radius for a in around)

    start = frozenset(board.occ)
    if goal(start):
        return []
    parent: dict[frozenset, tuple[frozenset, Move] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue and len(parent) < budget:
        occ, depth = queue.popleft()
        if depth >= max_depth:
            continue
        for m in sorted(occ):
            if m in frozen or not near(m) or not is_connected(occ, without=m):
                continue
            for mv in moves_of(occ, m):
                nxt = (occ - {m}) | {mv.dest}
                if nxt in parent:
                    continue
                parent[nxt] = (occ, mv)
                if goal(nxt):
                    out = []
                    cur = nxt
                    while parent[cur] is not None:
                        prev, step = parent[cur]
                        out.append(step)
                        cur = prev
                    return out[::-1]
                queue.append((nxt, depth + 1))
    return None
