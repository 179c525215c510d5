"""Phase 3: peel modules off one at a time and stack them into a vertical path.

The root is the topmost-rightmost module. Every cell above it is empty and
higher than any other module, so the stack ``P`` growing upward from the root
only touches the rest through the root. Each round rolls a non-cut corner
around the boundary to the cell right above the top of ``P``, where it is
frozen.
"""

from __future__ import annotations

from ..configuration import is_corner
from ..graph_analysis import biconnected
from ..hexgrid import Cell, Direction, neighbor, topmost_rightmost
from ..move_model import Move
from .board import Board, CaseFallthrough
from .search import local_search


def _target(board: Board) -> Cell:
    top = board.path[-1] if board.path else board.root
    return neighbor(top, Direction.N)


def extract(board: Board) -> Cell:
    """Bring one working module to the top of the path; returns where it came from."""
    target = _target(board)
    frozen = set(board.path)
    _, cuts = biconnected(board.occ)
    cand = sorted(
        x for x in board.occ
        if x != board.root and x not in frozen and x not in cuts and is_corner(board.occ, x)
    )
    best: tuple[Cell, list[Move]] | None = None
    for x in cand:
        for rot in ("cw", "ccw"):
            cap = None if best is None else len(best[1])
            tour = board.tour(x, rot, cap)
            for i, mv in enumerate(tour):
                if best is not None and i + 1 >= len(best[1]):
                    break
                if mv.dest == target:
                    best = (x, tour[: i + 1])
                    break
    board.proc = "extract"
    if best is None:
        board.proc = "fallback"
        moves = local_search(board, lambda occ: target in occ, around=[target], radius=4, max_depth=8)
        if moves is None:
            raise CaseFallthrough(f"no module can reach {target}", board)
        board.stats.fallbacks += 1
        board.run(moves)
        board.path.append(target)
        return moves[0].mover
    x, moves = best
    board.run(moves)
    board.path.append(target)
    return x


def phase3(board: Board) -> None:
    """Stack every working module above the root into the canonical path."""
    board.phase = "phase3"
    board.root = topmost_rightmost(board.occ)
    board.path = []
    while len(board.occ) - len(board.path) > 1:
        extract(board)
    board.path.insert(0, board.root)
