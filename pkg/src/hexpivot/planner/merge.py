"""Phase 2: make the contact graph 2-connected.

The block holding the root module is the *core*. A merge takes a leaf block
``ell`` and relocates its modules, one non-cut corner at a time, by rolling
each around the boundary to a cell that touches both ends of a core edge.
Such a module closes a triangle with that edge and joins the core. The core
never loses a module (a block stays 2-connected when outside modules leave),
so every relocation grows it by one and the loop ends after at most ``n``
relocations of ``O(n)`` moves each.
"""

from __future__ import annotations

from ..configuration import is_corner
from ..graph_analysis import Crew, biconnected, block_tree
from ..hexgrid import Cell, DELTAS, topmost_rightmost
from ..move_model import Move
from .board import Board, CaseFallthrough
from .search import local_search


def core_block(occ, root: Cell) -> frozenset[Cell]:
    """The largest block containing ``root``."""
    blocks, _ = biconnected(occ)
    return max((b for b in blocks if root in b), key=lambda b: (len(b), sorted(b)))


def _core_edge_spot(occ, core: frozenset[Cell], spot: Cell, x: Cell) -> bool:
    """``spot`` touches two mutually adjacent core modules (``x`` itself excluded)."""
    q, r = spot
    near = [(q + dq, r + dr) for dq, dr in DELTAS]
    for i in range(6):
        a, b = near[i], near[(i + 1) % 6]
        if a != x and b != x and a in core and b in core:
            return True
    return False


def _best_tour(board: Board, core: frozenset[Cell], candidates) -> tuple[Cell, list[Move]] | None:
    """Shortest roll of a candidate into a core-edge spot, both senses."""
    best = None
    for x in candidates:
        for rot in ("cw", "ccw"):
            cap = None if best is None else len(best[1])
            tour = board.tour(x, rot, cap)
            for i, mv in enumerate(tour):
                if best is not None and i + 1 >= len(best[1]):
                    break
                if mv.dest != x and _core_edge_spot(board.occ, core, mv.dest, x):
                    best = (x, tour[: i + 1])
                    break
    return best


def relocate(board: Board, ell: frozenset[Cell]) -> Cell | None:
    """Move one module of ``ell`` into the core; returns it or None."""
    occ = board.occ
    core = core_block(occ, board.root)
    _, cuts = biconnected(occ)
    cand = sorted(x for x in ell if x not in core and x not in cuts and is_corner(occ, x))
    found = _best_tour(board, core, cand)
    if found is None:
        return None
    x, moves = found
    board.proc = "relocate"
    board.run(moves)
    board.stats.relocations += 1
    return moves[-1].dest


def merge(board: Board, ell: frozenset[Cell]) -> tuple[Crew, list[Move]]:
    """Dismantle the leaf block ``ell`` into the core.

    Returns the relocated modules (in their final cells) and the moves made.
    The block count never goes up across a call and strictly drops by its end.
    """
    k0 = len(board.log)
    board.stats.merges += 1
    blocks_before = len(biconnected(board.occ)[0])
    moved: list[Cell] = []
    # modules of ell other than its attachment, in their current cells
    pending = set(ell)
    guard = 4 * len(ell) + 4
    while guard:
        guard -= 1
        core = core_block(board.occ, board.root)
        pending = {x for x in pending if x in board.occ and x not in core}
        if not pending:
            break
        dest = relocate(board, frozenset(pending))
        if dest is None:
            # some module outside the core that is not in ell is in the way
            outside = board.occ - core - set(board.path)
            dest = relocate(board, frozenset(outside))
        if dest is None:
            size = len(core)
            board.proc = "fallback"
            moves = local_search(
                board, lambda occ: len(core_block(occ, board.root)) > size, around=pending, radius=3
            )
            if moves is None:
                raise CaseFallthrough("merge: no module can reach the core", board)
            board.stats.fallbacks += 1
            board.run(moves)
            continue
        moved.append(dest)
        if len(biconnected(board.occ)[0]) < blocks_before and not (pending & board.occ - core):
            break
    else:
        raise CaseFallthrough("merge did not converge", board)
    return Crew(tuple(moved)), board.log[k0:]


def phase2(board: Board) -> None:
    """Merge leaf blocks until the contact graph is 2-connected."""
    board.phase = "phase2"
    board.root = topmost_rightmost(board.occ)
    guard = len(board.occ) + 1
    while guard:
        guard -= 1
        bt = block_tree(board.occ, board.root)
        if len(bt.blocks) <= 1:
            return
        leaf = bt.leaves()[0]
        ell = bt.blocks[leaf] - {bt.parent_cut[leaf]}
        merge(board, frozenset(ell))
    bt = block_tree(board.occ, board.root)
    if len(bt.blocks) > 1:
        raise CaseFallthrough("phase 2 did not converge", board)
