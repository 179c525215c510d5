"""Connectivity structure of the contact graph: blocks, cut vertices, 2-cuts,
2-free modules, crews and flowers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .configuration import Configuration, components, is_connected, is_corner
from .hexgrid import DELTAS, Cell, are_adjacent, neighbors, topmost_rightmost
from .move_model import HexMonkey, ModelId, moves_of


class NotFound(RuntimeError):
    pass


def _occ(c) -> frozenset[Cell]:
    return c.cells if isinstance(c, Configuration) else frozenset(Cell(*x) for x in c)


def _adj(occ, x):
    q, r = x
    for dq, dr in DELTAS:
        nb = (q + dq, r + dr)
        if nb in occ:
            yield Cell(*nb)


# --- blocks ------------------------------------------------------------------


def biconnected(occ) -> tuple[list[frozenset[Cell]], set[Cell]]:
    """Blocks and cut vertices of the contact graph (iterative Tarjan).

    A single isolated module forms a block of its own.
    """
    occ = frozenset(occ)
    if not occ:
        return [], set()
    disc: dict[Cell, int] = {}
    low: dict[Cell, int] = {}
    blocks: list[frozenset[Cell]] = []
    cuts: set[Cell] = set()
    t = 0
    for start in sorted(occ):
        if start in disc:
            continue
        disc[start] = low[start] = t
        t += 1
        edge_stack: list[tuple[Cell, Cell]] = []
        stack = [(start, None, iter(sorted(_adj(occ, start))))]
        root_children = 0
        if not any(True for _ in _adj(occ, start)):
            blocks.append(frozenset([start]))
            continue
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(_adj(occ, w)))))
                    if v == start:
                        root_children += 1
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != start:
                    cuts.add(parent)
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(comp))
        if root_children > 1:
            cuts.add(start)
    blocks.sort(key=lambda b: (min(b), len(b)))
    return blocks, cuts


@dataclass
class BlockTree:
    """Blocks of the contact graph rooted at the block holding the root module.

    ``parent_cut[i]`` is the cut vertex joining block ``i`` to its parent block
    (None for the root block); ``depth[i]`` counts block-to-block steps.
    """

    blocks: list[frozenset[Cell]]
    cut_vertices: set[Cell]
    root: Cell
    root_block: int
    parent_cut: list[Cell | None] = field(default_factory=list)
    parent_block: list[int | None] = field(default_factory=list)
    depth: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def node_count(self) -> int:
        return len(self.blocks) + len(self.cut_vertices)

    def blocks_of(self, v: Cell) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def children(self, i: int) -> list[int]:
        return [j for j, p in enumerate(self.parent_block) if p == i]

    def leaves(self) -> list[int]:
        """Leaf blocks other than the root block, deepest first, ties by smallest module."""
        out = [i for i in range(len(self.blocks)) if i != self.root_block and not self.children(i)]
        out.sort(key=lambda i: (-self.depth[i], min(self.blocks[i])))
        return out

    def is_trivial(self, i: int) -> bool:
        return len(self.blocks[i]) == 2

    def edges(self) -> list[tuple[int, Cell]]:
        return [(i, v) for i, b in enumerate(self.blocks) for v in sorted(b & self.cut_vertices)]


def block_tree(c, root: Cell | None = None) -> BlockTree:
    occ = _occ(c)
    blocks, cuts = biconnected(occ)
    if root is None:
        root = topmost_rightmost(occ)
    root_block = min(
        (i for i, b in enumerate(blocks) if root in b), key=lambda i: (-len(blocks[i]), i)
    )
    k = len(blocks)
    parent_cut: list[Cell | None] = [None] * k
    parent_block: list[int | None] = [None] * k
    depth = [0] * k
    seen = {root_block}
    frontier = [root_block]
    while frontier:
        nxt = []
        for i in frontier:
            for v in sorted(blocks[i] & cuts):
                for j, b in enumerate(blocks):
                    if j not in seen and v in b:
                        seen.add(j)
                        parent_cut[j] = v
                        parent_block[j] = i
                        depth[j] = depth[i] + 1
                        nxt.append(j)
        frontier = nxt
    return BlockTree(blocks, cuts, Cell(*root), root_block, parent_cut, parent_block, depth)


def cut_vertices(c) -> set[Cell]:
    return biconnected(_occ(c))[1]


def is_cut_vertex(c, m: Cell) -> bool:
    occ = _occ(c)
    return len(occ) > 1 and not is_connected(occ, without=m)


def is_biconnected(c) -> bool:
    """One block. K1 and K2 count as 2-connected."""
    blocks, _ = biconnected(_occ(c))
    return len(blocks) <= 1


# --- 2-cuts ------------------------------------------------------------------


def _pieces(occ, removed: Iterable[Cell]) -> list[frozenset[Cell]]:
    rest = set(occ) - set(removed)
    return components(rest)


@dataclass(frozen=True)
class TwoCut:
    v1: Cell
    v2: Cell
    adjacent: bool
    children: tuple[frozenset[Cell], ...]
    parent: frozenset[Cell] | None = None

    @property
    def trivial(self) -> bool:
        return any(len(ch) in (3, 4) for ch in self.children)

    @property
    def pair(self) -> frozenset[Cell]:
        return frozenset((self.v1, self.v2))


def two_cut(block, v1: Cell, v2: Cell, root: Cell | None = None) -> TwoCut | None:
    """The 2-cut {v1, v2} of ``block`` with its 2-split components, or None.

    The component holding ``root`` (when given and not in the pair) is the
    parent; the others are children. Without a root every component is
    reported as a child.
    """
    occ = frozenset(block)
    if v1 not in occ or v2 not in occ or v1 == v2:
        return None
    base = len(components(occ))
    pieces = _pieces(occ, (v1, v2))
    if len(pieces) <= base:
        return None
    splits = [p | {v1, v2} for p in pieces]
    parent = None
    if root is not None and root not in (v1, v2):
        for s in splits:
            if root in s:
                parent = s
    children = tuple(sorted((s for s in splits if s is not parent), key=lambda s: (len(s), min(s))))
    a, b = sorted((Cell(*v1), Cell(*v2)))
    return TwoCut(a, b, are_adjacent(v1, v2), children, parent)


def two_cuts_of(block, root: Cell | None = None) -> list[TwoCut]:
    """Every 2-cut of a block (brute force, for tests and small blocks)."""
    cells = sorted(block)
    out = []
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            tc = two_cut(block, a, b, root)
            if tc is not None:
                out.append(tc)
    return out


def child_2split(cut: TwoCut) -> tuple[frozenset[Cell], ...]:
    return cut.children


def block_containing(c, m: Cell, bt: BlockTree | None = None) -> frozenset[Cell]:
    """The largest block holding ``m`` (a cut vertex lies in several)."""
    bt = bt or block_tree(c)
    return max((bt.blocks[i] for i in bt.blocks_of(m)), key=lambda b: (len(b), sorted(b)))


def adjacent_two_cuts_at(c, m: Cell, block=None, root: Cell | None = None) -> list[TwoCut]:
    """Adjacent 2-cuts {m, x} of m's block, children oriented relative to the root."""
    occ = _occ(c)
    if block is None:
        block = block_containing(occ, m)
    if root is None:
        root = topmost_rightmost(occ)
    out = []
    for x in sorted(_adj(block, m)):
        tc = two_cut(block, m, x, root if root in block else None)
        if tc is None:
            continue
        if not tc.trivial and len(tc.children) + (tc.parent is not None) > 2:
            raise AssertionError(f"adjacent nontrivial 2-cut {tc.pair} with more than two sides")
        out.append(tc)
    return out


def is_movable(c, m: Cell, model: ModelId = HexMonkey) -> bool:
    occ = _occ(c)
    if m not in occ or len(occ) < 2 or not is_connected(occ, without=m):
        return False
    return bool(moves_of(occ, m, model))


def is_2free(c, block, m: Cell, model: ModelId = HexMonkey) -> bool:
    """Movable and in no 2-cut of its block.

    Blocks with at most two modules are treated as 2-connected after any single
    deletion, so their modules are 2-free whenever they are movable.
    """
    if not is_movable(c, m, model):
        return False
    block = frozenset(block)
    if len(block) <= 3:
        return True
    rest = block - {m}
    if not is_connected(rest):
        return False
    _, cuts = biconnected(rest)
    return not cuts


# --- corners -----------------------------------------------------------------


def find_non_cut_corner(c) -> Cell:
    """A corner that is not a cut vertex, searched from a leaf block first."""
    occ = _occ(c)
    if len(occ) == 1:
        return next(iter(occ))
    bt = block_tree(occ)
    order = bt.leaves() + [bt.root_block]
    tried = set()
    for i in order:
        b = bt.blocks[i]
        for x in _extremes(b, bt.parent_cut[i]):
            tried.add(x)
            if x not in bt.cut_vertices and is_corner(occ, x):
                return x
    for x in sorted(occ):
        if x not in tried and x not in bt.cut_vertices and is_corner(occ, x):
            return x
    raise NotFound("no corner that is not a cut vertex")


def _extremes(block, avoid: Cell | None) -> list[Cell]:
    """Modules of ``block`` maximizing each of the six lattice projections."""
    from .hexgrid import center

    out = []
    for k in range(6):
        import math

        ang = math.radians(90.0 - 60.0 * k)
        ux, uy = math.cos(ang), math.sin(ang)
        best = max(block, key=lambda x: (round(center(x)[0] * ux + center(x)[1] * uy, 9), x))
        if best != avoid and best not in out:
            out.append(best)
    return out


# --- crews and flowers -------------------------------------------------------


@dataclass(frozen=True)
class Flower:
    center: Cell

    def cells(self) -> frozenset[Cell]:
        return frozenset([self.center, *neighbors(self.center)])

    def __contains__(self, x) -> bool:
        return Cell(*x) in self.cells()

    def is_adjacent_to(self, x: Cell) -> bool:
        cells = self.cells()
        return x not in cells and any(nb in cells for nb in neighbors(x))


@dataclass(frozen=True)
class Crew:
    modules: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)


def crew_valid(c, block, crew: Crew | Sequence[Cell], model: ModelId = HexMonkey) -> bool:
    """Connected, and each member is 2-free once its predecessors are gone."""
    members = [Cell(*x) for x in crew]
    if not members or not is_connected(members):
        return False
    occ = set(_occ(c))
    blk = set(block)
    for m in members:
        if m not in blk or not is_2free(occ, blk, m, model):
            return False
        occ.discard(m)
        blk.discard(m)
    return True


def flower_valid(c, ell: Iterable[Cell], crew: Crew | Sequence[Cell], f: Flower) -> bool:
    """The flower holds exactly the crew and touches a module of ``ell``."""
    occ = _occ(c)
    members = frozenset(Cell(*x) for x in crew)
    inside = f.cells() & occ
    if inside != members:
        return False
    return any(f.is_adjacent_to(x) for x in ell if x not in members)
