"""Connected sets of occupied cells and the queries the planner needs on them."""

from __future__ import annotations

from typing import Iterable, Iterator

from .hexgrid import (
    DELTAS,
    Cell,
    Direction,
    center,
    height_key,
    neighbor,
    neighbors,
    rotate_cw,
    reflect,
)


class ConfigurationError(ValueError):
    pass


class EmptyConfiguration(ConfigurationError):
    pass


class Disconnected(ConfigurationError):
    def __init__(self, components: list[frozenset[Cell]]):
        self.components = components
        sizes = ", ".join(str(len(c)) for c in components)
        super().__init__(f"configuration has {len(components)} components (sizes {sizes})")


def components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    """Edge-connected components, largest first, ties by smallest cell."""
    todo = set(cells)
    out = []
    while todo:
        start = todo.pop()
        comp = {start}
        stack = [start]
        while stack:
            q, r = stack.pop()
            for dq, dr in DELTAS:
                nb = (q + dq, r + dr)
                if nb in todo:
                    todo.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        out.append(frozenset(Cell(*c) for c in comp))
    out.sort(key=lambda c: (-len(c), min(c)))
    return out


def is_connected(cells: Iterable[Cell], without: Cell | None = None) -> bool:
    """True if ``cells`` (optionally minus one cell) is nonempty and connected."""
    occ = set(cells)
    if without is not None:
        occ.discard(without)
    if not occ:
        return False
    start = next(iter(occ))
    seen = {start}
    stack = [start]
    while stack:
        q, r = stack.pop()
        for dq, dr in DELTAS:
            nb = (q + dq, r + dr)
            if nb in occ and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(occ)


class Configuration:
    """An immutable, nonempty, edge-connected set of occupied cells."""

    __slots__ = ("cells", "_sorted", "_hash")

    def __init__(self, cells: Iterable[Cell], *, check: bool = True):
        cs = frozenset(Cell(*c) for c in cells)
        if check:
            if not cs:
                raise EmptyConfiguration("configuration must contain at least one module")
            comps = components(cs)
            if len(comps) > 1:
                raise Disconnected(comps)
        self.cells = cs
        self._sorted: tuple[Cell, ...] | None = None
        self._hash: int | None = None

    # value semantics
    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.sorted())

    def __contains__(self, c) -> bool:
        return c in self.cells

    def __eq__(self, other) -> bool:
        if isinstance(other, Configuration):
            return self.cells == other.cells
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.cells)
        return self._hash

    def __repr__(self) -> str:
        body = " ".join(f"{c.q},{c.r}" for c in self.sorted())
        return f"Configuration[{body}]"

    def sorted(self) -> tuple[Cell, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.cells))
        return self._sorted

    def key(self) -> tuple[Cell, ...]:
        """Hashable canonical key of the normalized shape."""
        return normalize(self).sorted()

    def occupied(self, c: Cell) -> bool:
        return c in self.cells

    def degree(self, c: Cell) -> int:
        return sum(1 for nb in neighbors(c) if nb in self.cells)

    def contact_edges(self) -> list[tuple[Cell, Cell]]:
        edges = []
        for c in self.sorted():
            for d in (Direction.NE, Direction.SE, Direction.S):
                nb = neighbor(c, d)
                if nb in self.cells:
                    edges.append((c, nb))
        return edges

    def adjacency(self) -> dict[Cell, list[Cell]]:
        return {c: [nb for nb in neighbors(c) if nb in self.cells] for c in self.sorted()}


def from_cells(cells: Iterable[Cell]) -> Configuration:
    return Configuration(cells)


def translate(c: Configuration, v: Cell) -> Configuration:
    return Configuration((Cell(x.q + v[0], x.r + v[1]) for x in c.cells), check=False)


def normalize(c: Configuration) -> Configuration:
    """Translate so the lexicographically smallest cell is the origin."""
    lo = min(c.cells)
    if lo == (0, 0):
        return c
    return translate(c, Cell(-lo[0], -lo[1]))


def rotate(c: Configuration, k: int = 1) -> Configuration:
    return Configuration((rotate_cw(x, k) for x in c.cells), check=False)


def mirror(c: Configuration) -> Configuration:
    return Configuration((reflect(x) for x in c.cells), check=False)


# --- faces -------------------------------------------------------------------


def _box(cells: Iterable[Cell], margin: int = 1):
    cells = list(cells)
    qs = [c[0] for c in cells]
    rs = [c[1] for c in cells]
    return min(qs) - margin, max(qs) + margin, min(rs) - margin, max(rs) + margin


def outer_empty(cells: Iterable[Cell]) -> set[Cell]:
    """Empty cells of the bounding box (plus margin) reachable from outside."""
    occ = set(cells)
    q0, q1, r0, r1 = _box(occ)
    start = Cell(q0, r0)
    seen = {start}
    stack = [start]
    while stack:
        q, r = stack.pop()
        for dq, dr in DELTAS:
            nq, nr = q + dq, r + dr
            if q0 <= nq <= q1 and r0 <= nr <= r1:
                nb = Cell(nq, nr)
                if nb not in occ and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return seen


def pockets(c: Configuration | Iterable[Cell]) -> list[frozenset[Cell]]:
    """Enclosed regions of empty cells, each as an explicit cell set."""
    occ = c.cells if isinstance(c, Configuration) else set(c)
    outside = outer_empty(occ)
    q0, q1, r0, r1 = _box(occ)
    inner = {
        Cell(q, r)
        for q in range(q0, q1 + 1)
        for r in range(r0, r1 + 1)
        if (q, r) not in occ and (q, r) not in outside
    }
    return components(inner)


def empty_runs(occ, c: Cell) -> list[tuple[int, int]]:
    """Cyclic runs of empty neighbours of ``c`` as (start direction, length)."""
    full = [neighbor(c, d) in occ for d in Direction]
    if not any(full):
        return [(0, 6)]
    runs = []
    # start right after an occupied neighbour so runs don't wrap
    s = next(i for i in range(6) if full[i])
    i = 0
    while i < 6:
        j = (s + 1 + i) % 6
        if not full[j]:
            k = 0
            while k < 6 and not full[(j + k) % 6]:
                k += 1
            runs.append((j, k))
            i += k
        else:
            i += 1
    return runs


def is_corner(occ, c: Cell) -> bool:
    """Three consecutive empty neighbours, read cyclically."""
    return any(length >= 3 for _, length in empty_runs(occ, c))


def corners(c: Configuration) -> set[Cell]:
    return {x for x in c.cells if is_corner(c.cells, x)}


def boundary_cells(c: Configuration) -> set[Cell]:
    """Modules adjacent to the outer face."""
    outside = outer_empty(c.cells)
    return {x for x in c.cells if any(nb in outside for nb in neighbors(x))}


def is_on_boundary(c: Configuration, m: Cell) -> bool:
    return m in boundary_cells(c)


def sw_row(cells: Iterable[Cell]) -> int:
    """Row key of the lowest row (the SW supporting line of the hull)."""
    return max(x[1] for x in cells)


def extreme_sw_path(cells: Iterable[Cell]) -> list[Cell]:
    """The SW extreme path, ordered ascending (bottom-right module first).

    The SW side of the hull lies on the lowest row. Its modules split into
    maximal runs along the row; the run holding the lexicographically smallest
    cell is returned.
    """
    cells = set(cells)
    row = sw_row(cells)
    on_row = sorted((x for x in cells if x[1] == row), key=lambda x: x[0])
    runs: list[list[Cell]] = []
    for x in on_row:
        if runs and x[0] == runs[-1][-1][0] + 1:
            runs[-1].append(Cell(*x))
        else:
            runs.append([Cell(*x)])
    best = min(runs, key=lambda run: min(run))
    # ascending means stepping NW, i.e. decreasing q
    return list(reversed(best))


def canonical_path(n: int, anchor: Cell = Cell(0, 0)) -> Configuration:
    """Vertical line of ``n`` modules hanging south from ``anchor``."""
    if n < 1:
        raise ValueError("canonical path needs n >= 1")
    return Configuration((Cell(anchor[0], anchor[1] + i) for i in range(n)), check=False)


def is_canonical_path(cells: Iterable[Cell]) -> bool:
    cells = list(cells)
    qs = {c[0] for c in cells}
    if len(qs) != 1:
        return False
    rs = sorted(c[1] for c in cells)
    return rs == list(range(rs[0], rs[0] + len(rs)))


def centers(c: Configuration) -> list[tuple[float, float]]:
    return [center(x) for x in c.sorted()]


def lowest(cells: Iterable[Cell]) -> Cell:
    return min(cells, key=lambda c: (height_key(c), c[0]))
