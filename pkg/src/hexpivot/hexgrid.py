"""Axial coordinates for a flat-top hexagonal grid.

Cells are ``(q, r)`` pairs. With flat-top hexagons the six edge neighbours lie
in the directions N, NE, SE, S, SW, NW, listed here in clockwise order. The
single arbitrary choice of the package is the delta table below::

    N  = ( 0, -1)    NE = ( 1, -1)    SE = ( 1,  0)
    S  = ( 0,  1)    SW = (-1,  1)    NW = (-1,  0)

The Euclidean embedding (circumradius 1, y pointing up) is::

    x = 1.5 * q
    y = -sqrt(3) * (r + q / 2)

so the centre of a neighbour lies at distance sqrt(3) in direction
``90 - 60 * index`` degrees. Rows are the NW-SE lines of constant ``r``;
ascending along a row means stepping NW, descending means stepping SE.
"""

from __future__ import annotations

import math
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, Sequence

SQRT3 = math.sqrt(3.0)


class Cell(NamedTuple):
    q: int
    r: int

    def __add__(self, other):  # type: ignore[override]
        return Cell(self.q + other[0], self.r + other[1])

    def __sub__(self, other):
        return Cell(self.q - other[0], self.r - other[1])

    def __repr__(self) -> str:
        return f"({self.q},{self.r})"


class Direction(IntEnum):
    """Neighbour directions, indexed clockwise from north."""

    N = 0
    NE = 1
    SE = 2
    S = 3
    SW = 4
    NW = 5

    @property
    def delta(self) -> Cell:
        return DELTAS[self]

    @property
    def angle(self) -> float:
        """Direction of the neighbour centre in degrees (counterclockwise from +x)."""
        return 90.0 - 60.0 * int(self)

    def opposite(self) -> "Direction":
        return Direction((self + 3) % 6)

    def cw(self, k: int = 1) -> "Direction":
        return Direction((self + k) % 6)

    def ccw(self, k: int = 1) -> "Direction":
        return Direction((self - k) % 6)


DELTAS: tuple[Cell, ...] = (
    Cell(0, -1),
    Cell(1, -1),
    Cell(1, 0),
    Cell(0, 1),
    Cell(-1, 1),
    Cell(-1, 0),
)
DIRECTIONS: tuple[Direction, ...] = tuple(Direction)
_DELTA_TO_DIR = {d: Direction(i) for i, d in enumerate(DELTAS)}

# Arrow glyphs used in position descriptions like ``m^{up, up-right}``.
ARROWS = {
    "↑": Direction.N,
    "↗": Direction.NE,
    "↘": Direction.SE,
    "↓": Direction.S,
    "↙": Direction.SW,
    "↖": Direction.NW,
}

ORIGIN = Cell(0, 0)


def neighbor(c: Cell, d: Direction) -> Cell:
    dq, dr = DELTAS[d]
    return Cell(c[0] + dq, c[1] + dr)


def neighbors(c: Cell) -> list[Cell]:
    q, r = c
    return [Cell(q + dq, r + dr) for dq, dr in DELTAS]


def direction_between(a: Cell, b: Cell) -> Direction | None:
    """Direction from ``a`` to ``b`` if they are edge-adjacent, else None."""
    return _DELTA_TO_DIR.get(Cell(b[0] - a[0], b[1] - a[1]))


def are_adjacent(a: Cell, b: Cell) -> bool:
    return Cell(b[0] - a[0], b[1] - a[1]) in _DELTA_TO_DIR


def offset(c: Cell, arrows: Iterable[Direction] | str) -> Cell:
    """Fold ``neighbor`` over a sequence of directions (or an arrow string)."""
    for a in arrows:
        d = ARROWS[a] if isinstance(a, str) else a
        c = neighbor(c, d)
    return c


def distance(a: Cell, b: Cell) -> int:
    dq = b[0] - a[0]
    dr = b[1] - a[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


# --- rows --------------------------------------------------------------------


def ascend(c: Cell) -> Cell:
    return neighbor(c, Direction.NW)


def descend(c: Cell) -> Cell:
    return neighbor(c, Direction.SE)


def row_key(c: Cell) -> int:
    """Constant along NW-SE lines. Larger keys are lower rows."""
    return c[1]


# --- vertices ----------------------------------------------------------------


class Vertex(NamedTuple):
    """A grid vertex, stored as the sorted triple of cells meeting there."""

    a: Cell
    b: Cell
    c: Cell

    def cells(self) -> tuple[Cell, Cell, Cell]:
        return (self.a, self.b, self.c)

    def __repr__(self) -> str:
        return f"V{self.a!r}{self.b!r}{self.c!r}"


def vertex(c: Cell, i: int) -> Vertex:
    """Corner ``i`` of cell ``c``, counted clockwise from the N/NE corner.

    Corner ``i`` is shared with the neighbours in directions ``i`` and ``i+1``.
    """
    a = Cell(*c)
    b = neighbor(a, Direction(i % 6))
    d = neighbor(a, Direction((i + 1) % 6))
    return Vertex(*sorted((a, b, d)))


def vertices_of(c: Cell) -> list[Vertex]:
    return [vertex(c, i) for i in range(6)]


def cells_at(v: Vertex) -> tuple[Cell, Cell, Cell]:
    return v.cells()


def shared_vertices(a: Cell, b: Cell) -> list[Vertex]:
    return sorted(set(vertices_of(a)) & set(vertices_of(b)))


def vertex_point(v: Vertex) -> tuple[float, float]:
    xs, ys = zip(*(center(c) for c in v.cells()))
    return (sum(xs) / 3.0, sum(ys) / 3.0)


# --- embedding ---------------------------------------------------------------


def center(c: Cell) -> tuple[float, float]:
    q, r = c
    return (1.5 * q, -SQRT3 * (r + q / 2.0))


def corner_points(c: Cell, scale: float = 1.0) -> list[tuple[float, float]]:
    """Corner coordinates of a cell, in the same order as ``vertices_of``."""
    x, y = center(c)
    pts = []
    for i in range(6):
        ang = math.radians(60.0 - 60.0 * i)
        pts.append((x + scale * math.cos(ang), y + scale * math.sin(ang)))
    return pts


def nearest_cell(x: float, y: float) -> Cell:
    """Cell whose centre is closest to the point (cube rounding)."""
    qf = x / 1.5
    rf = -y / SQRT3 - qf / 2.0
    sf = -qf - rf
    q, r, s = round(qf), round(rf), round(sf)
    dq, dr, ds = abs(q - qf), abs(r - rf), abs(s - sf)
    if dq > dr and dq > ds:
        q = -r - s
    elif dr > ds:
        r = -q - s
    return Cell(int(q), int(r))


def topmost_rightmost(cells: Iterable[Cell]) -> Cell:
    """Maximum by embedded height, then by x."""

    def key(c: Cell):
        # 2*y/sqrt(3) = -(2r + q) is an exact integer proxy for height
        return (-(2 * c[1] + c[0]), c[0])

    return max(cells, key=key)


def height_key(c: Cell) -> int:
    """Integer proportional to the embedded y coordinate."""
    return -(2 * c[1] + c[0])


# --- lattice symmetries ------------------------------------------------------


def rotate_cw(c: Cell, k: int = 1) -> Cell:
    """Rotate about the origin cell by ``k`` clockwise sixth-turns."""
    q, r = c
    for _ in range(k % 6):
        q, r = -r, q + r
    return Cell(q, r)


def reflect(c: Cell) -> Cell:
    """Mirror across the vertical axis through the origin cell (x -> -x)."""
    q, r = c
    return Cell(-q, q + r)


class Frame(NamedTuple):
    """A lattice symmetry fixing the origin: optional mirror, then rotation.

    Planner sub-procedures describe positions relative to a frame of reference;
    frames map world cells into that frame and back. A mirrored frame swaps
    clockwise and counterclockwise.
    """

    rotation: int = 0
    mirrored: bool = False

    def to_frame(self, c: Cell) -> Cell:
        if self.mirrored:
            c = reflect(c)
        return rotate_cw(c, self.rotation)

    def to_world(self, c: Cell) -> Cell:
        c = rotate_cw(c, -self.rotation)
        if self.mirrored:
            c = reflect(c)
        return c

    def dir_to_frame(self, d: Direction) -> Direction:
        i = (-int(d)) % 6 if self.mirrored else int(d)
        return Direction((i + self.rotation) % 6)

    def rot_to_world(self, rot: str) -> str:
        if not self.mirrored:
            return rot
        return "ccw" if rot == "cw" else "cw"


ALL_FRAMES: tuple[Frame, ...] = tuple(
    Frame(k, m) for m in (False, True) for k in range(6)
)
IDENTITY = Frame()


def bounding_patch(cells: Sequence[Cell], margin: int = 1) -> Iterator[Cell]:
    qs = [c[0] for c in cells]
    rs = [c[1] for c in cells]
    for q in range(min(qs) - margin, max(qs) + margin + 1):
        for r in range(min(rs) - margin, max(rs) + margin + 1):
            yield Cell(q, r)
