"""Continuous sweep oracle for pivot free-space requirements.

A pivoting hexagon is rotated about a grid vertex and every grid cell whose
interior it touches along the way is recorded. Tables are expressed relative
to the mover at the origin, for each rotation sense and each direction of the
stationary neighbour. The planner never calls this at runtime; the derived
tables are frozen in :mod:`hexpivot.move_model` and compared against a fresh run in
the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from shapely.geometry import Polygon

from .hexgrid import (
    ORIGIN,
    Cell,
    Direction,
    bounding_patch,
    center,
    corner_points,
    distance,
    nearest_cell,
    neighbor,
)

SHRINK = 1e-9
STEP_DEG = 1.0


@dataclass(frozen=True)
class SweepResult:
    kind: str  # "restricted" | "monkey"
    rotation: str  # "cw" | "ccw"
    support: Direction  # direction of the stationary neighbour s
    dest: Cell
    must_be_empty: frozenset[Cell]
    second_support: Cell | None = None  # s' for monkey moves


def _rotate(p, pivot, deg):
    a = math.radians(deg)
    x, y = p[0] - pivot[0], p[1] - pivot[1]
    return (
        pivot[0] + x * math.cos(a) - y * math.sin(a),
        pivot[1] + x * math.sin(a) + y * math.cos(a),
    )


def _shrunk(points):
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return [(cx + (x - cx) * (1 - SHRINK), cy + (y - cy) * (1 - SHRINK)) for x, y in points]


_PATCH = [c for c in bounding_patch([ORIGIN], margin=4) if distance(ORIGIN, c) <= 4]
_CELL_POLYS = {c: Polygon(corner_points(c)) for c in _PATCH}


def _touched(points) -> set[Cell]:
    poly = Polygon(_shrunk(points))
    return {c for c, cp in _CELL_POLYS.items() if poly.intersects(cp)}


def _arc(points, pivot, total_deg, step=STEP_DEG):
    """Poses along a rotation by ``total_deg`` (sign = sense) about ``pivot``."""
    n = int(round(abs(total_deg) / step))
    sign = 1.0 if total_deg > 0 else -1.0
    return [[_rotate(p, pivot, sign * step * i) for p in points] for i in range(n + 1)]


def _close(a, b, tol=1e-6):
    return abs(a[0] - b[0]) < tol and abs(a[1] - b[1]) < tol


def _lattice_vertex(p, tol=1e-6) -> bool:
    c = nearest_cell(*p)
    for nb in [c] + [neighbor(c, d) for d in Direction]:
        if any(_close(p, q, tol) for q in corner_points(nb)):
            return True
    return False


def _cell_at(points) -> Cell | None:
    cx = sum(p[0] for p in points) / 6.0
    cy = sum(p[1] for p in points) / 6.0
    c = nearest_cell(cx, cy)
    return c if _close(center(c), (cx, cy)) else None


def sweep(support: Direction, rotation: str, step: float = STEP_DEG) -> list[SweepResult]:
    """Restricted and monkey sweeps of the origin module pivoting about ``support``."""
    s = int(support)
    # the pivot vertex is the corner of the shared edge on the side we turn towards
    corner = (s - 1) % 6 if rotation == "cw" else s
    pivot = corner_points(ORIGIN)[corner]
    sense = -1.0 if rotation == "cw" else 1.0
    start = corner_points(ORIGIN)

    results = []

    full = _arc(start, pivot, sense * 120.0, step)
    touched = set().union(*(_touched(p) for p in full))
    dest = _cell_at(full[-1])
    assert dest is not None
    results.append(
        SweepResult("restricted", rotation, support, dest, frozenset(touched - {ORIGIN}))
    )

    first = _arc(start, pivot, sense * 60.0, step)
    half = first[-1]
    first_touched = set().union(*(_touched(p) for p in first))
    for w in half:
        if _close(w, pivot) or not _lattice_vertex(w):
            continue
        second = _arc(half, w, sense * 60.0, step)
        land = _cell_at(second[-1])
        if land is None or land == ORIGIN:
            continue
        touched2 = first_touched.union(*(_touched(p) for p in second))
        at_w = {c for c in [nearest_cell(*w)] + [neighbor(nearest_cell(*w), d) for d in Direction]
                if any(_close(w, q) for q in corner_points(c))}
        s2 = sorted(at_w - touched2 - {land})
        assert len(s2) == 1, (support, rotation, at_w, touched2)
        results.append(
            SweepResult(
                "monkey",
                rotation,
                support,
                land,
                frozenset(touched2 - {ORIGIN}),
                s2[0],
            )
        )
    return results


def derive_free_space(step: float = STEP_DEG) -> dict[tuple[str, str, Direction], SweepResult]:
    table = {}
    for d in Direction:
        for rot in ("cw", "ccw"):
            for res in sweep(d, rot, step):
                key = (res.kind, rot, d)
                assert key not in table
                table[key] = res
    return table
