"""Exhaustive enumeration of small configurations and their reconfiguration graph.

Shapes are identified up to translation only. ``enumerate_shapes`` uses
Redelmeier's growth, which produces every fixed polyhex exactly once without
deduplication; ``slow_enumerate`` is an independent grow-and-dedupe used to
cross-check it.
"""

from __future__ import annotations

import os
import pickle
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .configuration import Configuration, normalize
from .hexgrid import DELTAS, Cell
from .move_model import HexMonkey, ModelId, Move, MovePlan, legal_moves, verify_plan

DEFAULT_CAP = 8
CACHE_VERSION = 1
CACHE_ENV = "HEXPIVOT_CACHE_DIR"


class CapExceeded(ValueError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"n={n} exceeds the enumeration cap {cap}")
        self.n, self.cap = n, cap


class Unreachable(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise CapExceeded(n, cap)


# --- cache -------------------------------------------------------------------


def cache_dir() -> Path | None:
    """Cache location from HEXPIVOT_CACHE_DIR; no disk cache when unset."""
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _cached(name: str, build):
    d = cache_dir()
    if d is None:
        return build()
    path = d / f"{name}-v{CACHE_VERSION}.pickle"
    if path.exists():
        try:
            with path.open("rb") as fh:
                return pickle.load(fh)
        except (OSError, pickle.UnpicklingError, EOFError):
            pass
    value = build()
    d.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with tmp.open("wb") as fh:
        pickle.dump(value, fh)
    tmp.replace(path)
    return value


# --- enumeration -------------------------------------------------------------


def _before_origin(c) -> bool:
    # cells that come before the origin in (r, q) order are never added
    return c[1] < 0 or (c[1] == 0 and c[0] < 0)


def _redelmeier(n: int) -> list[tuple[Cell, ...]]:
    out: list[tuple[Cell, ...]] = []
    shape: list[tuple[int, int]] = []
    seen = {(0, 0)}

    def grow(untried: list, k: int) -> None:
        untried = list(untried)
        while untried:
            c = untried.pop()
            shape.append(c)
            if k + 1 == n:
                out.append(tuple(shape))
            else:
                fresh = []
                for dq, dr in DELTAS:
                    nb = (c[0] + dq, c[1] + dr)
                    if nb in seen or _before_origin(nb):
                        continue
                    # a new candidate must not touch the current shape elsewhere
                    fresh.append(nb)
                for nb in fresh:
                    seen.add(nb)
                grow(untried + fresh, k + 1)
                for nb in fresh:
                    seen.discard(nb)
            shape.pop()

    grow([(0, 0)], 0)
    result = []
    for s in out:
        lo = min(s)
        result.append(tuple(sorted(Cell(q - lo[0], r - lo[1]) for q, r in s)))
    result.sort()
    return result


def enumerate_shapes(n: int, cap: int = DEFAULT_CAP) -> list[Configuration]:
    """Every connected ``n``-module shape, normalized, in sorted order."""
    _check_cap(n, cap)
    keys = _cached(f"shapes-n{n}", lambda: _redelmeier(n))
    return [Configuration(k, check=False) for k in keys]


def slow_enumerate(n: int) -> set[tuple[Cell, ...]]:
    """Grow every shape by one cell at a time and deduplicate by normalizing."""
    cur = {(Cell(0, 0),)}
    for _ in range(n - 1):
        nxt = set()
        for s in cur:
            occ = set(s)
            for c in s:
                for dq, dr in DELTAS:
                    nb = Cell(c[0] + dq, c[1] + dr)
                    if nb in occ:
                        continue
                    t = occ | {nb}
                    lo = min(t)
                    nxt.add(tuple(sorted(Cell(x[0] - lo[0], x[1] - lo[1]) for x in t)))
        cur = nxt
    return cur


# --- reconfiguration graph ---------------------------------------------------


@dataclass
class ReconfigGraph:
    model: ModelId
    n: int
    nodes: list[Configuration]
    edges: set[tuple[int, int]] = field(default_factory=set)
    self_loops: int = 0

    @property
    def index(self) -> dict[tuple[Cell, ...], int]:
        return {c.sorted(): i for i, c in enumerate(self.nodes)}

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _edges_of(args):
    keys, model, lo, hi = args
    index = {k: i for i, k in enumerate(keys)}
    edges = set()
    loops = 0
    for i in range(lo, hi):
        c = Configuration(keys[i], check=False)
        for mv in legal_moves(c, model):
            j = index[normalize(Configuration((c.cells - {mv.mover}) | {mv.dest}, check=False)).sorted()]
            if i == j:
                loops += 1
            else:
                edges.add((min(i, j), max(i, j)))
    return edges, loops


def build_graph(n: int, model: ModelId | str = HexMonkey, cap: int = DEFAULT_CAP,
                threads: int = 1) -> ReconfigGraph:
    model = ModelId.parse(model)
    _check_cap(n, cap)
    nodes = enumerate_shapes(n, cap)
    keys = [c.sorted() for c in nodes]

    def build():
        k = max(1, threads)
        step = (len(keys) + k - 1) // k
        jobs = [(keys, model, lo, min(lo + step, len(keys))) for lo in range(0, len(keys), step)]
        if k == 1 or len(jobs) == 1:
            parts = [_edges_of(j) for j in jobs]
        else:
            with ProcessPoolExecutor(max_workers=k) as ex:
                parts = list(ex.map(_edges_of, jobs))
        edges: set[tuple[int, int]] = set()
        loops = 0
        for e, s in parts:
            edges |= e
            loops += s
        return edges, loops

    edges, loops = _cached(f"graph-n{n}-{model.value}", build)
    return ReconfigGraph(model, n, nodes, edges, loops)


def components(g: ReconfigGraph) -> list[set[int]]:
    """Connected components of the graph (union-find), largest first."""
    parent = list(range(len(g.nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, set[int]] = {}
    for i in range(len(g.nodes)):
        groups.setdefault(find(i), set()).add(i)
    return sorted(groups.values(), key=lambda s: (-len(s), min(s)))


def bfs_path(a: Configuration, b: Configuration, model: ModelId | str = HexMonkey,
             budget: int | None = None, cap: int = DEFAULT_CAP) -> MovePlan:
    """Shortest plan from ``a`` to ``b`` (up to translation) in actual coordinates."""
    model = ModelId.parse(model)
    if len(a) != len(b):
        raise ValueError("sizes differ")
    if budget is None:
        _check_cap(len(a), cap)
    goal = normalize(b).sorted()
    start = normalize(a).sorted()
    if start == goal:
        return MovePlan()
    parent: dict[tuple[Cell, ...], tuple[tuple[Cell, ...], Move] | None] = {start: None}
    actual = {start: a}
    queue = deque([start])
    while queue:
        key = queue.popleft()
        c = actual[key]
        for mv in legal_moves(c, model):
            nxt = Configuration((c.cells - {mv.mover}) | {mv.dest}, check=False)
            k = normalize(nxt).sorted()
            if k in parent:
                continue
            parent[k] = (key, mv)
            actual[k] = nxt
            if k == goal:
                out = []
                while parent[k] is not None:
                    k, step = parent[k]
                    out.append(step)
                plan = MovePlan(reversed(out))
                verify_plan(a, plan, model)
                return plan
            if budget is not None and len(parent) > budget:
                raise BudgetExceeded(f"explored more than {budget} states")
            queue.append(k)
    raise Unreachable(f"{b!r} is not reachable from {a!r} under {model.value}")


def rigidity_scan(n: int, model: ModelId | str = HexMonkey, cap: int = DEFAULT_CAP) -> list[Configuration]:
    """Shapes with no legal move at all. The single module is always rigid."""
    model = ModelId.parse(model)
    return [c for c in enumerate_shapes(n, cap) if not legal_moves(c, model)]


def summary(n: int, model: ModelId | str = HexMonkey, *, want_components: bool = False,
            want_rigid: bool = False, cap: int = DEFAULT_CAP, threads: int = 1) -> dict[str, int]:
    """Counts printed by the ``explore`` command, in output order."""
    g = build_graph(n, model, cap, threads)
    out = {"nodes": len(g.nodes), "edges": len(g.edges)}
    if want_components:
        out["components"] = len(components(g))
    if want_rigid:
        out["rigid"] = len(rigidity_scan(n, model, cap))
    return out
