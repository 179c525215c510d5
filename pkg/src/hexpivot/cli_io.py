"""File formats, the ``hexpivot`` command line, random instances and SVG frames.

Configuration files hold one ``q r`` pair per line; ``#`` starts a comment
line and blank lines are skipped. Plan files are JSON lines with the keys
``mover, rot, kind, dest, phase`` in that order.

Exit codes: 0 ok, 1 verify reached a different shape, 2 parse error or bad
arguments, 3 size mismatch, 4 internal planner error (state dumped next to the
output), 5 planning requested for the restricted model, 6 illegal plan step,
7 explorer cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .configuration import Configuration, ConfigurationError, normalize
from .explorer import DEFAULT_CAP, CapExceeded, summary
from .hexgrid import Cell, center, corner_points, neighbors
from .move_model import HexMonkey, ModelId, Move, MovePlan, StepIllegal, move_about, verify_plan
from .planner import PlannerError, SizeMismatch, reconfigure

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_SIZE = 3
EXIT_INTERNAL = 4
EXIT_UNSUPPORTED = 5
EXIT_STEP = 6
EXIT_CAP = 7


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


# --- configuration files -----------------------------------------------------


def parse_config(text: str) -> Configuration:
    cells = []
    seen = set()
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'q r', got {raw!r}", i)
        try:
            c = Cell(int(parts[0]), int(parts[1]))
        except ValueError:
            raise ParseError(f"not two integers: {raw!r}", i) from None
        if c in seen:
            raise ParseError(f"cell {c} listed twice", i)
        seen.add(c)
        cells.append(c)
    try:
        return Configuration(cells)
    except ConfigurationError as e:
        raise ParseError(str(e)) from None


def format_config(c: Configuration, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{x.q} {x.r}" for x in c.sorted()]
    return "\n".join(lines) + "\n"


def read_config(path) -> Configuration:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_config(text)


# --- plan files --------------------------------------------------------------


def resolve_move(mover: Cell, dest: Cell, rot: str, kind: str) -> Move:
    """The unique pivot of the given kind and sense taking ``mover`` to ``dest``."""
    for s in neighbors(mover):
        mv = move_about(mover, s, rot, kind)
        if mv is not None and mv.dest == dest:
            return mv
    raise ParseError(f"no {kind} {rot} pivot takes {tuple(mover)} to {tuple(dest)}")


def move_record(mv: Move) -> str:
    rec = {
        "mover": [mv.mover.q, mv.mover.r],
        "rot": mv.rotation,
        "kind": mv.kind,
        "dest": [mv.dest.q, mv.dest.r],
        "phase": mv.phase,
    }
    return json.dumps(rec, separators=(",", ":"))


def format_plan(plan) -> str:
    return "".join(move_record(mv) + "\n" for mv in plan)


def parse_plan(text: str) -> MovePlan:
    plan = MovePlan()
    for i, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
            mover = Cell(*map(int, rec["mover"]))
            dest = Cell(*map(int, rec["dest"]))
            rot, kind = rec["rot"], rec["kind"]
            phase = str(rec.get("phase", ""))
        except (ValueError, KeyError, TypeError) as e:
            raise ParseError(f"bad plan record ({e})", i) from None
        if rot not in ("cw", "ccw") or kind not in ("restricted", "monkey"):
            raise ParseError(f"bad rot/kind {rot!r}/{kind!r}", i)
        try:
            mv = resolve_move(mover, dest, rot, kind)
        except ParseError:
            # well formed but geometrically impossible: left for verify to reject
            mv = Move(mover, dest, rot, kind, mover)
        plan.append(mv.tagged(phase=phase))
    return plan


def read_plan(path) -> MovePlan:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_plan(text)


# --- random instances --------------------------------------------------------


def random_configuration(n: int, seed: int) -> Configuration:
    """Grow from the origin by adding a uniformly chosen empty boundary cell."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    occ = {Cell(0, 0)}
    frontier = set(neighbors(Cell(0, 0)))
    while len(occ) < n:
        c = rng.choice(sorted(frontier))
        occ.add(c)
        frontier.discard(c)
        frontier.update(nb for nb in neighbors(c) if nb not in occ)
    return normalize(Configuration(occ, check=False))


# --- rendering ---------------------------------------------------------------

SCALE = 20.0


def _pt(x: float, y: float) -> str:
    # the embedding has y up, SVG has y down
    return f"{x * SCALE:.3f},{-y * SCALE:.3f}"


def _hexagon(c: Cell, fill: str, stroke: str = "#333", dash: bool = False) -> str:
    pts = " ".join(_pt(*p) for p in corner_points(c))
    extra = ' stroke-dasharray="4,3"' if dash else ""
    return f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="1.5"{extra}/>'


def render_frame(cells, box, mover: Cell | None = None, origin: Cell | None = None,
                 title: str = "") -> str:
    x0, y0, x1, y1 = box
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0 * SCALE:.3f} {-y1 * SCALE:.3f} '
        f'{w:.3f} {h:.3f}" width="{w:.0f}" height="{h:.0f}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    if origin is not None:
        out.append(_hexagon(origin, "none", "#d62728", dash=True))
    for c in sorted(cells):
        fill = "#ff7f0e" if c == mover else "#9ecae1"
        out.append(_hexagon(c, fill))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(start: Configuration, plan=(), outdir=".") -> list[Path]:
    """Write ``frame_0000.svg`` (start) and one frame after each move."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    frames = [(set(start.cells), None, None)]
    occ = set(start.cells)
    for mv in plan:
        occ.discard(mv.mover)
        occ.add(mv.dest)
        frames.append((set(occ), mv.dest, mv.mover))
    pts = [p for cells, _, _ in frames for c in cells for p in corner_points(c)]
    pad = 0.5
    box = (min(p[0] for p in pts) - pad, min(p[1] for p in pts) - pad,
           max(p[0] for p in pts) + pad, max(p[1] for p in pts) + pad)
    paths = []
    for i, (cells, mover, origin) in enumerate(frames):
        p = outdir / f"frame_{i:04d}.svg"
        p.write_text(render_frame(cells, box, mover, origin, f"frame {i}"), encoding="utf-8")
        paths.append(p)
    return paths


def embedding_centers(c: Configuration) -> list[tuple[float, float]]:
    return [center(x) for x in c.sorted()]


# --- command line ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hexpivot", description="Pivoting hexagonal modules: plan, verify, explore.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    pl = sub.add_parser("plan", help="plan a reconfiguration between two shapes")
    pl.add_argument("--in", dest="inp", required=True)
    pl.add_argument("--target", required=True)
    pl.add_argument("--model", default="monkey")
    pl.add_argument("--out", required=True)
    pl.add_argument("--stats", action="store_true")

    ve = sub.add_parser("verify", help="replay a plan with full legality checks")
    ve.add_argument("--in", dest="inp", required=True)
    ve.add_argument("--plan", required=True)
    ve.add_argument("--model", default="monkey")
    ve.add_argument("--expect")

    ex = sub.add_parser("explore", help="counts for the reconfiguration graph of size n")
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--model", default="monkey")
    ex.add_argument("--components", action="store_true")
    ex.add_argument("--rigid", action="store_true")
    ex.add_argument("--cap", type=int, default=DEFAULT_CAP)
    ex.add_argument("--threads", type=int, default=1)

    ra = sub.add_parser("random", help="seeded random connected configuration")
    ra.add_argument("--n", type=int, required=True)
    ra.add_argument("--seed", type=int, required=True)
    ra.add_argument("--out", required=True)

    re_ = sub.add_parser("render", help="one SVG per frame of a plan")
    re_.add_argument("--in", dest="inp", required=True)
    re_.add_argument("--plan")
    re_.add_argument("--out", required=True)
    return p


def _model(name: str) -> ModelId:
    try:
        return ModelId.parse(name)
    except ValueError as e:
        raise ParseError(str(e)) from None


def cmd_plan(args) -> int:
    model = _model(args.model)
    a, b = read_config(args.inp), read_config(args.target)
    if model != HexMonkey:
        print("planning is only supported for the monkey model", file=sys.stderr)
        return EXIT_UNSUPPORTED
    if len(a) != len(b):
        print(f"size mismatch: {len(a)} vs {len(b)}", file=sys.stderr)
        return EXIT_SIZE
    try:
        plan = reconfigure(a, b, model)
    except SizeMismatch as e:
        print(str(e), file=sys.stderr)
        return EXIT_SIZE
    except PlannerError as e:
        dump = Path(str(args.out) + ".state.cfg")
        dump.write_text(e.dump(), encoding="utf-8")
        print(f"internal planner error: {e}; state written to {dump}", file=sys.stderr)
        return EXIT_INTERNAL
    Path(args.out).write_text(format_plan(plan), encoding="utf-8")
    if args.stats:
        n = len(a)
        counts = plan.counts("phase")
        fields = [f"n={n}", f"moves={len(plan)}"]
        fields += [f"{k}={counts[k]}" for k in sorted(counts)]
        fields.append(f"ratio_n3={len(plan) / n ** 3:.6f}")
        print("\t".join(fields))
    return EXIT_OK


def cmd_verify(args) -> int:
    model = _model(args.model)
    start = read_config(args.inp)
    plan = read_plan(args.plan)
    expect = read_config(args.expect) if args.expect else None
    try:
        end = verify_plan(start, plan, model)
    except StepIllegal as e:
        print(f"step {e.index} illegal: {e.reason} {e.move!r}")
        return EXIT_STEP
    if expect is not None:
        if len(expect) != len(start):
            print(f"size mismatch: {len(start)} vs {len(expect)}", file=sys.stderr)
            return EXIT_SIZE
        if normalize(end) != normalize(expect):
            print("plan is legal but ends on a different shape")
            return EXIT_MISMATCH
    print(f"ok\tmoves={len(plan)}")
    return EXIT_OK


def cmd_explore(args) -> int:
    model = _model(args.model)
    if args.n < 1:
        raise ParseError("--n must be at least 1")
    try:
        counts = summary(args.n, model, want_components=args.components, want_rigid=args.rigid,
                         cap=args.cap, threads=args.threads)
    except CapExceeded as e:
        print(str(e), file=sys.stderr)
        return EXIT_CAP
    order = ["nodes", "components", "rigid", "edges"]
    print(" ".join(f"{k}={counts[k]}" for k in order if k in counts))
    return EXIT_OK


def cmd_random(args) -> int:
    if args.n < 1:
        raise ParseError("--n must be at least 1")
    c = random_configuration(args.n, args.seed)
    Path(args.out).write_text(format_config(c, f"random n={args.n} seed={args.seed}"), encoding="utf-8")
    return EXIT_OK


def cmd_render(args) -> int:
    start = read_config(args.inp)
    plan = read_plan(args.plan) if args.plan else MovePlan()
    try:
        verify_plan(start, plan, HexMonkey)
    except StepIllegal as e:
        print(f"step {e.index} illegal: {e.reason} {e.move!r}")
        return EXIT_STEP
    paths = render(start, plan, args.out)
    print(f"frames={len(paths)}")
    return EXIT_OK


COMMANDS = {
    "plan": cmd_plan,
    "verify": cmd_verify,
    "explore": cmd_explore,
    "random": cmd_random,
    "render": cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
