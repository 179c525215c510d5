"""Re-run the sweep oracle and print the table in the literal form used by move_model.

    python scripts/derive_free_space.py            # print rows
    python scripts/derive_free_space.py --check    # exit 1 if the frozen table differs
"""

import argparse
import sys

from hexpivot.freespace import STEP_DEG, derive_free_space
from hexpivot.move_model import FREE_SPACE


def row(key, res) -> str:
    kind, rot, d = key
    empty = sorted(tuple(c) for c in res.must_be_empty)
    s2 = None if res.second_support is None else tuple(res.second_support)
    return f'    ("{kind}", "{rot}", "{d.name}", {tuple(res.dest)}, {empty}, {s2}),'


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--step", type=float, default=STEP_DEG, help="sweep step in degrees")
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    fresh = derive_free_space(args.step)
    if args.check:
        diff = [k for k, r in fresh.items()
                if FREE_SPACE.get(k) != (r.dest, r.must_be_empty, r.second_support)]
        diff += [k for k in FREE_SPACE if k not in fresh]
        for k in diff:
            print("differs:", k)
        print(f"{len(fresh)} entries, {len(diff)} differ")
        return 1 if diff else 0
    for key in sorted(fresh, key=lambda k: (k[0] != "restricted", k[1], k[2])):
        print(row(key, fresh[key]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
