"""Move counts of the planner on seeded random shapes, per phase.

Prints one line per size with the worst count seen and its ratio to n^2 and
n^3, so the growth rate can be eyeballed.
"""

import argparse

from hexpivot.cli_io import random_configuration
from hexpivot.planner import run_phases


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 15, 20, 30, 40, 60])
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()
    print("n  phase1  phase2  phase3  total  total/n^2  total/n^3")
    for n in args.sizes:
        worst = {"phase1": 0, "phase2": 0, "phase3": 0, "total": 0}
        for seed in range(args.seeds):
            b = run_phases(random_configuration(n, seed))
            counts = b.plan().counts("phase")
            for k in ("phase1", "phase2", "phase3"):
                worst[k] = max(worst[k], counts.get(k, 0))
            worst["total"] = max(worst["total"], len(b.log))
        t = worst["total"]
        print(f"{n:<3}{worst['phase1']:>7}{worst['phase2']:>8}{worst['phase3']:>8}{t:>7}"
              f"{t / n ** 2:>11.2f}{t / n ** 3:>11.3f}")


if __name__ == "__main__":
    main()
