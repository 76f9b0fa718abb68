"""Run one Grover iteration on the 3-vertex path and print the x-register distribution.

    python3 scripts/path3_demo.py [--shots 1024] [--seed 1]
"""

import argparse

from qmaxcut.graph import Graph
from qmaxcut.solver import SolverConfig, solve_maxcut


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--shots", type=int, default=0)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    g = Graph(3, [(1, 2), (2, 3)])
    res = solve_maxcut(g, SolverConfig(shots=args.shots, seed=args.seed))
    for step in res.trace.steps:
        print(f"t={step.t} R={step.R} iterations={step.iterations} p={step.successProbability:.6f}")
    print("x3x2x1  probability")
    for bits, p in sorted(res.marginal.items()):
        print(f"  {bits}   {p:.6f}")
    if res.histogram is not None:
        print("sampled:", dict(sorted(res.histogram.counts.items())))
    v1, v2 = res.report.assignment.vertex_sets()
    print(f"max cut {res.report.size}: V1={v1} V2={v2}")


if __name__ == "__main__":
    main()
