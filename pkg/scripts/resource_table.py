"""Tabulate qubit and gate counts of one Grover iteration against edge count.

Graphs are prefixes of the edge list of K_n, so n is fixed and m grows.

    python3 scripts/resource_table.py [--n 5] [--max-m 10]
"""

import argparse

from qmaxcut.circuit import compact_qubit_count, faithful_qubit_count, make_layout, resource_stats
from qmaxcut.graph import Graph, complete_graph
from qmaxcut.synth import synth_grover_iteration


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--max-m", type=int, default=10)
    args = ap.parse_args()

    edges = complete_graph(args.n).edges
    print(f"{'m':>3} {'faithful q':>10} {'compact q':>9} {'faithful gates':>14} {'compact gates':>13}")
    for m in range(1, min(args.max_m, len(edges)) + 1):
        g = Graph(args.n, edges[:m])
        gates = {}
        for mode in ("faithful", "compact"):
            lay = make_layout(mode, g.n, g.m)
            gates[mode] = resource_stats(synth_grover_iteration(g, lay, m)).total_gates
        print(
            f"{m:>3} {faithful_qubit_count(g.n, m):>10} {compact_qubit_count(g.n, m):>9}"
            f" {gates['faithful']:>14} {gates['compact']:>13}"
        )


if __name__ == "__main__":
    main()
