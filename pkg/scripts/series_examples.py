#!/usr/bin/env python3
"""Exact independence series for a few small reference graphs.

The pentagon stabilizes at sqrt(5) from the second power on; adding an
isolated vertex to it makes every finite power undershoot the limit. Handy
as a sanity run and as a usage example for the library API.

Usage:
    python scripts/series_examples.py [--k-max 3]
"""

import argparse

from capforge import cycle_graph, independence_series, make_graph


def named_graphs():
    c5_plus = make_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    # caps keep the demo quick: C7^3 is a famously hard exact instance, and
    # the isolated vertex makes powers disjoint unions the solver multiplies on
    return [
        ("C5", cycle_graph(5), 3),
        ("C5 + isolated vertex", c5_plus, 2),
        ("C7", cycle_graph(7), 2),
    ]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=3)
    args = p.parse_args()
    for name, g, cap_k in named_graphs():
        k_max = min(args.k_max, cap_k)
        while g.n**k_max > 20_000:
            k_max -= 1
        report = independence_series(g, k_max, mode="exact")
        print(f"\n{name} (n={g.n}):")
        print(f"  {'k':>2} {'alpha':>6} {'a_k':>8}")
        for e in report.entries:
            print(f"  {e.k:>2} {e.alpha_exact!s:>6} {e.a_k_lower:>8.4f}")
        if report.monotone_violations:
            print(f"  monotone violations: {report.monotone_violations}")


if __name__ == "__main__":
    main()
