"""Which small permutation and linear groups are fixating?

Prints one row per group: order, verdict, order of the smallest eccentric
subgroup and the time the search took.

    python scripts/fixating_survey.py --max-degree 6
"""
import argparse
import time

from gafcheck.glfq import general_linear_group, gl_order
from gafcheck.perm import alternating_group, is_fixating, symmetric_group


def row(name, G):
    t0 = time.perf_counter()
    res = is_fixating(G)
    dt = time.perf_counter() - t0
    witness = "-" if res.fixating else str(res.witness.order)
    print(f"{name:<10}{G.order:>8}   {'fixating' if res.fixating else 'not fixating':<14}{witness:>8}{dt:>10.2f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-degree", type=int, default=6)
    args = ap.parse_args()

    print(f"{'group':<10}{'order':>8}   {'verdict':<14}{'witness':>8}{'time':>12}")
    for n in range(1, args.max_degree + 1):
        row(f"S{n}", symmetric_group(n))
    for n in range(3, args.max_degree + 1):
        row(f"A{n}", alternating_group(n))
    for d, q in [(1, 2), (1, 3), (1, 4), (1, 5), (1, 7), (1, 8), (1, 9), (2, 2), (2, 3), (3, 2)]:
        G = general_linear_group(d, q)
        assert G.order == gl_order(d, q)
        row(f"GL({d},{q})", G)


if __name__ == "__main__":
    main()
