"""Compare the exact support-set method with subgradient descent for hyperbolic circumcentres.

For random clouds in the upper half-plane both methods are run from the same
data; the table lists radius disagreement, iterations and wall time.

    python scripts/circumcenter_benchmark.py --sizes 5 20 100 --trials 20
"""
import argparse
import time

import numpy as np

from gafcheck.circumcenter import HYPERBOLIC, circumcenter
from gafcheck.hyperbolic import hyperbolic_distance


def cloud(rng, n, dim):
    x = rng.normal(size=(n, dim))
    x[:, -1] = np.exp(rng.normal(size=n))
    return x


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 20, 100])
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>5} {'welzl ms':>10} {'descent ms':>11} {'descent iters':>14} {'radius gap':>12} {'centre gap':>12}")
    for n in args.sizes:
        tw = td = 0.0
        iters, gaps, centres = [], [], []
        for _ in range(args.trials):
            pts = cloud(rng, n, args.dim)
            t0 = time.perf_counter()
            exact = circumcenter(pts, HYPERBOLIC)
            t1 = time.perf_counter()
            approx = circumcenter(pts, HYPERBOLIC, method="descent", tol=1e-10)
            t2 = time.perf_counter()
            tw += t1 - t0
            td += t2 - t1
            iters.append(approx.iterations)
            gaps.append(approx.radius - exact.radius)
            centres.append(hyperbolic_distance(approx.center, exact.center))
        k = args.trials
        print(f"{n:>5} {1e3 * tw / k:>10.2f} {1e3 * td / k:>11.2f} {np.median(iters):>14.0f} "
              f"{max(gaps):>12.2e} {max(centres):>12.2e}")


if __name__ == "__main__":
    main()
