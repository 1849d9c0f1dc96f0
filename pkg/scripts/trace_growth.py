"""Growth of traces of words in A = [[0,1],[-1,3]] and B = [[-1,-1],[5,4]].

The trace sequence alpha_n (alpha_0 = 0, alpha_1 = 1, alpha_{n+1} = 3 alpha_n - alpha_{n-1})
grows like phi^(2n); for every syllable count the script also reports the
smallest |trace| over reduced words with exponents in [-k, k].

    python scripts/trace_growth.py --syllables 6 --exponent 3
"""
import argparse
import math
from collections import defaultdict

from gafcheck.sl2z import TraceSequence, word_products


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--syllables", type=int, default=6)
    ap.add_argument("--exponent", type=int, default=3)
    ap.add_argument("--alpha-up-to", type=int, default=30)
    args = ap.parse_args()

    phi2 = ((1 + math.sqrt(5)) / 2) ** 2
    seq = TraceSequence.up_to(args.alpha_up_to)
    print(" n  alpha_n                 alpha_n / phi^(2n-2)")
    for n in range(1, args.alpha_up_to + 1, max(1, args.alpha_up_to // 10)):
        print(f"{n:>2}  {seq[n]:<22}  {seq[n] / phi2 ** (n - 1):.6f}")

    smallest = defaultdict(lambda: math.inf)
    count = defaultdict(int)
    for w, M in word_products(args.syllables, args.exponent):
        k = len(w.letters)
        count[k] += 1
        smallest[k] = min(smallest[k], abs(M.trace()))
    print()
    print("syllables  words      min |trace|")
    for k in sorted(count):
        print(f"{k:>9}  {count[k]:<9}  {smallest[k]}")


if __name__ == "__main__":
    main()
