"""Hirzebruch-Jung chains for all coprime 2 <= q < n <= N: determinant and essential set."""

import argparse
import time
from math import gcd

from nalink.dualgraph import hj_chain, intersection_matrix
from nalink.space import log_essential


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=30)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()

    start = time.perf_counter()
    failures = 0
    count = 0
    for n in range(2, args.max_n + 1):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            g = hj_chain(n, q)
            im = intersection_matrix(g)
            det = im.minors[-1]
            ess = log_essential(g)
            ok = abs(det) == n and set(ess.S) == set(g.ids)
            failures += not ok
            count += 1
            if args.verbose or not ok:
                chain = [v.self_int for v in g.vertices if v.kind == "Exceptional"]
                print(f"{n:3d}/{q:<3d} chain={chain} det={det} essential={len(ess.S)} {'ok' if ok else 'FAIL'}")
    print(f"{count} chains, {failures} failures, {time.perf_counter() - start:.2f} s")


if __name__ == "__main__":
    main()
