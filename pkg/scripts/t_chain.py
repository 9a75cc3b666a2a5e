"""Try the order-n derivative chain of T under a node budget and report the
level sizes, or how far it got.

    python3 scripts/t_chain.py [n] [radius] [budget]
"""
import sys
import time

from wangshift.cb_rank import derivative_chain
from wangshift.solver import ResourceLimit
from wangshift.sparse_grid import build_T


def main(n=4, radius=1, budget=9_600_000):
    t = time.time()
    try:
        rep = derivative_chain(build_T().T, int(n), int(radius), budget=int(budget))
    except ResourceLimit as err:
        print(f"gave up after {time.time() - t:.0f}s: {err}")
        return 3
    print(f"sizes {rep.sizes} fixpoint {rep.fixpoint} in {time.time() - t:.0f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
