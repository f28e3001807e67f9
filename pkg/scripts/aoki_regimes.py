"""Print where the beamsplitter-network state changes entanglement regime.

Locates the end of the bipartite window (DS- back to 4), the DS- minimum, and
the point where the single-condition tripartite test stops working.
"""
import math

from scipy.optimize import brentq, minimize_scalar

from tripartite_cv import criteria as C
from tripartite_cv.models import AokiParams, aoki_covariance, grid


def ds(r):
    return C.duan_simon(aoki_covariance(AokiParams(r)), 1, 2, "-").value


def single(r):
    return C.vlf_single(aoki_covariance(AokiParams(r)), 1).value


def main():
    edge = brentq(lambda r: ds(r) - 4, 0.5, 3.0, xtol=1e-14)
    low = minimize_scalar(ds, bounds=(0.1, 1.5), method="bounded", options={"xatol": 1e-10})
    back = brentq(lambda r: single(r) - 4, 2.0, 5.0, xtol=1e-14)
    print(f"bipartite window ends at r = {edge:.12f}  (ln 5 = {math.log(5):.12f})")
    print(f"DS- minimum {low.fun:.12f} at r = {low.x:.8f}  (4*sqrt(5)/3 = {4 * math.sqrt(5) / 3:.12f})")
    print(f"single-condition test returns to 4 at r = {back:.10f}")
    print()
    for r in grid(0, 3, 0.5):
        print(f"r = {r:3.1f}: {C.classify(aoki_covariance(AokiParams(r))).regime}")


if __name__ == "__main__":
    main()
