"""Where each expansion of Ai is accurate on the square |Re z|, |Im z| <= 10.

Prints, per method, the fraction of a coarse grid reaching 1e-8 and 1e-5
relative accuracy, then the region boundaries seen in the data.

    python demos/accuracy_regions.py [step]
"""

import sys

import numpy as np

from airyseries import bench

step = float(sys.argv[1]) if len(sys.argv) > 1 else 1.0
points = bench.grid_points((-10, 10), (-10, 10), step)
print(f"{len(points)} grid points, step {step}")

for method in ("maclaurin", "asymptotic", "convergent"):
    recs = bench.accuracy_grid(points=points, method=method, N=500)
    acc = np.array([r.accuracy for r in recs])
    mods = np.array([abs(r.z) for r in recs])
    re = np.array([r.z.real for r in recs])
    print(f"\n{method}")
    print(f"  accuracy <= 1e-8 at {np.mean(acc <= 1e-8):.1%} of points, <= 1e-5 at {np.mean(acc <= 1e-5):.1%}")
    bad = acc > 1e-8
    if method == "maclaurin":
        inner = (mods <= 10) & (re <= 3.8)
        print(f"  Re z <= 3.8, |z| <= 10: {np.sum(bad & inner)} of {np.sum(inner)} points above 1e-8"
              " (cancellation at the far end of the negative axis)")
        print(f"  smallest Re z above 1e-8 outside that region: {re[bad & ~inner].min():.2f}")
    if method in ("asymptotic", "convergent") and bad.any():
        print(f"  largest |z| with accuracy above 1e-8: {mods[bad].max():.2f}")
