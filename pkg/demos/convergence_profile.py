"""Accuracy of the convergent expansion as the truncation index N grows.

The error falls steadily with N and much faster as |z| grows; on
arg z = 2pi/3 the decay is slow, and beyond N ~ 400 the extra terms hardly
move the result.  Rows at |z| = 9 sit at the binary64 floor already at N = 50.

    python demos/convergence_profile.py
"""

import math

from airyseries import bench

N_LIST = [50, 100, 200, 300, 400, 500]
CASES = [(r, phi) for phi in (0.0, math.pi / 3, 2 * math.pi / 3, math.pi) for r in (4.0, 5.5, 7.0, 9.0)]

print("r      arg z    " + "".join(f"N={n:<9d}" for n in N_LIST))
for r, phi in CASES:
    rows = bench.convergence_profile([complex(r * math.cos(phi), r * math.sin(phi))], N_LIST)
    print(f"{r:<6.1f} {phi:<8.4f} " + "".join(f"{row['accuracy']:<11.1e}" for row in rows))
