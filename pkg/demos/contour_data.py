"""Steepest-descent contours of w a - a^3/3 through the saddle -w^(1/2).

Writes one CSV per phase into the output directory (default ./contours),
ready for any plotting tool, and prints the worst cubic residual and the
drift of the imaginary part of the exponent along each contour.

    python demos/contour_data.py [outdir]
"""

import cmath
import math
import sys
from pathlib import Path

from airyseries import bench
from airyseries.geometry import middle_residual, outer_residual, sample_paths

out = Path(sys.argv[1] if len(sys.argv) > 1 else "contours")
out.mkdir(parents=True, exist_ok=True)
header = ["segment", "param", "re_alpha", "im_alpha", "f_real", "f_imag"]

for label, phi in (("0", 0.0), ("7pi_12", 7 * math.pi / 12), ("2pi_3", 2 * math.pi / 3), ("-pi_3", -math.pi / 3)):
    w = cmath.exp(1j * phi)
    samples = sample_paths(w, 200, 10.0)
    residual = max(middle_residual(w, p.param, p.alpha) if p.segment == "II" else outer_residual(w, p.param, p.alpha)
                   for p in samples)
    drift = max(abs(p.f_imag - samples[0].f_imag) for p in samples)
    rows = [[p.segment, p.param, p.alpha.real, p.alpha.imag, p.f_real, p.f_imag] for p in samples]
    with open(out / f"contour_phi_{label}.csv", "w", encoding="utf-8", newline="") as fh:
        bench.write_csv(header, rows, fh)
    print(f"arg w = {phi:+.4f}: {len(samples)} samples, cubic residual {residual:.1e}, f_imag drift {drift:.1e}")
print(f"written to {out}/")
