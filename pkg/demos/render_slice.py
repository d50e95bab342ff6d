"""Render a complex line slice of the quadratic map and write PPM/PNG/CSV files.

Usage: python3 render_slice.py [OUTPUT_PREFIX]
"""

import sys
import time

from henon_rigidity import MonicCenteredHenon, SliceSpec, render_slice
from henon_rigidity.render import encode_png

prefix = sys.argv[1] if len(sys.argv) > 1 else "quadratic_slice"
h = MonicCenteredHenon.quadratic()
# the real plane x, y in [-2.5, 2.5]
sl = SliceSpec((0, 0), (1, 0), (0, 1), (-2.5, 2.5, -2.5, 2.5), (256, 256))

t0 = time.perf_counter()
out = render_slice(h, sl, max_iter=50, threads=4)
print(f"rendered in {time.perf_counter() - t0:.2f} s, checksum {out.checksum}")

bounded = int((out.steps < 0).sum())
print(f"{bounded} of {out.steps.size} pixels undecided after 50 steps")

w, hgt = sl.resolution
for name, ppm in (("escape", out.escape_ppm), ("green", out.green_ppm)):
    with open(f"{prefix}_{name}.ppm", "wb") as fh:
        fh.write(ppm)
    with open(f"{prefix}_{name}.png", "wb") as fh:
        fh.write(encode_png(ppm[-3 * w * hgt:], w, hgt))
with open(f"{prefix}.csv", "w") as fh:
    fh.write(out.csv)
print("wrote", f"{prefix}_escape.ppm", f"{prefix}_green.ppm", f"{prefix}.csv")
