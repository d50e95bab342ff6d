"""Escape-time and Green's function images of real 2-parameter slices of C^2.

A slice embeds ``(s, t)`` as ``base + s*dir_u + t*dir_v``. Pixel ``(row, col)``
samples the pixel centre, with row 0 at ``t_max``. Rows are independent and
evaluated with the same vectorized kernels as :func:`classify_point` and
:func:`green_numeric`; with threads, each row lands in a pre-assigned slot,
so the output bytes do not depend on the thread count.
"""

from __future__ import annotations

import hashlib
import struct
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bottcher import green_kernel
from .henon import MonicCenteredHenon, escape_steps, filtration_radius
from .io import decode_complex, points_csv

__all__ = ["SliceSpec", "RenderOutput", "render_slice", "encode_ppm", "encode_png"]

GREEN_TOL = 1e-13


@dataclass(frozen=True)
class SliceSpec:
    base: tuple[complex, complex]
    dir_u: tuple[complex, complex]
    dir_v: tuple[complex, complex]
    bounds: tuple[float, float, float, float]
    resolution: tuple[int, int]

    def __post_init__(self):
        for name in ("base", "dir_u", "dir_v"):
            pair = tuple(complex(c) for c in getattr(self, name))
            if len(pair) != 2:
                raise ValueError(f"{name} must be a pair of complex numbers")
            object.__setattr__(self, name, pair)
        smin, smax, tmin, tmax = (float(b) for b in self.bounds)
        if not (smin < smax and tmin < tmax):
            raise ValueError(f"degenerate bounds {self.bounds}")
        w, h = (int(r) for r in self.resolution)
        if w < 1 or h < 1:
            raise ValueError(f"resolution must be positive, got {self.resolution}")
        object.__setattr__(self, "bounds", (smin, smax, tmin, tmax))
        object.__setattr__(self, "resolution", (w, h))

    @classmethod
    def from_dict(cls, spec: dict) -> "SliceSpec":
        def pair(key):
            return tuple(decode_complex(c) for c in spec[key])

        return cls(pair("base"), pair("dir_u"), pair("dir_v"), tuple(spec["bounds"]), tuple(spec["resolution"]))

    def row_params(self, row: int) -> tuple[np.ndarray, float]:
        smin, smax, tmin, tmax = self.bounds
        w, h = self.resolution
        s = smin + (np.arange(w) + 0.5) * ((smax - smin) / w)
        t = tmax - (row + 0.5) * ((tmax - tmin) / h)
        return s, t

    def row_points(self, row: int) -> tuple[np.ndarray, np.ndarray]:
        s, t = self.row_params(row)
        x = self.base[0] + s * self.dir_u[0] + t * self.dir_v[0]
        y = self.base[1] + s * self.dir_u[1] + t * self.dir_v[1]
        return x, y

    def point(self, row: int, col: int) -> tuple[complex, complex]:
        x, y = self.row_points(row)
        return complex(x[col]), complex(y[col])


@dataclass
class RenderOutput:
    steps: np.ndarray  # entry step, -1 for undecided
    green: np.ndarray
    escape_ppm: bytes
    green_ppm: bytes
    csv: str
    checksum: str


def _gray_rgb(gray: np.ndarray) -> bytes:
    return np.repeat(gray.astype(np.uint8)[..., None], 3, axis=2).tobytes()


def encode_ppm(rgb: bytes, width: int, height: int, comments: list[str]) -> bytes:
    header = "P6\n" + "".join(f"# {c}\n" for c in comments) + f"{width} {height}\n255\n"
    return header.encode("ascii") + rgb


def encode_png(rgb: bytes, width: int, height: int) -> bytes:
    """Minimal 8-bit RGB PNG (no filtering, zlib level 9)."""

    def chunk(tag: bytes, data: bytes) -> bytes:
        return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)

    stride = 3 * width
    raw = b"".join(b"\x00" + rgb[r * stride : (r + 1) * stride] for r in range(height))
    ihdr = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    return b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr) + chunk(b"IDAT", zlib.compress(raw, 9)) + chunk(b"IEND", b"")


def escape_layer(steps: np.ndarray) -> np.ndarray:
    return np.where(steps < 0, 255, steps % 256)


def green_layer(green: np.ndarray) -> tuple[np.ndarray, float, float]:
    lo, hi = float(green.min()), float(green.max())
    if hi > lo:
        gray = np.rint((green - lo) * (255.0 / (hi - lo)))
    else:
        gray = np.zeros_like(green)
    return gray, lo, hi


def render_slice(
    hmap: MonicCenteredHenon,
    slice_spec: SliceSpec,
    max_iter: int,
    radius: float | None = None,
    threads: int = 1,
) -> RenderOutput:
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if radius is None:
        radius = filtration_radius(hmap, samples=64).value
    w, h = slice_spec.resolution
    steps = np.empty((h, w), dtype=np.int64)
    green = np.empty((h, w))

    def do_row(row: int) -> None:
        x, y = slice_spec.row_points(row)
        steps[row] = escape_steps(hmap, x, y, max_iter, radius)
        green[row] = green_kernel(hmap, x, y, GREEN_TOL, max_iter, radius)[0]

    if threads <= 1:
        for row in range(h):
            do_row(row)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(do_row, range(h)))

    esc_rgb = _gray_rgb(escape_layer(steps))
    ggray, lo, hi = green_layer(green)
    green_rgb = _gray_rgb(ggray)
    common = [f"max_iter={max_iter}", f"radius={radius!r}"]
    escape_ppm = encode_ppm(
        esc_rgb, w, h, ["escape layer: gray = entry step mod 256, undecided = 255"] + common
    )
    green_ppm = encode_ppm(
        green_rgb, w, h, [f"green layer: gray = round(255 (G - {lo!r}) / ({hi!r} - {lo!r}))"] + common
    )
    rows = []
    for r in range(h):
        s, t = slice_spec.row_params(r)
        for c in range(w):
            rows.append((r, c, float(s[c]), float(t), int(steps[r, c]), float(green[r, c])))
    text = points_csv(rows, ["row", "col", "s", "t", "step", "green"])
    digest = hashlib.sha256()
    for part in (escape_ppm, green_ppm, text.encode("ascii")):
        digest.update(part)
    return RenderOutput(steps, green, escape_ppm, green_ppm, text, digest.hexdigest())
