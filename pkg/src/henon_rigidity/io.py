"""JSON and CSV shapes used by the command line.

Complex numbers are written as ``[re, im]``; plain numbers are accepted on
input. A map-spec is either

    {"degree": d, "coeffs": [a_0, ..., a_{d-2}], "delta": delta}

or ``{"general_coeffs": [c_0, ..., c_d], "delta": delta}``, which is brought
to monic centered form on load.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from .henon import GeneralHenon, MonicCenteredHenon, normalize
from .rigidity import RigidityParams

__all__ = [
    "encode_complex",
    "decode_complex",
    "map_from_dict",
    "map_to_dict",
    "pair_from_dict",
    "pair_to_dict",
    "read_json",
    "load_map",
    "load_pair",
    "load_points",
    "points_csv",
]


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(v: Any) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    if isinstance(v, (int, float)):
        return complex(v)
    raise ValueError(f"cannot read {v!r} as a complex number")


def map_from_dict(spec: dict) -> MonicCenteredHenon:
    if "delta" not in spec:
        raise ValueError("map-spec needs 'delta'")
    delta = decode_complex(spec["delta"])
    if "general_coeffs" in spec:
        general = GeneralHenon(tuple(decode_complex(c) for c in spec["general_coeffs"]), delta)
        return normalize(general)[0]
    if "coeffs" not in spec:
        raise ValueError("map-spec needs 'coeffs' or 'general_coeffs'")
    coeffs = tuple(decode_complex(c) for c in spec["coeffs"])
    degree = int(spec.get("degree", len(coeffs) + 1))
    return MonicCenteredHenon(degree, coeffs, delta)


def map_to_dict(hmap: MonicCenteredHenon) -> dict:
    return {
        "degree": hmap.degree,
        "coeffs": [encode_complex(c) for c in hmap.coeffs],
        "delta": encode_complex(hmap.delta),
    }


def pair_from_dict(spec: dict) -> tuple[MonicCenteredHenon, MonicCenteredHenon, RigidityParams]:
    for key in ("H", "F", "alpha_index", "gamma_index"):
        if key not in spec:
            raise ValueError(f"pair-spec needs {key!r}")
    H = map_from_dict(spec["H"])
    F = map_from_dict(spec["F"])
    params = RigidityParams(H.degree, int(spec["alpha_index"]), int(spec["gamma_index"]))
    return H, F, params


def pair_to_dict(H: MonicCenteredHenon, F: MonicCenteredHenon, params: RigidityParams) -> dict:
    return {
        "H": map_to_dict(H),
        "F": map_to_dict(F),
        "alpha_index": params.alpha_index,
        "gamma_index": params.gamma_index,
    }


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_map(path: str | Path) -> MonicCenteredHenon:
    return map_from_dict(read_json(path))


def load_pair(path: str | Path):
    return pair_from_dict(read_json(path))


def load_points(path: str | Path) -> list[tuple[complex, complex]]:
    """A JSON list of ``[x, y]`` points, each coordinate complex."""
    data = read_json(path)
    if not isinstance(data, list):
        raise ValueError("points file must hold a JSON list")
    out = []
    for item in data:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValueError(f"points are [x, y] pairs, got {item!r}")
        out.append((decode_complex(item[0]), decode_complex(item[1])))
    return out


def points_csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
