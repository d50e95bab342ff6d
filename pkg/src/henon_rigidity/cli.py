"""Command-line front end.

Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as hio
from .bottcher import green_numeric, q_polynomial, y_series, zeta_series
from .deck import deck_property_suite
from .errors import DomainError, SeriesOrderError
from .render import SliceSpec, encode_png, render_slice
from .rigidity import RigidityParams, construct_partner, verify_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _emit(text: str, out: str | None, suffix: str) -> None:
    if out:
        Path(out + suffix).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise _Usage(f"{args.command} needs --{name.replace('_', '-')}")


def cmd_series(args) -> int:
    _need(args, "map")
    hmap = hio.load_map(args.map)
    order = args.order or 2 * hmap.degree
    zs = zeta_series(hmap, order, args.precision)
    ys = y_series(hmap, order, args.precision)
    rows = []
    for k in range(1, order + 1):
        L, D = complex(zs[k]), complex(ys[k])
        rows.append((k, L.real, L.imag, D.real, D.imag))
    _emit(hio.points_csv(rows, ["k", "L_re", "L_im", "D_re", "D_im"]), args.out, ".csv")
    return EXIT_OK


def cmd_q_poly(args) -> int:
    _need(args, "map")
    hmap = hio.load_map(args.map)
    d = hmap.degree
    order = args.order or d + 1
    if order < d + 1:
        raise _Usage(f"q-poly needs --order >= d+1 = {d + 1}")
    q = q_polynomial(hmap, order, args.precision)
    zs = zeta_series(hmap, order, args.precision)
    ys = y_series(hmap, order, args.precision)
    payload = {
        "degree": d,
        "Q": [[1.0, 0.0]] + [hio.encode_complex(q.A(j)) for j in range(d - 1, -1, -1)],
        "L": [hio.encode_complex(zs[k]) for k in range(1, order + 1)],
        "D": [hio.encode_complex(ys[k]) for k in range(1, order + 1)],
    }
    _emit(_dump(payload), args.out, ".json")
    return EXIT_OK


def cmd_partner(args) -> int:
    _need(args, "map")
    hmap = hio.load_map(args.map)
    params = RigidityParams(hmap.degree, args.alpha_index or 0, args.gamma_index or 0)
    partner = construct_partner(hmap, params)
    spec = hio.map_to_dict(partner)
    if args.out:
        Path(args.out + ".map.json").write_text(_dump(spec), encoding="utf-8")
        Path(args.out + ".pair.json").write_text(
            _dump(hio.pair_to_dict(hmap, partner, params)), encoding="utf-8"
        )
    else:
        sys.stdout.write(_dump(spec))
    return EXIT_OK


def cmd_verify(args) -> int:
    _need(args, "pair")
    H, F, params = hio.load_pair(args.pair)
    if F.degree != H.degree:
        raise _Usage("H and F must have the same degree")
    report = verify_pair(H, F, params, args.order, args.tol or 1e-9, args.precision)
    _emit(_dump(report.to_dict()), args.out, ".json")
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_deck_check(args) -> int:
    _need(args, "map")
    hmap = hio.load_map(args.map)
    q = q_polynomial(hmap, args.order, args.precision)
    report = deck_property_suite(q, hmap.delta, samples=args.samples, seed=args.seed, tol=args.tol or 1e-10)
    _emit(_dump(report.to_dict()), args.out, ".json")
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_green(args) -> int:
    _need(args, "map")
    hmap = hio.load_map(args.map)
    if args.points:
        points = hio.load_points(args.points)
    elif args.point:
        points = [(hio.decode_complex(args.point[0]), hio.decode_complex(args.point[1]))]
    else:
        raise _Usage("green needs --points FILE or --point X Y")
    rows = []
    for x, y in points:
        g = green_numeric(hmap, (x, y), tol=args.tol or 1e-13, max_iter=args.max_iter or 200)
        rows.append((x.real, x.imag, y.real, y.imag, g.value, g.error_bound))
    header = ["x_re", "x_im", "y_re", "y_im", "green", "error_bound"]
    _emit(hio.points_csv(rows, header), args.out, ".csv")
    return EXIT_OK


def cmd_render(args) -> int:
    _need(args, "map", "slice", "out")
    hmap = hio.load_map(args.map)
    spec = SliceSpec.from_dict(hio.read_json(args.slice))
    result = render_slice(hmap, spec, args.max_iter or 100, args.radius, args.threads)
    prefix = Path(args.out)
    Path(f"{prefix}_escape.ppm").write_bytes(result.escape_ppm)
    Path(f"{prefix}_green.ppm").write_bytes(result.green_ppm)
    Path(f"{prefix}.csv").write_text(result.csv, encoding="ascii")
    if args.png:
        w, h = spec.resolution
        for layer, ppm in (("escape", result.escape_ppm), ("green", result.green_ppm)):
            Path(f"{prefix}_{layer}.png").write_bytes(encode_png(ppm[-3 * w * h :], w, h))
    sys.stdout.write(result.checksum + "\n")
    return EXIT_OK


COMMANDS = {
    "series": (cmd_series, "emit the L_k and D_k series coefficients as CSV"),
    "q-poly": (cmd_q_poly, "emit Q and the series coefficients as JSON"),
    "partner": (cmd_partner, "build the partner map F from H and root-of-unity indices"),
    "verify": (cmd_verify, "run every applicable check on a pair-spec"),
    "deck-check": (cmd_deck_check, "deck transformation property suite"),
    "green": (cmd_green, "evaluate the Green's function at points"),
    "render": (cmd_render, "escape-time and Green images of a slice"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="henon-rigidity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--map", help="map-spec JSON file")
        p.add_argument("--pair", help="pair-spec JSON file (H, F and the indices)")
        p.add_argument("--order", type=int, help="series order N")
        p.add_argument("--tol", type=float, help="residual tolerance")
        p.add_argument("--max-iter", type=int, help="iteration budget for escape and Green")
        p.add_argument("--alpha-index", type=int, help="alpha = e(a/(d*d-1))")
        p.add_argument("--gamma-index", type=int, help="gamma = e(g/(d-1))")
        p.add_argument("--slice", help="slice-spec JSON file")
        p.add_argument("--out", help="output prefix")
        p.add_argument("--precision", type=int, metavar="BITS", help="compute series with this many bits")
        if name == "green":
            p.add_argument("--points", help="JSON list of [x, y] points")
            p.add_argument("--point", nargs=2, metavar=("X", "Y"), help="a single point; complex literals allowed")
        if name == "render":
            p.add_argument("--threads", type=int, default=1, help="row worker threads")
            p.add_argument("--radius", type=float, help="escape radius (default: filtration radius)")
            p.add_argument("--png", action="store_true", help="also write PNG files")
        if name == "deck-check":
            p.add_argument("--samples", type=int, default=100, help="sample points per check")
            p.add_argument("--seed", type=int, default=0, help="RNG seed for the samples")
    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on bad usage, 0 on --help
        return int(exc.code or 0)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (_Usage, SeriesOrderError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
