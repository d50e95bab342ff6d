import json

import pytest

from henon_rigidity import cli
from henon_rigidity.cli import run_command
from henon_rigidity.errors import DomainError
from henon_rigidity.io import decode_complex, map_from_dict, map_to_dict, pair_from_dict


@pytest.fixture
def quad_file(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(json.dumps({"degree": 2, "coeffs": [[0, 0]], "delta": [1, 0]}))
    return str(path)


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "h3.json"
    path.write_text(json.dumps({"degree": 3, "coeffs": [[0.3, 0.1], [-0.2, 0.5]], "delta": [1.1, 0.2]}))
    return str(path)


def test_complex_decoding():
    assert decode_complex([1, 2]) == 1 + 2j
    assert decode_complex(3) == 3
    assert decode_complex("1-2j") == 1 - 2j
    with pytest.raises(ValueError):
        decode_complex([1, 2, 3])


def test_map_roundtrip():
    spec = {"degree": 3, "coeffs": [[0.5, -1], [0, 2]], "delta": [0.25, 0]}
    h = map_from_dict(spec)
    assert h.coeffs == (0.5 - 1j, 2j) and map_from_dict(map_to_dict(h)) == h
    general = map_from_dict({"general_coeffs": [0, 4, 2], "delta": 1})
    assert general.degree == 2 and abs(general.coeffs[0]) < 1e-14
    with pytest.raises(ValueError):
        map_from_dict({"coeffs": [0]})
    with pytest.raises(ValueError):
        pair_from_dict({"H": spec})


def test_q_poly_worked_example(quad_file, capsys):
    assert run_command(["q-poly", "--map", quad_file, "--order", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["Q"] == [[1.0, 0.0], [0.0, 0.0], [0.25, 0.0]]
    assert out["L"][1] == [-0.25, 0.0] and out["D"][1] == [0.25, 0.0]
    assert run_command(["q-poly", "--map", quad_file, "--order", "2"]) == 2


def test_series_csv(quad_file, capsys):
    assert run_command(["series", "--map", quad_file, "--order", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,L_re,L_im,D_re,D_im"
    assert lines[5] == "5,-0.21875,0.0,0.09375,0.0"


def test_partner_verify_roundtrip(cubic_file, tmp_path, capsys):
    prefix = str(tmp_path / "pp")
    assert run_command(["partner", "--map", cubic_file, "--alpha-index", "3", "--gamma-index", "1", "--out", prefix]) == 0
    pair = json.loads((tmp_path / "pp.pair.json").read_text())
    assert pair["alpha_index"] == 3 and pair["gamma_index"] == 1
    assert json.loads((tmp_path / "pp.map.json").read_text()) == pair["F"]
    assert run_command(["verify", "--pair", prefix + ".pair.json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["overall"] is True and set(report["checks"][0]) == {"name", "max_residual", "tolerance", "passed"}


def test_verify_negative_control(cubic_file, tmp_path, capsys):
    prefix = str(tmp_path / "pp")
    run_command(["partner", "--map", cubic_file, "--alpha-index", "2", "--out", prefix])
    pair = json.loads((tmp_path / "pp.pair.json").read_text())
    pair["F"]["coeffs"][1][1] += 1e-3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(pair))
    capsys.readouterr()
    assert run_command(["verify", "--pair", str(bad)]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["overall"] is False


def test_green_command(quad_file, tmp_path, capsys):
    assert run_command(["green", "--map", quad_file, "--point", "0", "1e6"]) == 0
    row = capsys.readouterr().out.splitlines()[1].split(",")
    assert float(row[4]) == pytest.approx(13.815510557964274, abs=1e-12)
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[[0, 0], [0, 0]], [[1, 0], [5, 0]]]))
    assert run_command(["green", "--map", quad_file, "--points", str(pts)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and float(lines[1].split(",")[4]) == 0.0
    assert run_command(["green", "--map", quad_file]) == 2


def test_deck_check_command(cubic_file, capsys):
    assert run_command(["deck-check", "--map", cubic_file, "--samples", "20"]) == 0
    assert json.loads(capsys.readouterr().out)["overall"] is True


def test_render_command(quad_file, tmp_path, capsys):
    sl = tmp_path / "s.json"
    sl.write_text(json.dumps({"base": [0, 0], "dir_u": [1, 0], "dir_v": [0, 1], "bounds": [-3, 3, -3, 3], "resolution": [16, 12]}))
    prefix = str(tmp_path / "img")
    assert run_command(["render", "--map", quad_file, "--slice", str(sl), "--max-iter", "20", "--out", prefix, "--png"]) == 0
    digest = capsys.readouterr().out.strip()
    assert len(digest) == 64
    for suffix in ("_escape.ppm", "_green.ppm", ".csv", "_escape.png", "_green.png"):
        assert (tmp_path / f"img{suffix}").stat().st_size > 0
    assert run_command(["render", "--map", quad_file, "--slice", str(sl), "--out", prefix, "--threads", "4", "--max-iter", "20"]) == 0
    assert capsys.readouterr().out.strip() == digest


def test_usage_errors(quad_file, tmp_path):
    assert run_command([]) == 2
    assert run_command(["nonsense"]) == 2
    assert run_command(["verify"]) == 2
    assert run_command(["q-poly", "--map", str(tmp_path / "missing.json")]) == 2
    assert run_command(["q-poly", "--map", quad_file, "--order", "x"]) == 2


def test_domain_error_exit_code(quad_file, monkeypatch):
    def boom(args):
        raise DomainError("outside")

    monkeypatch.setitem(cli.COMMANDS, "green", (boom, ""))
    assert run_command(["green", "--map", quad_file, "--point", "0", "0"]) == 3
