import math
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cechscale import cli, io
from cechscale.complex import build_complex
from cechscale.geometry import DiskSystem
from cechscale.oracle import oracle_cech_scale
from cechscale.render import render_svg

from conftest import equilateral, reference_triple

DATA = Path(__file__).parent / "data"
SVG = "{http://www.w3.org/2000/svg}"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def report(text):
    return dict(line.split("=", 1) for line in text.splitlines())


def test_disk_round_trip():
    m = DiskSystem.from_arrays([(0.1, -2.5), (1e-7, 3.141592653589793)], [0.3, 12345.678])
    back = io.parse_disks(io.format_disks(m))
    np.testing.assert_array_equal(back.centers, m.centers)
    np.testing.assert_array_equal(back.radii, m.radii)


@settings(max_examples=100)
@given(st.lists(st.tuples(st.decimals(-1e6, 1e6, places=6), st.decimals(-1e6, 1e6, places=6),
                          st.decimals("0.000001", 1e6, places=6)), min_size=1, max_size=8))
def test_round_trip_decimal_text(rows):
    text = "dim=2\n" + "".join(f"{x},{y},{r}\n" for x, y, r in rows)
    m = io.parse_disks(text)
    again = io.parse_disks(io.format_disks(m))
    np.testing.assert_array_equal(again.centers, m.centers)
    np.testing.assert_array_equal(again.radii, m.radii)
    np.testing.assert_array_equal(m.radii, [float(str(r)) for _, _, r in rows])


def test_read_write_files(tmp_path):
    io.write_disks(equilateral(), tmp_path / "eq.disks")
    back = io.read_disks(tmp_path / "eq.disks")
    np.testing.assert_array_equal(back.centers, equilateral().centers)


def test_parse_comments_and_blank_lines():
    m = io.parse_disks((DATA / "line.disks").read_text())
    assert len(m) == 3 and m.dim == 2


@pytest.mark.parametrize("text, line", [
    ("", 0),
    ("0,0,1\n", 1),
    ("dim=2\n0,0,1\n0,1\n", 3),
    ("dim=2\n0,0,-1\n", 2),
    ("dim=2\n0,0,0\n", 2),
    ("dim=2\n0,x,1\n", 2),
    ("dim=2\n0,nan,1\n", 2),
    ("dim=0\n", 1),
    ("dim=2\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(io.ParseError) as exc:
        io.parse_disks(text)
    assert exc.value.line == line


def test_parse_points():
    np.testing.assert_array_equal(io.parse_points("0 0\n1,2\n"), [[0, 0], [1, 2]])
    assert io.parse_points("dim=3\n1 2 3\n").shape == (1, 3)
    with pytest.raises(io.ParseError):
        io.parse_points("1 2\n1 2 3\n")
    with pytest.raises(io.ParseError):
        io.parse_points("# nothing\n")


def test_filtration_golden():
    m = io.read_disks(DATA / "line.disks")
    assert io.format_filtration(build_complex(m, 2.0, 2)) == (DATA / "line.filtration").read_text()


def test_filtration_parse_and_check():
    steps = io.parse_filtration((DATA / "line.filtration").read_text())
    assert steps[-1] == ((0, 1, 2), 2.0)
    assert io.check_filtration(steps) == []
    bad = [((0,), 0.0), ((0, 1), 1.0), ((1,), 0.0), ((1,), 0.5)]
    problems = io.check_filtration(bad)
    assert any("before its face" in p for p in problems)
    assert any("below previous" in p for p in problems)
    assert any("duplicate" in p for p in problems)
    with pytest.raises(io.ParseError):
        io.parse_filtration("0 1 1.0\n")
    with pytest.raises(io.ParseError):
        io.parse_filtration("1 0;1.0\n")


def test_cli_cech_scale(tmp_path, capsys):
    path = write(tmp_path, "eq.disks", io.format_disks(equilateral()))
    assert cli.main(["cech-scale", path]) == cli.EXIT_OK
    out = report(capsys.readouterr().out)
    assert float(out["cech_scale"]) == pytest.approx(2 / math.sqrt(3), abs=1e-11)
    assert float(out["rips_scale"]) == pytest.approx(1.0, abs=1e-12)
    assert out["bisection_calls"] == "1"
    assert cli.main(["cech-scale", "--naive", path]) == cli.EXIT_OK
    assert report(capsys.readouterr().out)["cech_scale"] == out["cech_scale"]


def test_cli_reference_triple(tmp_path, capsys):
    path = write(tmp_path, "ex.disks", io.format_disks(reference_triple()))
    assert cli.main(["cech-scale", path]) == cli.EXIT_OK
    value = float(report(capsys.readouterr().out)["cech_scale"])
    assert value == pytest.approx(oracle_cech_scale(reference_triple()).scale, abs=1e-9)


def test_cli_single_disk(tmp_path, capsys):
    path = write(tmp_path, "one.disks", "dim=2\n3,4,2\n")
    assert cli.main(["cech-scale", path]) == cli.EXIT_OK
    out = report(capsys.readouterr().out)
    assert out["cech_scale"] == "0" and out["witness"] == "3,4"


@pytest.mark.parametrize("text, code", [
    ("dim=2\n0,0,-1\n", cli.EXIT_PARSE),
    ("dim=2\n0,0\n", cli.EXIT_PARSE),
    ("dim=3\n0,0,0,1\n1,0,0,1\n", cli.EXIT_DIMENSION),
])
def test_cli_exit_codes(tmp_path, capsys, text, code):
    path = write(tmp_path, "bad.disks", text)
    assert cli.main(["cech-scale", path]) == code
    err = capsys.readouterr().err
    assert err.startswith("error:")
    if code == cli.EXIT_PARSE:
        assert "line 2" in err


def test_cli_missing_file(capsys):
    assert cli.main(["cech-scale", "/nonexistent/file"]) == cli.EXIT_PARSE


def test_cli_filtration(tmp_path, capsys):
    out = tmp_path / "f.txt"
    assert cli.main(["filtration", str(DATA / "line.disks"), "--lambda", "2", "--out", str(out)]) == 0
    assert out.read_text() == (DATA / "line.filtration").read_text()
    assert cli.main(["filtration", str(DATA / "line.disks"), "--lambda", "0"]) == 0
    assert capsys.readouterr().out == "0;0\n1;0\n2;0\n"
    assert cli.main(["filtration", str(DATA / "tetra.disks"), "--lambda", "1"]) == cli.EXIT_DIMENSION


def test_cli_skeleton2(tmp_path, capsys):
    assert cli.main(["skeleton2", str(DATA / "tetra.disks"), "--lambda", "1.2"]) == 0
    text = capsys.readouterr().out
    assert text == (DATA / "tetra.skeleton2").read_text()
    assert [line.split(";")[1] for line in text.splitlines()][-4:] == ["1.15470053838"] * 4
    assert cli.main(["skeleton2", str(DATA / "line.disks"), "--lambda", "2"]) == 0
    assert capsys.readouterr().out == (DATA / "line.filtration").read_text()
    assert cli.main(["skeleton2", str(DATA / "tetra.disks"), "--lambda", "0"]) == 0
    assert capsys.readouterr().out == "0;0\n1;0\n2;0\n3;0\n"


def test_cli_check_filtration(tmp_path, capsys):
    assert cli.main(["check-filtration", str(DATA / "line.filtration")]) == cli.EXIT_OK
    bad = write(tmp_path, "bad.txt", "0 1;1\n0;0\n")
    assert cli.main(["check-filtration", bad]) == cli.EXIT_CHECK_FAILED
    assert "before its face" in capsys.readouterr().out
    junk = write(tmp_path, "junk.txt", "0;0\nfoo\n")
    assert cli.main(["check-filtration", junk]) == cli.EXIT_PARSE


@pytest.mark.parametrize("points, center, radius", [
    ("0 0\n", (0, 0), 0.0),
    ("0,0\n4,0\n", (2, 0), 2.0),
    ("0 0\n2 0\n1 1.7320508075688772\n", (1, 1 / math.sqrt(3)), 2 / math.sqrt(3)),
])
def test_cli_miniball(tmp_path, capsys, points, center, radius):
    assert cli.main(["miniball", write(tmp_path, "p.txt", points)]) == 0
    out = report(capsys.readouterr().out)
    np.testing.assert_allclose([float(x) for x in out["center"].split(",")], center, atol=1e-9)
    assert float(out["radius"]) == pytest.approx(radius, abs=1e-9)


def test_cli_miniball_errors(tmp_path):
    assert cli.main(["miniball", write(tmp_path, "p.txt", "1 2 3\n")]) == cli.EXIT_DIMENSION
    assert cli.main(["miniball", write(tmp_path, "q.txt", "1 x\n")]) == cli.EXIT_PARSE


def test_render_svg(tmp_path):
    svg = tmp_path / "eq.svg"
    path = write(tmp_path, "eq.disks", io.format_disks(equilateral()))
    assert cli.main(["render", path, "--scale", "1.2", "--out", str(svg)]) == 0
    root = ET.parse(svg).getroot()
    circles = root.findall(f"{SVG}circle")
    kinds = [c.get("class") for c in circles]
    assert kinds.count("disk") == 3 and kinds.count("center") == 3 and kinds.count("witness") == 1
    assert float(circles[0].get("r")) == pytest.approx(1.2)
    witness = [c for c in circles if c.get("class") == "witness"][0]
    assert float(witness.get("cx")) == pytest.approx(1.0, abs=1e-9)


def test_render_no_witness_below_cech_scale():
    root = ET.fromstring(render_svg(equilateral(), 1.1))
    assert all(c.get("class") != "witness" for c in root.iter(f"{SVG}circle"))
    with pytest.raises(ValueError):
        render_svg(DiskSystem.from_arrays(np.eye(3), [1, 1, 1]), 1.0)


def test_cli_bench(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert cli.main(["bench", "--max-disks", "20", "--step", "10", "--repeats", "1", "--dims", "3,5",
                     "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "kind,size,algorithm,mean_seconds"
    assert [line.rsplit(",", 1)[0] for line in lines[1:]] == [
        "n_disks,10,naive", "n_disks,10,triplets", "n_disks,20,naive", "n_disks,20,triplets",
        "dim,3,skeleton2-preprocess", "dim,5,skeleton2-preprocess"]


def test_threads_env_overrides_flag(monkeypatch):
    args = cli.build_parser().parse_args(["--threads", "3", "miniball", "x"])
    assert cli._threads(args) == 3
    monkeypatch.setenv(cli.THREADS_ENV, "2")
    assert cli._threads(args) == 2
    monkeypatch.setenv(cli.THREADS_ENV, "many")
    with pytest.raises(cli.UsageError):
        cli._threads(args)


def test_cli_threads_flag(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "2")
    path = write(tmp_path, "eq.disks", io.format_disks(equilateral()))
    assert cli.main(["cech-scale", path]) == 0
    monkeypatch.delenv(cli.THREADS_ENV)
    assert cli.main(["--threads", "1", "cech-scale", path]) == 0
    a, b = capsys.readouterr().out.split("status=RootFound\n")[:2]
    assert a == b


def test_cli_usage_errors():
    with pytest.raises(SystemExit):
        cli.main(["filtration", "x", "--lambda", "-1"])
    with pytest.raises(SystemExit):
        cli.main(["filtration", "x", "--lambda", "1", "--max-dim", "0"])
