import json
from pathlib import Path

import pytest

from minlink.cli import run
from minlink.geom import PolyCurve
from minlink.io import InputError, parse_curve_text, read_curve, write_curve
from minlink.oracles import brute_vr_frechet

FIX = Path(__file__).parent / "fixtures"
ZIG = str(FIX / "zigzag.json")


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_simplify_vertex_frechet(capsys):
    assert run(["simplify", "--variant", "vertex-frechet", "--delta", "0.5", "--input", ZIG, "--oracle"]) == 0
    rep = _json_out(capsys)
    assert rep["link_count"] == brute_vr_frechet(read_curve(ZIG), 0.5) == rep["oracle_link_count"]
    assert rep["global_distance"] <= 0.5 + 1e-6
    assert all(d <= 0.5 + 1e-6 for d in rep["link_distances"])


@pytest.mark.parametrize("variant,extra", [("vertex-hausdorff", []),
                                           ("nonrestricted-frechet", ["--eps", "0.5"])])
def test_simplify_other_variants(capsys, variant, extra):
    assert run(["simplify", "--variant", variant, "--delta", "0.5", "--input", ZIG, *extra]) == 0
    rep = _json_out(capsys)
    assert rep["achieved"] and rep["global_distance"] <= rep["bound"] + 1e-6
    assert all(d <= rep["bound"] + 1e-6 for d in rep["link_distances"])


def test_simplify_curve1d(tmp_path, capsys):
    f = tmp_path / "c.csv"
    write_curve(f, [(0,), (0.4,), (0,), (0.4,), (5,)])
    assert run(["simplify", "--variant", "curve1d", "--delta", "0.5", "--input", str(f)]) == 0
    rep = _json_out(capsys)
    assert rep["link_count"] == 1 and rep["global_distance"] <= 0.5 + 1e-6
    assert run(["simplify", "--variant", "curve1d", "--delta", "0.5", "--input", ZIG]) == 2


def test_input_errors(tmp_path, capsys):
    assert run(["simplify", "--variant", "vertex-frechet", "--delta", "1", "--input", "nope.json"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["frechet", "--a", str(bad), "--b", ZIG]) == 2
    assert run(["simplify", "--variant", "vertex-frechet", "--delta", "-1", "--input", ZIG]) == 2
    assert run(["simplify", "--variant", "nonrestricted-frechet", "--delta", "1", "--input", ZIG]) == 2
    assert run(["simplify", "--bogus"]) == 2
    assert "error" in capsys.readouterr().err


def test_frechet_self_is_zero(capsys):
    seg = str(FIX / "seg.json")
    assert run(["frechet", "--a", seg, "--b", seg]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0, abs=1e-8)


def test_gadget_gen_and_solve(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["gadget", "gen", "--set", "1,2,4", "--target", "6", "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["gadget", "solve", "--in", str(out)]) == 0
    res = _json_out(capsys)
    assert res["solvable"] and res["subset"] == [2, 4] and res["verified"]
    # the float vertices make the gadget file readable as an ordinary curve
    assert read_curve(out).n == 64


def test_gadget_errors(tmp_path, capsys):
    assert run(["gadget", "gen", "--set", "1,20", "--target", "3"]) == 2
    assert run(["gadget", "gen", "--set", "20,1", "--target", "3", "--reorder"]) == 0
    capsys.readouterr()
    assert run(["gadget", "gen", "--set", "a,b", "--target", "3"]) == 2
    out = tmp_path / "g.json"
    assert run(["gadget", "gen", "--set", "2", "--target", "1", "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["gadget", "solve", "--in", str(out)]) == 0
    assert _json_out(capsys)["solvable"] is False


def test_plot_writes_svg(tmp_path, capsys):
    svg = tmp_path / "p.svg"
    assert run(["simplify", "--variant", "vertex-frechet", "--delta", "0.5", "--input", ZIG,
                "--plot", str(svg), "--output", str(tmp_path / "r.json")]) == 0
    assert svg.read_text().lstrip().startswith("<?xml") and "<svg" in svg.read_text()
    simp = tmp_path / "s.json"
    write_curve(simp, [(0, 0), (6, 0)])
    svg2 = tmp_path / "q.svg"
    assert run(["plot", "--input", ZIG, "--simplified", str(simp), "--delta", "1", "--out", str(svg2)]) == 0
    assert "<svg" in svg2.read_text()


def test_selftest(capsys):
    assert run(["selftest", "--count", "3"]) == 0
    assert "9/9" in capsys.readouterr().out


def test_curve_round_trip(tmp_path):
    pts = [(0.1, 2.0), (1.0 / 3.0, -4.5), (7.0, 8.25)]
    for name in ("c.json", "c.csv"):
        write_curve(tmp_path / name, pts)
        assert read_curve(tmp_path / name).vertices == tuple(pts)


def test_parse_errors():
    with pytest.raises(InputError):
        parse_curve_text('{"vertices": [[0, 0], [1]]}', "json")
    with pytest.raises(InputError):
        parse_curve_text('{"vertices": [[0, "x"], [1, 1]]}', "json")
    with pytest.raises(InputError):
        parse_curve_text("x,y\n0,0\n", "csv")
    assert parse_curve_text("x,y\n0,0\n1,1\n", "csv") == PolyCurve(((0.0, 0.0), (1.0, 1.0)))
