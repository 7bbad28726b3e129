import json

import pytest

from newtonpoly.cli import main
from newtonpoly.errors import Unrenderable
from newtonpoly.polygon import EMPTY, INF, make_elementary, polygon_sum
from newtonpoly.render import render_ascii, render_svg


class TestAsciiRender:
    def test_staircase_golden(self):
        expected = (
            "exp y\n"
            "  1 | *  .  .\n"
            "  0 | .  .  *\n"
            "    +----------\n"
            "      0  1  2\n"
            "      (exp x)\n"
            "vertices: (0,1) (2,0)\n"
        )
        assert render_ascii(make_elementary(2, 1)) == expected

    def test_empty_polygon(self):
        out = render_ascii(EMPTY)
        assert "vertices: (none)" in out

    def test_vertical_ray(self):
        out = render_ascii(make_elementary(2, INF))
        assert "vertical ray at x = 2" in out

    def test_deterministic(self):
        p = polygon_sum(make_elementary(1, 2), make_elementary(3, 1))
        assert render_ascii(p) == render_ascii(p)

    def test_unrenderable(self):
        p = polygon_sum(make_elementary(1, INF), make_elementary(INF, 1))
        with pytest.raises(Unrenderable):
            render_ascii(p)


class TestSvgRender:
    def test_structure(self):
        out = render_svg([make_elementary(2, 1)])
        assert out.startswith('<?xml version="1.0"')
        assert "<svg" in out and out.rstrip().endswith("</svg>")
        assert "exp y" in out and "exp x" in out
        assert "(0,1)" in out and "(2,0)" in out

    def test_overlay_with_shading(self):
        special = polygon_sum(make_elementary(8, 2), make_elementary(48, 6))
        generic = make_elementary(56, 7)
        out = render_svg([special, generic], shade_between=True)
        assert "fill-opacity" in out
        assert out == render_svg([special, generic], shade_between=True)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCli:
    def test_polygon_sum_json(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "polygon", "sum",
            '{"edges":[{"l":2,"h":1}]}',
            '{"edges":[{"l":3,"h":2}]}',
            "--json",
        )
        assert code == 0
        assert json.loads(out) == {
            "x_offset": 0,
            "y_offset": 0,
            "edges": [{"l": 3, "h": 2}, {"l": 2, "h": 1}],
        }

    def test_polygon_round_trip_via_cli(self, capsys):
        code, out, _ = run_cli(capsys, "polygon", "sum", "{2/1}", "{1/2}")
        assert code == 0 and out.strip() == "{1/2}+{2/1}"

    def test_curve_merle_report(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "merle", "<4,6,13>", "--report", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["report"]["mu_n"] == 16
        assert payload["pairs"] == [[5, 1], [11, 2]]

    def test_report_schema(self, capsys):
        jsonschema = pytest.importorskip("jsonschema")
        import pathlib

        code, out, _ = run_cli(capsys, "curve", "merle", "<2,3>", "--report", "--json")
        assert code == 0
        base = pathlib.Path(__file__).parent.parent / "docs"
        schema = json.loads((base / "report.schema.json").read_text())
        schema["properties"]["polygon"] = json.loads((base / "polygon.schema.json").read_text())
        jsonschema.validate(json.loads(out), schema)

    def test_curve_invert(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "invert", "{5/1}+{11/2}")
        assert code == 0 and out.strip() == "<4,6,13>"

    def test_series_polygon(self, capsys):
        code, out, _ = run_cli(capsys, "series", "polygon", "y^2 - x^3")
        assert code == 0 and out.strip() == "{3/2}"

    def test_puiseux_expand(self, capsys):
        code, out, _ = run_cli(capsys, "puiseux", "expand", "y^2 - x^3", "--precision", "6")
        assert code == 0
        assert out.splitlines()[0].startswith("x = t^2; y = t^3")

    def test_precision_env(self, capsys, monkeypatch):
        monkeypatch.setenv("NEWTONPOLY_PRECISION", "5")
        code, out, _ = run_cli(capsys, "puiseux", "expand", "y^2 - x^3")
        assert code == 0 and "O(t^" in out

    def test_domain_error_exit_1(self, capsys):
        code, _, err = run_cli(capsys, "polygon", "decompose", "{1/inf}")
        assert code == 1
        assert "NotFiniteVolume" in err

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "series", "polygon", "y +* x")
        assert code == 2
        assert "parse error" in err

    def test_usage_error_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["polygon", "frobnicate", "{1/1}"])
        assert exc.value.code == 2

    def test_dual_degree(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "dual-degree", "3", "2",
                               "--singularities", "2,1")
        assert code == 0 and out.strip() == "3"

    def test_bs_example(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "bs-example", "4", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["dominates"] is True

    def test_verify_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "dual-degree", "--seed", "7")
        assert code == 0
        assert out.count("[PASS]") == 3

    def test_render_svg_deterministic(self, capsys):
        code1, out1, _ = run_cli(capsys, "polygon", "render", "{2/1}", "--format", "svg")
        code2, out2, _ = run_cli(capsys, "polygon", "render", "{2/1}", "--format", "svg")
        assert code1 == code2 == 0 and out1 == out2
