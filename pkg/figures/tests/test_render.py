import pytest

from bellfigs import FigureSpec, SchemaError, depth_bands, read_rows, render

SWEEP_HEADER = ("n,u,qfi,qfi_over_sn,e_full,depth,bound_coherence,"
                "bound_correlator_sum,heisenberg_floor,delta_theta,error")
DERIV_HEADER = "n,u,dqfi_d_abs_u,e_full,bell_onset_flag,error"


def sweep_csv(tmp_path, name="sweep.csv"):
    rows = [
        "6,-3,34.0,5.667,0.21,6,34.0,33.0,18.0,0.17,",
        "6,-2.5,33.0,5.5,0.19,6,33.0,32.0,18.0,0.17,",
        "6,-2,31.0,5.17,0.14,6,31.0,30.0,18.0,0.18,",
        "6,-1.5,24.0,4.0,0.08,5,24.0,23.0,9.0,0.2,",
        "6,-1,14.0,2.33,0.03,4,14.0,13.0,4.5,0.27,",
        "6,-0.5,8.0,1.33,0.008,0,8.0,7.5,0.0,0.35,",
        "6,0,6.0,1.0,0.000244140625,0,6.0,6.0,0.0,0.41,",
    ]
    path = tmp_path / name
    path.write_text("# schema=1\n" + SWEEP_HEADER + "\n" + "\n".join(rows) + "\n")
    return path


def derivative_csv(tmp_path, name="deriv.csv"):
    rows = [
        "100,-2,1200.0,0.01,0,",
        "100,-1.5,8000.0,0.0001,0,",
        "100,-1.1,20000.0,1e-12,0,",
        "100,-1.0,9000.0,1e-29,1,",
        "100,-0.5,400.0,1e-33,0,",
        "100,0,1.0,1e-35,0,",
    ]
    path = tmp_path / name
    path.write_text("# schema=1\n" + DERIV_HEADER + "\n" + "\n".join(rows) + "\n")
    return path


class TestRender:
    def test_ising_depth_figure(self, tmp_path):
        out = tmp_path / "fig.svg"
        render(FigureSpec((str(sweep_csv(tmp_path)),), "ising_depth", str(out)))
        assert out.exists() and out.stat().st_size > 0
        assert b"<svg" in out.read_bytes()

    def test_twomode_depth_figure(self, tmp_path):
        out = tmp_path / "fig.svg"
        render(FigureSpec((str(sweep_csv(tmp_path)),), "twomode_depth", str(out)))
        assert out.exists()

    def test_derivative_figure_with_onset_marker(self, tmp_path):
        out = tmp_path / "fig.svg"
        render(FigureSpec((str(derivative_csv(tmp_path)),), "derivative", str(out)))
        body = out.read_text()
        assert "Bell onset" in body

    def test_png_output(self, tmp_path):
        out = tmp_path / "fig.png"
        render(FigureSpec((str(sweep_csv(tmp_path)),), "ising_depth", str(out)))
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_multiple_csvs_overlay(self, tmp_path):
        first = sweep_csv(tmp_path, "a.csv")
        second = tmp_path / "b.csv"
        second.write_text(first.read_text().replace("6,", "8,"))
        out = tmp_path / "fig.svg"
        render(FigureSpec((str(first), str(second)), "ising_depth", str(out)))
        body = out.read_text()
        assert "N = 6" in body and "N = 8" in body

    def test_empty_csv_no_output_file(self, tmp_path):
        bad = tmp_path / "empty.csv"
        bad.write_text("# schema=1\n" + SWEEP_HEADER + "\n")
        out = tmp_path / "fig.svg"
        with pytest.raises(SchemaError):
            render(FigureSpec((str(bad),), "ising_depth", str(out)))
        assert not out.exists()

    def test_unknown_kind_rejected(self, tmp_path):
        with pytest.raises(SchemaError):
            FigureSpec((str(sweep_csv(tmp_path)),), "scatter", "out.svg")

    def test_rerender_is_byte_identical(self, tmp_path):
        csv = sweep_csv(tmp_path)
        outs = [tmp_path / "one.svg", tmp_path / "two.svg"]
        for out in outs:
            render(FigureSpec((str(csv),), "ising_depth", str(out)))
        assert outs[0].read_bytes() == outs[1].read_bytes()


class TestDepthBands:
    def test_edges_exactly_at_reported_transitions(self, tmp_path):
        rows = read_rows(sweep_csv(tmp_path), "ising_depth")
        bands = depth_bands(rows)
        # depths in the file: 6 down to |u|=2, 5 at 1.5, 4 at 1.0, 0 after
        assert bands[6] == (2.0, 3.0)
        assert bands[5] == (1.5, 3.0)
        assert bands[4] == (1.0, 3.0)
        # every edge coincides with a |u| value present in the CSV
        csv_us = {abs(r["u"]) for r in rows}
        for lo, hi in bands.values():
            assert lo in csv_us and hi in csv_us

    def test_bands_are_nested(self, tmp_path):
        rows = read_rows(sweep_csv(tmp_path), "ising_depth")
        bands = depth_bands(rows)
        levels = sorted(bands)
        for shallow, deep in zip(levels, levels[1:]):
            lo_s, hi_s = bands[shallow]
            lo_d, hi_d = bands[deep]
            assert lo_s <= lo_d and hi_d <= hi_s
