import warnings

import numpy as np
import pytest

from conftest import write_grid_csv, write_histogram_csv, write_hrep_json
from funtfplots.heatmap import main as heatmap_main
from funtfplots.heatmap import plot_heatmap
from funtfplots.histogram_grid import main as grid_main
from funtfplots.histogram_grid import plot_histogram_grid
from funtfplots.io import FormatError, read_hrep
from funtfplots.polytope2d import contains, main as polytope_main
from funtfplots.polytope2d import plot_polytope_region, region_mask

# The (3,5) region in canonical coordinates reduces to five inequalities.
def reduced_35(y1, y2):
    return (
        1.0 <= y1 <= 5.0 / 3.0
        and 2.0 / 3.0 <= y2 <= 4.0 / 3.0
        and y2 <= y1
        and y1 - y2 <= 2.0 / 3.0
        and y1 + y2 >= 2.0
    )


NINE = [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (3, 7), (4, 6), (4, 7), (5, 7)]


class TestHistogramGrid:
    def test_nine_panels(self, tmp_path):
        triples = []
        for d, n in NINE:
            p = write_histogram_csv(tmp_path / f"c{d}{n}.csv", d=d, N=n)
            triples.append((d, n, p))
        out = tmp_path / "grid.png"
        fig = plot_histogram_grid(triples, layout=(3, 3), out=out)
        assert out.stat().st_size > 0
        axes = fig.axes
        assert len(axes) == 9
        for (d, n, _), ax in zip(triples, axes):
            assert ax.get_xlim() == (0.0, min(1.0, (n - d) / d))

    def test_single_panel(self, tmp_path):
        p = write_histogram_csv(tmp_path / "c.csv", d=3, N=5)
        fig = plot_histogram_grid([(3, 5, p)], out=tmp_path / "one.png")
        assert len(fig.axes) == 1
        assert fig.axes[0].get_xlim() == (0.0, pytest.approx(2 / 3))

    def test_empty_csv_error_names_file(self, tmp_path):
        p = tmp_path / "hollow.csv"
        p.write_text("")
        with pytest.raises(FormatError, match="hollow.csv"):
            plot_histogram_grid([(3, 5, p)])

    def test_metadata_mismatch_rejected(self, tmp_path):
        p = write_histogram_csv(tmp_path / "c.csv", d=3, N=5)
        with pytest.raises(FormatError, match="panel wants"):
            plot_histogram_grid([(2, 6, p)])

    def test_layout_too_small(self, tmp_path):
        p = write_histogram_csv(tmp_path / "c.csv")
        with pytest.raises(ValueError, match="too small"):
            plot_histogram_grid([(3, 5, p)] * 4, layout=(1, 3))

    def test_no_inputs(self):
        with pytest.raises(ValueError, match="at least one"):
            plot_histogram_grid([])

    def test_cli_reads_dims_from_metadata(self, tmp_path, capsys):
        paths = [
            str(write_histogram_csv(tmp_path / f"c{d}{n}.csv", d=d, N=n))
            for d, n in NINE[:4]
        ]
        out = tmp_path / "grid.png"
        assert grid_main(paths + ["-o", str(out), "--cols", "2"]) == 0
        assert out.stat().st_size > 0
        assert str(out) in capsys.readouterr().out

    def test_cli_missing_input_fails(self, tmp_path, capsys):
        rc = grid_main([str(tmp_path / "gone.csv"), "-o", str(tmp_path / "o.png")])
        assert rc == 1
        assert "gone.csv" in capsys.readouterr().err


class TestPolytopeRegion:
    def test_mask_matches_reduced_system(self, tmp_path):
        h = read_hrep(write_hrep_json(tmp_path / "h.json"))
        # distinct offsets keep grid points away from all facets,
        # including the diagonal one, where a tolerance disagreement
        # would be meaningless
        xs = np.linspace(0.95, 1.72, 61) + 1.7e-4
        ys = np.linspace(0.61, 1.39, 61) + 3.1e-4
        mask = region_mask(h, xs, ys)
        for i, y in enumerate(ys):
            for j, x in enumerate(xs):
                assert mask[i, j] == reduced_35(x, y)

    def test_known_points(self, tmp_path):
        h = read_hrep(write_hrep_json(tmp_path / "h.json"))
        assert contains(h, (1.3, 1.2))
        assert contains(h, (1.589, 1.009))
        assert contains(h, (1.361, 0.711))
        assert not contains(h, (1.0, 1.5))
        assert not contains(h, (0.9, 0.9))

    def test_renders_with_labels(self, tmp_path):
        h = read_hrep(write_hrep_json(tmp_path / "h.json"))
        out = tmp_path / "region.png"
        fig = plot_polytope_region(h, out=out)
        assert out.stat().st_size > 0
        ax = fig.axes[0]
        assert ax.get_xlabel() == "mu[2,1]"
        assert ax.get_ylabel() == "mu[3,2]"

    def test_rejects_wrong_dimensionality(self, tmp_path):
        h = read_hrep(write_hrep_json(tmp_path / "h.json"))
        h["A"] = np.hstack([h["A"], np.zeros((7, 1))])
        with pytest.raises(ValueError, match="2-D"):
            plot_polytope_region(h)

    def test_window_from_simple_bounds_when_no_box(self, tmp_path):
        h = read_hrep(write_hrep_json(tmp_path / "h.json"))
        del h["box"]
        fig = plot_polytope_region(h, out=tmp_path / "r.png")
        # rows 2 and 6/7 of the H-rep bound both coordinates, so the
        # window must still cover the full region
        assert fig.axes[0].get_xlim()[1] >= 5 / 3

    def test_cli(self, tmp_path, capsys):
        p = write_hrep_json(tmp_path / "h.json")
        out = tmp_path / "region.png"
        assert polytope_main([str(p), "-o", str(out)]) == 0
        assert out.stat().st_size > 0


class TestHeatmap:
    def test_renders_in_range_grid(self, tmp_path):
        rng = np.random.default_rng(11)
        m = rng.uniform(0.2, 0.6, (8, 8))
        p = write_grid_csv(tmp_path / "g.csv", m)
        out = tmp_path / "map.png"
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            fig = plot_heatmap(p, out=out)
        assert out.stat().st_size > 0
        im = fig.axes[0].get_images()[0]
        assert im.get_clim() == (0.0, pytest.approx(2 / 3))

    def test_values_above_cap_warn(self, tmp_path):
        m = np.full((4, 4), 0.5)
        m[2, 2] = 0.7
        p = write_grid_csv(tmp_path / "g.csv", m)
        with pytest.warns(UserWarning, match="exceed the coherence bound"):
            plot_heatmap(p, out=tmp_path / "map.png")

    def test_constant_grid(self, tmp_path):
        p = write_grid_csv(tmp_path / "g.csv", np.full((5, 5), 0.4))
        fig = plot_heatmap(p, out=tmp_path / "map.png")
        assert fig.axes[0].get_images()[0].get_clim() == (0.0, pytest.approx(2 / 3))

    def test_non_square_rejected(self, tmp_path):
        p = write_grid_csv(tmp_path / "g.csv", np.zeros((2, 3)))
        with pytest.raises(ValueError, match="square"):
            plot_heatmap(p)

    def test_malformed_csv(self, tmp_path):
        p = tmp_path / "g.csv"
        p.write_text("0.1,0.2\n")
        with pytest.raises(FormatError, match="metadata"):
            plot_heatmap(p)

    def test_cap_falls_back_to_dims(self, tmp_path):
        m = np.full((3, 3), 0.2)
        p = tmp_path / "g.csv"
        lines = ["# kind=fiber_heatmap d=4 N=7 mu=1,1,1,1,1,1 grid=3"]
        lines += [",".join(repr(float(v)) for v in row) for row in m]
        p.write_text("\n".join(lines) + "\n")
        fig = plot_heatmap(p, out=tmp_path / "map.png")
        assert fig.axes[0].get_images()[0].get_clim() == (0.0, 0.75)

    def test_cli(self, tmp_path, capsys):
        p = write_grid_csv(tmp_path / "g.csv", np.full((4, 4), 0.3))
        out = tmp_path / "map.png"
        assert heatmap_main([str(p), "-o", str(out)]) == 0
        assert out.stat().st_size > 0
