"""Image rendering for every figure layout."""
import pytest

from sdgame import ScenarioConfig, reproduce_figure
from sdgame.plotting import render_ecdf, render_figure

CFG = ScenarioConfig(runs=2, master_seed=5)


@pytest.mark.parametrize("figure_id", ["F2", "F3", "F4", "F5", "F6", "F7"])
def test_every_figure_renders(figure_id, tmp_path):
    populations = (150,) if figure_id == "F7" else (100, 200)
    dataset = reproduce_figure(figure_id, CFG, populations=populations)
    path = render_figure(dataset, tmp_path / f"{figure_id}.png")
    assert path.stat().st_size > 0


def test_ecdf_plot(tmp_path):
    path = render_ecdf([1.0, 2.0, 3.0], [1 / 3, 2 / 3, 1.0], tmp_path / "curve.png")
    assert path.stat().st_size > 0
