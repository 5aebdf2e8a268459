"""Command line: configs in, CSV/JSON/SVG out, exit codes."""

import csv
import json
import math
from pathlib import Path

import numpy as np
import numpy.testing as npt
import pytest

from pcenters.centers import CenterSet
from pcenters.cli import ExperimentConfig, emit_svg, execute, resolve_experiment, run
from pcenters.cli.main import main
from pcenters.errors import ConfigError, UnsupportedDimension
from pcenters.potentials import KernelSpec
from pcenters.utils.jsonx import dumps, load_file

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def _write(tmp_path: Path, name: str, doc: dict) -> Path:
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return p


def _csv(path: Path):
    with path.open(newline="") as f:
        return list(csv.reader(f))


class TestAliases:
    @pytest.mark.parametrize("name,key", [
        ("centers find", "centers"),
        ("Centers   Find", "centers"),
        ("heart", "unfolded"),
        ("r_tilde", "conebound"),
        ("kernel check", "summability"),
    ])
    def test_spellings(self, name, key):
        assert resolve_experiment(name) == key

    def test_unknown(self):
        with pytest.raises(ConfigError, match="experiment"):
            resolve_experiment("bake")


class TestConfig:
    def test_centers_need_a_shape(self):
        with pytest.raises(ConfigError, match="shape"):
            ExperimentConfig.from_mapping({"experiment": "centers", "kernel": {"variant": "heat", "t": 1},
                                           "resolution": 0.1})

    def test_seeded_experiments_need_a_seed(self):
        with pytest.raises(ConfigError, match="seed"):
            ExperimentConfig.from_mapping({"experiment": "concavity", "shape": "square",
                                           "kernel": {"variant": "poisson", "h": 0.1}})

    def test_b_range(self):
        with pytest.raises(ConfigError, match="b: must lie"):
            ExperimentConfig.from_mapping({"experiment": "conebound", "b": 1.5,
                                           "conebound": {"kappa": 1, "D": 2, "R0": 1}})

    def test_point_length(self):
        with pytest.raises(ConfigError, match=r"points\[0\]"):
            ExperimentConfig.from_mapping({"experiment": "eval", "shape": "ball",
                                           "kernel": {"variant": "riesz", "alpha": 1}, "points": [[0, 0, 0]]})

    def test_bodyless_conebound_needs_numbers(self):
        with pytest.raises(ConfigError, match="conebound.D"):
            ExperimentConfig.from_mapping({"experiment": "conebound", "conebound": {"kappa": 1, "R0": 1}})

    def test_commented_file(self):
        c = ExperimentConfig.from_file(CONFIGS / "halfspace_conebound.json")
        assert c.experiment == "conebound"
        assert c.conebound["delta"] == "inf"
        assert c.conebound["D"] == 6


class TestConebound:
    def test_half_space_run(self, tmp_path):
        assert main(["conebound", "--config", str(CONFIGS / "halfspace_conebound.json"), "--out", str(tmp_path)]) == 0
        doc = load_file(tmp_path / "conebound.json")
        res = doc["result"]
        assert 1.0 / math.pi < res["r_tilde"] < 1.0
        npt.assert_allclose(res["r_tilde"], res["closed_form_root"], atol=1e-4)
        assert res["E_strictly_decreasing"]
        assert res["delta"] == "inf"
        rows = _csv(tmp_path / "conebound.csv")
        assert rows[0] == ["R", "E"]
        assert len(rows) == 51

    def test_full_turn_aperture_is_rejected(self, tmp_path):
        cfg = _write(tmp_path, "bad.json", {"experiment": "conebound",
                                            "conebound": {"kappa": 2 * math.pi, "D": 6, "R0": 1}})
        assert main(["conebound", "--config", str(cfg), "--out", str(tmp_path / "out")]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["conebound", "--config", str(tmp_path / "nope.json")]) == 2

    def test_broken_json(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{ not json", encoding="utf-8")
        assert main(["conebound", "--config", str(p)]) == 2


class TestCenters:
    @pytest.fixture(scope="class")
    def ball_run(self, tmp_path_factory):
        out = tmp_path_factory.mktemp("ball")
        code = main(["centers", "find", "--config", str(CONFIGS / "ball_centers.json"), "--out", str(out)])
        return code, out

    def test_one_center_at_the_origin(self, ball_run):
        code, out = ball_run
        assert code == 0
        rows = _csv(out / "centers.csv")
        assert rows[0] == ["x1", "x2", "value"]
        assert len(rows) == 2
        npt.assert_allclose([float(rows[1][0]), float(rows[1][1])], [0.0, 0.0], atol=1e-12)

    def test_outputs_are_reproducible(self, ball_run, tmp_path):
        _, first = ball_run
        assert main(["centers", "--config", str(CONFIGS / "ball_centers.json"), "--out", str(tmp_path)]) == 0
        assert (tmp_path / "centers.csv").read_bytes() == (first / "centers.csv").read_bytes()
        assert (tmp_path / "centers.json").read_bytes() == (first / "centers.json").read_bytes()

    def test_summary_reloads(self, ball_run):
        _, out = ball_run
        doc = load_file(out / "centers.json")
        again = ExperimentConfig.from_mapping(doc)
        assert again.experiment == "centers"
        assert again.kernel == KernelSpec.poisson(0.5, 2)
        assert again.resolution == 0.05
        assert again.body.grid_resolution == 128
        assert dumps(again.resolved()) == dumps(doc["config"])


@pytest.mark.slow
class TestShippedConfigs:
    def test_dumbbell_centers_are_contained(self, tmp_path):
        assert main(["contain", "--config", str(CONFIGS / "dumbbell_contain.json"), "--out", str(tmp_path)]) == 0
        result = load_file(tmp_path / "contain.json")["result"]
        assert result["pass"]
        assert len(result["rows"]) == 2
        xs = sorted(r["point"][0] for r in result["rows"])
        npt.assert_allclose(xs[0], -xs[1], atol=1e-9)
        assert all(r["in_uf"] and r["in_inner_parallel"] for r in result["rows"])

    def test_triangle_poisson_centers_converge(self, tmp_path):
        assert main(["converge", "--config", str(CONFIGS / "triangle_converge.json"), "--out", str(tmp_path)]) == 0
        result = load_file(tmp_path / "converge.json")["result"]
        d = result["distances"]
        assert len(d) == 7
        for a, b in zip(d[2:], d[3:]):
            assert b <= a + 0.02
        assert d[-1] < 2 * 0.02
        assert result["non_increasing_tail"]
        assert result["final_below_two_cells"]
        assert len(_csv(tmp_path / "converge.csv")) == 8


class TestOtherExperiments:
    def test_eval(self, tmp_path):
        c = ExperimentConfig.from_mapping({
            "experiment": "eval", "shape": "ball", "grid_resolution": 64,
            "kernel": {"variant": "renormalized", "alpha": -1}, "points": [[0, 0], [2, 0]],
        })
        written = execute(c, tmp_path)
        rows = _csv(written["csv"])
        npt.assert_allclose(float(rows[1][2]), -2 * math.pi, rtol=1e-6)
        assert rows[2][4] == "exterior"

    def test_summability(self, tmp_path):
        c = ExperimentConfig.from_file(CONFIGS / "poisson_summability.json")
        assert run(c, tmp_path) == 0
        doc = load_file(tmp_path / "summability.json")
        assert doc["result"]["summable"]

    def test_unfolded_picture(self, tmp_path):
        c = ExperimentConfig.from_file(CONFIGS / "annulus_uf.json")
        assert run(c, tmp_path, svg=True) == 0
        text = (tmp_path / "unfolded.svg").read_text(encoding="utf-8")
        assert 'id="uf"' in text
        assert 'id="center-' not in text
        assert len(_csv(tmp_path / "unfolded.csv")) == 65


class TestSvg:
    def _two_centers(self):
        return CenterSet(points=np.array([[-2.0, 0.0], [2.0, 0.0]]), values=np.zeros(2), max_value=0.0,
                         plateau_tolerance=0.0, potential=KernelSpec.renormalized(-1.0, 2),
                         search_region="interior", resolution=0.1)

    def test_one_marker_per_center(self, tmp_path, dumbbell):
        path = emit_svg(dumbbell, None, [self._two_centers()], tmp_path / "d.svg")
        text = path.read_text(encoding="utf-8")
        assert 'id="center-0"' in text and 'id="center-1"' in text
        assert 'id="center-2"' not in text
        assert 'id="body"' in text

    def test_no_centers(self, tmp_path, disc):
        text = emit_svg(disc, None, [], tmp_path / "e.svg").read_text(encoding="utf-8")
        assert 'id="center-' not in text

    def test_same_bytes_twice(self, tmp_path, dumbbell):
        a = emit_svg(dumbbell, None, [self._two_centers()], tmp_path / "a.svg").read_bytes()
        b = emit_svg(dumbbell, None, [self._two_centers()], tmp_path / "b.svg").read_bytes()
        assert a == b

    def test_planar_only(self, tmp_path, ball3):
        with pytest.raises(UnsupportedDimension):
            emit_svg(ball3, None, [], tmp_path / "x.svg")
