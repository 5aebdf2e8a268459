"""Minimal unfolded region from directional folding."""

import csv
import math

import numpy as np
import numpy.testing as npt
import pytest

from pcenters.errors import InvalidRange, NonUnitDirection, UnsupportedDimension
from pcenters.unfolded import folding_threshold, uf_contains, unfolded_region, write_region_csv


def _direction_index(region, v) -> int:
    return int(np.argmin(np.linalg.norm(region.directions - np.asarray(v), axis=1)))


@pytest.fixture(scope="module")
def disc_uf(disc):
    return unfolded_region(disc, 16)


@pytest.fixture(scope="module")
def dumbbell_uf(dumbbell):
    return unfolded_region(dumbbell, 16)


@pytest.fixture(scope="module")
def annulus_uf(annulus):
    return unfolded_region(annulus, 16)


class TestDisc:
    def test_thresholds_near_zero(self, disc_uf):
        npt.assert_allclose(disc_uf.thresholds, 0.0, atol=3 * disc_uf.cell)

    def test_contains_only_the_middle(self, disc_uf):
        assert uf_contains(disc_uf, [0.0, 0.0])
        assert not uf_contains(disc_uf, [0.3, 0.0])
        assert disc_uf.contains([0.3, 0.0], slack=0.5)

    def test_vectorised_contains(self, disc_uf):
        got = disc_uf.contains(np.array([[0.0, 0.0], [0.0, 0.5], [-0.5, 0.0]]))
        npt.assert_array_equal(got, [True, False, False])

    def test_negative_slack(self, disc_uf):
        with pytest.raises(InvalidRange):
            disc_uf.contains([0.0, 0.0], slack=-0.1)


class TestDumbbell:
    def test_fold_along_the_bar(self, dumbbell_uf):
        cell = dumbbell_uf.cell
        # blocks fold onto themselves from their middles x = +-2
        npt.assert_allclose(dumbbell_uf.thresholds[_direction_index(dumbbell_uf, [1, 0])], 2.0, atol=3 * cell)
        npt.assert_allclose(dumbbell_uf.thresholds[_direction_index(dumbbell_uf, [-1, 0])], 2.0, atol=3 * cell)
        npt.assert_allclose(dumbbell_uf.thresholds[_direction_index(dumbbell_uf, [0, 1])], 0.0, atol=3 * cell)

    def test_region_is_a_thin_segment(self, dumbbell_uf):
        assert uf_contains(dumbbell_uf, [1.9, 0.0])
        assert uf_contains(dumbbell_uf, [-1.9, 0.0])
        assert not uf_contains(dumbbell_uf, [0.0, 0.5])
        assert not uf_contains(dumbbell_uf, [2.5, 0.0])

    def test_outline(self, dumbbell_uf):
        poly = dumbbell_uf.polygon()
        cell = dumbbell_uf.cell
        assert poly[:, 0].max() == pytest.approx(2.0, abs=4 * cell)
        assert poly[:, 0].min() == pytest.approx(-2.0, abs=4 * cell)
        assert np.abs(poly[:, 1]).max() < 4 * cell
        assert dumbbell_uf.width() >= 4.0 - 6 * cell


class TestAnnulus:
    def test_radius_two(self, annulus_uf):
        # a cap folds clear of the hole only once it is thinner than the ring
        npt.assert_allclose(annulus_uf.thresholds, 2.0, atol=3 * annulus_uf.cell)

    def test_polygon(self, annulus_uf):
        poly = annulus_uf.polygon()
        assert len(poly) == 16
        radii = np.linalg.norm(poly, axis=1)
        outer = annulus_uf.thresholds.max() / math.cos(math.pi / 16)
        assert np.all(radii <= outer + 1e-9)
        assert np.all(radii >= annulus_uf.thresholds.min() - 1e-9)

    def test_contains_the_hole(self, annulus_uf):
        assert uf_contains(annulus_uf, [0.0, 0.0])
        assert uf_contains(annulus_uf, [1.5, 0.0])


class TestValidation:
    def test_direction_must_be_unit(self, disc):
        with pytest.raises(NonUnitDirection):
            folding_threshold(disc, [1.0, 1.0])
        with pytest.raises(NonUnitDirection):
            folding_threshold(disc, [1.0, 0.0, 0.0])

    def test_too_few_directions(self, disc, ball3):
        with pytest.raises(InvalidRange):
            unfolded_region(disc, 8)
        with pytest.raises(InvalidRange):
            unfolded_region(ball3, 64)

    def test_polygon_needs_the_plane(self, ball3):
        region = unfolded_region(ball3, 128, resolution=16)
        with pytest.raises(UnsupportedDimension):
            region.polygon()


def test_region_csv(tmp_path, disc_uf):
    path = write_region_csv(disc_uf, tmp_path / "uf.csv")
    with path.open(newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["v1", "v2", "l"]
    assert len(rows) == 17
    npt.assert_allclose(float(rows[1][0]), 1.0)
    assert path.read_bytes().count(b"\r") == 0
