"""Bodies: signed distance, inradius, diameter, grids, voxel files, cone checks."""

import math

import numpy as np
import numpy.testing as npt
import pytest

from pcenters.errors import ConeValidationFailed, InvalidShape, NegativeRadius, UnsupportedDimension
from pcenters.geometry import (
    ConeSpec,
    VoxelShape,
    build_body,
    read_voxel_grid,
    validate_cone_spec,
    voxelize,
    write_voxel_grid,
)
from pcenters.geometry.spheres import ball_volume, sphere_area, uniform_directions


def _p2(*xy) -> np.ndarray:
    return np.array([list(xy)], dtype=float)


class TestSpheres:
    def test_sphere_areas(self):
        npt.assert_allclose(sphere_area(1), 2 * math.pi)
        npt.assert_allclose(sphere_area(2), 4 * math.pi)
        npt.assert_allclose(sphere_area(3), 2 * math.pi ** 2)

    def test_ball_volume(self):
        npt.assert_allclose(ball_volume(2, 2.0), 4 * math.pi)
        npt.assert_allclose(ball_volume(3), 4 * math.pi / 3)

    @pytest.mark.parametrize("m,count", [(2, 16), (3, 128)])
    def test_directions_are_unit(self, m, count):
        v = uniform_directions(m, count)
        assert v.shape == (count, m)
        npt.assert_allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-12)


class TestBall:
    def test_signed_distance(self, disc):
        npt.assert_allclose(disc.signed_distance(_p2(0.0, 0.0)), [1.0])
        npt.assert_allclose(disc.signed_distance(_p2(1.0, 0.0)), [0.0], atol=1e-12)
        npt.assert_allclose(disc.signed_distance(_p2(3.0, 0.0)), [-2.0])

    def test_scalar_point_gives_float(self, disc):
        assert isinstance(disc.signed_distance([0.5, 0.0]), float)

    def test_inradius_and_diameter(self, disc):
        assert disc.inradius() == 1.0
        assert disc.diameter() == 2.0

    def test_grid_volume(self, disc):
        npt.assert_allclose(disc.volume(), math.pi, rtol=1e-3)

    def test_inner_parallel(self, disc):
        assert disc.inner_parallel_contains(0.5, [0.4, 0.0])
        assert not disc.inner_parallel_contains(0.5, [0.6, 0.0])
        with pytest.raises(NegativeRadius):
            disc.inner_parallel_contains(-0.1, [0.0, 0.0])

    def test_nonpositive_radius(self):
        with pytest.raises(InvalidShape):
            build_body(shape="ball", params={"radius": 0.0})


class TestAnnulus:
    def test_signed_distance(self, annulus):
        npt.assert_allclose(annulus.signed_distance(_p2(2.0, 0.0)), [1.0])
        npt.assert_allclose(annulus.signed_distance(_p2(0.0, 0.0)), [-1.0])
        npt.assert_allclose(annulus.signed_distance(_p2(0.0, 4.0)), [-1.0])

    def test_inradius_and_diameter(self, annulus):
        assert annulus.inradius() == 1.0
        assert annulus.diameter() == 6.0
        assert not annulus.convex

    def test_radii_order(self):
        with pytest.raises(InvalidShape):
            build_body(shape="annulus", params={"r_in": 3.0, "r_out": 1.0})


class TestDumbbell:
    def test_geometry(self, dumbbell):
        npt.assert_allclose(dumbbell.diameter(), 2 * math.sqrt(10.0))
        assert dumbbell.inradius() == 1.0
        npt.assert_allclose(dumbbell.signed_distance(_p2(2.0, 0.0)), [1.0], atol=1e-12)
        npt.assert_allclose(dumbbell.signed_distance(_p2(0.0, 0.0)), [0.2], atol=1e-12)
        assert dumbbell.signed_distance([0.0, 0.5]) < 0

    def test_default_cone(self, dumbbell):
        assert dumbbell.cone == ConeSpec(kappa=math.pi / 2, delta=0.1)

    def test_symmetric_in_x(self, dumbbell):
        pts = np.array([[1.7, 0.3], [0.5, 0.1], [2.9, -0.8]])
        mirrored = pts * np.array([-1.0, 1.0])
        npt.assert_allclose(dumbbell.signed_distance(pts), dumbbell.signed_distance(mirrored), atol=1e-12)

    def test_epsilon_range(self):
        with pytest.raises(InvalidShape):
            build_body(shape="dumbbell", params={"epsilon": 1.5})


class TestPolygon:
    def test_triangle_inradius(self, triangle):
        area, perimeter = 2.0, 4.0 + math.sqrt(2.0) + math.sqrt(10.0)
        npt.assert_allclose(triangle.inradius(), 2 * area / perimeter, rtol=1e-6)
        npt.assert_allclose(triangle.diameter(), 4.0)

    def test_square(self, square):
        npt.assert_allclose(square.signed_distance(_p2(0.0, 0.0)), [1.0])
        npt.assert_allclose(square.signed_distance(_p2(2.0, 0.0)), [-1.0])
        assert square.convex
        assert square.cone.kappa == pytest.approx(math.pi)

    def test_self_intersecting(self):
        with pytest.raises(InvalidShape):
            build_body(shape="polygon", params={"vertices": [[0, 0], [1, 1], [1, 0], [0, 1]]})

    def test_polygons_are_planar(self):
        with pytest.raises(UnsupportedDimension):
            build_body(shape="square", dimension=3)


class TestCone:
    def test_bad_aperture_names_the_field(self):
        with pytest.raises(InvalidShape, match="ConeSpec.kappa"):
            build_body(shape="ball", cone={"kappa": 2 * math.pi})

    def test_infinite_height_from_string(self):
        b = build_body(shape="ball", cone={"kappa": 1.0, "delta": "inf"})
        assert b.cone.unbounded

    def test_disc_half_space_validates(self, disc):
        report = validate_cone_spec(disc, samples=40)
        assert report["checked"] == 40

    def test_overclaimed_cone_fails(self):
        # the inside of the hole cannot hold a half-space cone of height 1
        body = build_body(shape="annulus", params={"r_in": 1.0, "r_out": 3.0}, grid_resolution=64,
                          cone={"kappa": math.pi, "delta": 1.5})
        with pytest.raises(ConeValidationFailed):
            validate_cone_spec(body, samples=200)


class TestVoxel:
    def test_round_trip_file(self, tmp_path, disc):
        vox = voxelize(disc, 0.1)
        path = write_voxel_grid(vox.shape, tmp_path / "disc.pcb")
        back = read_voxel_grid(path)
        assert back.dims == vox.shape.dims
        npt.assert_array_equal(back.occupancy, vox.shape.occupancy)
        npt.assert_allclose(back.origin, vox.shape.origin)

    def test_voxel_distance_within_a_cell(self, disc):
        vox = voxelize(disc, 0.05)
        pts = np.array([[0.0, 0.0], [0.5, 0.2], [-0.3, -0.6]])
        npt.assert_allclose(vox.signed_distance(pts), disc.signed_distance(pts), atol=2 * 0.05 * math.sqrt(2))

    def test_grid_distance_within_one_diagonal(self, disc):
        vox = voxelize(disc, 0.05)
        pts = vox.shape.cell_centers(np.ones(vox.shape.dims, dtype=bool))
        err = np.abs(vox.signed_distance(pts) - disc.signed_distance(pts))
        assert err.max() <= 0.05 * math.sqrt(2)

    def test_voxel_inradius(self, disc):
        vox = voxelize(disc, 0.01)
        assert vox.shape.inradius() is None
        npt.assert_allclose(vox.inradius(), 1.0, atol=0.02)

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "junk.pcb"
        p.write_bytes(b"NOTABODY" + bytes(40))
        with pytest.raises(InvalidShape):
            read_voxel_grid(p)

    def test_empty_occupancy(self):
        with pytest.raises(InvalidShape):
            VoxelShape(origin=(0.0, 0.0), cell=1.0, occupancy=np.zeros((4, 4), dtype=bool))
