from pcenters.geometry.body import Body, BodyGrid, build_body, voxelize
from pcenters.geometry.cone import HALF_SPACE, ConeSpec
from pcenters.geometry.cone_check import validate_cone_spec
from pcenters.geometry.shapes import Annulus, Ball, Dumbbell, Polygon, VoxelShape
from pcenters.geometry.voxel_io import read_voxel_grid, write_voxel_grid


def signed_distance(body: Body, x):
    return body.signed_distance(x)


def inradius(body: Body) -> float:
    return body.inradius()


def diameter(body: Body) -> float:
    return body.diameter()


def inner_parallel_contains(body: Body, rho: float, x) -> bool:
    return body.inner_parallel_contains(rho, x)


__all__ = [
    "Annulus", "Ball", "Body", "BodyGrid", "ConeSpec", "Dumbbell", "HALF_SPACE", "Polygon",
    "VoxelShape", "build_body", "diameter", "inner_parallel_contains", "inradius",
    "read_voxel_grid", "signed_distance", "validate_cone_spec", "voxelize", "write_voxel_grid",
]
