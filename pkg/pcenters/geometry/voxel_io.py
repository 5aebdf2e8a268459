# pcenters/geometry/voxel_io.py
"""Binary voxel grid format.

Layout (little-endian):
  header, 32 bytes: magic b"PCBODY01" | uint32 m | uint32 dims[3] | float64 cell
  origin: m float64
  payload: occupancy bits, C order, ``numpy.packbits`` (big bit order), zero padded

For m = 2 the third dimension entry is 1.
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path

import numpy as np

from pcenters.errors import InvalidShape
from pcenters.geometry.shapes import VoxelShape

log = logging.getLogger("pc")

MAGIC = b"PCBODY01"
_HEADER = struct.Struct("<8sIIIId")
assert _HEADER.size == 32


def write_voxel_grid(shape: VoxelShape, path: str | Path) -> Path:
    path = Path(path)
    dims = list(shape.dims) + [1] * (3 - shape.dimension)
    header = _HEADER.pack(MAGIC, shape.dimension, *dims, float(shape.cell))
    origin = np.asarray(shape.origin, dtype="<f8").tobytes()
    bits = np.packbits(shape.occupancy.ravel(order="C")).tobytes()
    path.write_bytes(header + origin + bits)
    log.info("[body] wrote voxel grid %s dims=%s", path, shape.dims)
    return path


def read_voxel_grid(path: str | Path) -> VoxelShape:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise InvalidShape("file shorter than header", field="VoxelGrid.header")
    magic, m, d0, d1, d2, cell = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise InvalidShape(f"bad magic {magic!r}", field="VoxelGrid.header")
    if m not in (2, 3):
        raise InvalidShape(f"unsupported dimension {m}", field="VoxelGrid.m")
    dims = (d0, d1, d2)[:m]
    off = _HEADER.size
    origin = np.frombuffer(raw, dtype="<f8", count=m, offset=off)
    off += 8 * m
    count = int(np.prod(dims))
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8, offset=off))
    if len(bits) < count:
        raise InvalidShape("payload shorter than dims imply", field="VoxelGrid.payload")
    occ = bits[:count].astype(bool).reshape(dims)
    return VoxelShape(origin=tuple(float(v) for v in origin), cell=float(cell), occupancy=occ)
