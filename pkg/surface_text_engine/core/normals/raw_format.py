# Lossless "NRM1" raw normal-field format
# core/normals/raw_format.py
#
# Layout (little-endian):
#   magic   4 bytes  b"NRM1"
#   width   uint32
#   height  uint32
#   data    width * height * 3 float32, row-major, xyz interleaved

import struct
from pathlib import Path
from typing import Union

import numpy as np

from surface_text_engine.core.errors import BadMagic, InvalidImage, IoError, TruncatedFile
from surface_text_engine.core.schemas.normals import NormalField

MAGIC = b"NRM1"
HEADER = struct.Struct("<4sII")
SAMPLE_DTYPE = np.dtype("<f4")


def write_raw(field: NormalField) -> bytes:
    header = HEADER.pack(MAGIC, field.width, field.height)
    return header + field.data.astype(SAMPLE_DTYPE).tobytes(order="C")


def read_raw(data: bytes) -> NormalField:
    if len(data) < 4:
        raise TruncatedFile(f"NRM1 stream is only {len(data)} bytes")
    if data[:4] != MAGIC:
        raise BadMagic(f"expected magic {MAGIC!r}, found {bytes(data[:4])!r}")
    if len(data) < HEADER.size:
        raise TruncatedFile("NRM1 header is incomplete")

    _, width, height = HEADER.unpack_from(data, 0)
    if width == 0 or height == 0:
        raise InvalidImage(f"NRM1 field has zero size ({width}x{height})")

    expected = HEADER.size + width * height * 3 * SAMPLE_DTYPE.itemsize
    if len(data) < expected:
        raise TruncatedFile(f"NRM1 stream has {len(data)} bytes, expected {expected}")
    if len(data) > expected:
        raise InvalidImage(f"NRM1 stream has {len(data) - expected} trailing bytes")

    samples = np.frombuffer(data, dtype=SAMPLE_DTYPE, count=width * height * 3, offset=HEADER.size)
    return NormalField(samples.astype(np.float64).reshape(height, width, 3))


def read_raw_file(path: Union[str, Path]) -> NormalField:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}", path=str(path)) from e
    return read_raw(data)


def write_raw_file(path: Union[str, Path], field: NormalField) -> Path:
    target = Path(path)
    try:
        target.write_bytes(write_raw(field))
    except OSError as e:
        raise IoError(f"cannot write {target}: {e}", path=str(target)) from e
    return target
