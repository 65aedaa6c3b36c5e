"""ADMF binary snapshots.

Layout (little-endian): magic "ADMF", u32 version, u32 n, f64 L, u8 flags
(bit0 = divergence-free), then the (3, n, n, n) complex coefficients as
f64 pairs in C order with every axis in FFT mode order.
"""

import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np

from adm.errors import SnapshotFormatError
from adm.spectral.field import SpectralField
from adm.spectral.lattice import WaveLattice
from utils.parser.baseParser import BaseParser, Source

logger = logging.getLogger(__name__)

MAGIC = b"ADMF"
VERSION = 1
HEADER = struct.Struct("<4sIIdB")
FLAG_SOLENOIDAL = 0x01


def encode_snapshot(field: SpectralField) -> bytes:
    lattice = field.lattice
    flags = FLAG_SOLENOIDAL if field.solenoidal else 0
    header = HEADER.pack(MAGIC, VERSION, lattice.n, lattice.L, flags)
    return header + np.ascontiguousarray(field.coeffs, dtype="<c16").tobytes()


def write_snapshot(field: SpectralField, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_snapshot(field))
    return path


class SnapshotParser(BaseParser[SpectralField]):
    def parse(self, input: Source) -> SpectralField:
        if isinstance(input, (str, Path)):
            try:
                data = Path(input).read_bytes()
            except OSError as e:
                raise SnapshotFormatError(f"cannot read snapshot {input}: {e}") from e
        else:
            data = input
        return self.decode(data)

    @staticmethod
    def decode(data: bytes) -> SpectralField:
        if len(data) < HEADER.size:
            raise SnapshotFormatError(f"truncated header: {len(data)} bytes")
        magic, version, n, L, flags = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise SnapshotFormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise SnapshotFormatError(f"unsupported version {version}")
        try:
            lattice = WaveLattice(n, L)
        except ValueError as e:
            raise SnapshotFormatError(str(e)) from e
        expected = HEADER.size + 3 * n ** 3 * 16
        if len(data) != expected:
            raise SnapshotFormatError(f"expected {expected} bytes for n={n}, got {len(data)}")
        coeffs = np.frombuffer(data, dtype="<c16", offset=HEADER.size).reshape((3,) + lattice.shape)
        logger.debug(f"decoded snapshot n={n} L={L:g} flags={flags:#x}")
        return SpectralField(lattice, coeffs.astype(np.complex128), solenoidal=bool(flags & FLAG_SOLENOIDAL))
