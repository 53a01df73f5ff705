"""Binary codebook container.

Layout (all integers little-endian)::

    offset 0   8 bytes   magic b"HDCBOOK1"
    offset 8   4 bytes   uint32 header length H
    offset 12  H bytes   UTF-8 JSON header {"kind", "n", "dim", "seed", "dtype"}
    offset 12+H          n*dim values, row-major
                         bipolar: float64 ("<f8")
                         fhrr:    complex128 ("<c16"), i.e. interleaved
                                  (real, imag) float64 pairs

The payload is the raw IEEE-754 bytes so a load/save round trip is bit-exact.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .hdc import Codebook, Kind

MAGIC = b"HDCBOOK1"
_DTYPES = {Kind.BIPOLAR: "<f8", Kind.COMPLEX: "<c16"}


def dumps(cb: Codebook) -> bytes:
    dtype = _DTYPES[cb.kind]
    header = json.dumps(
        {"kind": cb.kind.value, "n": cb.n, "dim": cb.dim, "seed": cb.seed, "dtype": dtype},
        sort_keys=True,
    ).encode()
    payload = np.ascontiguousarray(cb.vectors, dtype=dtype).tobytes()
    return MAGIC + struct.pack("<I", len(header)) + header + payload


def loads(data: bytes) -> Codebook:
    if data[:8] != MAGIC:
        raise ValueError("not a codebook file (bad magic)")
    (hlen,) = struct.unpack("<I", data[8:12])
    header = json.loads(data[12:12 + hlen])
    kind = Kind(header["kind"])
    n, dim = int(header["n"]), int(header["dim"])
    dtype = np.dtype(_DTYPES[kind])
    body = data[12 + hlen:]
    if len(body) != n * dim * dtype.itemsize:
        raise ValueError(f"payload has {len(body)} bytes, expected {n * dim * dtype.itemsize}")
    rows = np.frombuffer(body, dtype=dtype).reshape(n, dim).astype(dtype.newbyteorder("="))
    return Codebook(rows, seed=header.get("seed"))


def save(cb: Codebook, path) -> None:
    Path(path).write_bytes(dumps(cb))


def load(path) -> Codebook:
    return loads(Path(path).read_bytes())
