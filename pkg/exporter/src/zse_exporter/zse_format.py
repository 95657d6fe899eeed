"""ZSE1 embedding file writer (and a reader for self-checks).

The interchange layout, little-endian throughout:

    magic ``ZSE1`` | u16 version (=1) | u32 dim | u64 row count |
    row-major float32 payload

with row identifiers in a ``<path>.ids`` sidecar, newline-delimited
UTF-8, one per row. This module is deliberately standalone so the
exporter stays a thin adapter on the producing side of the format.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"ZSE1"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sHIQ")


class ZseFormatError(ValueError):
    pass


def write_zse(path, ids, vectors) -> None:
    """Write one embedding file plus its ids sidecar.

    Rows must be finite and L2-normalized already; ids unique, one per
    row, free of newlines.
    """
    vectors = np.ascontiguousarray(vectors, dtype=np.float32)
    ids = [str(i) for i in ids]
    if vectors.ndim != 2:
        raise ZseFormatError(f"expected a 2-D matrix, got ndim={vectors.ndim}")
    if len(ids) != vectors.shape[0]:
        raise ZseFormatError(f"{len(ids)} ids for {vectors.shape[0]} rows")
    if len(set(ids)) != len(ids):
        raise ZseFormatError("row ids are not unique")
    if any(not rid or "\n" in rid or "\r" in rid for rid in ids):
        raise ZseFormatError("row ids must be non-empty single lines")
    if not np.all(np.isfinite(vectors)):
        raise ZseFormatError("matrix has non-finite components")

    n_rows, dim = vectors.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, dim, n_rows))
        fh.write(vectors.astype("<f4", copy=False).tobytes())
    with open(str(path) + ".ids", "w", encoding="utf-8") as fh:
        for rid in ids:
            fh.write(rid + "\n")


def read_zse(path) -> tuple[list[str], np.ndarray]:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise ZseFormatError("file too short for header")
    magic, version, dim, n_rows = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ZseFormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise ZseFormatError(f"unsupported version {version}")
    if len(blob) - _HEADER.size != n_rows * dim * 4:
        raise ZseFormatError("payload size disagrees with header")
    vectors = np.frombuffer(
        blob, dtype="<f4", count=n_rows * dim, offset=_HEADER.size
    ).reshape(n_rows, dim)
    ids_file = Path(str(path) + ".ids")
    if not ids_file.exists():
        raise ZseFormatError(f"missing ids sidecar {ids_file}")
    ids = ids_file.read_text(encoding="utf-8").splitlines()
    if len(ids) != n_rows:
        raise ZseFormatError(f"{len(ids)} ids for {n_rows} rows")
    return ids, np.array(vectors)
