"""Dense embedding interchange: unit-norm float32 matrices on disk.

File layout, all little-endian and bit-exact across platforms:

    magic ``ZSE1`` (4 bytes) | u16 format version (=1) | u32 dim |
    u64 row count | row-major float32 IEEE-754 payload

Row identifiers live in a sidecar at ``<path>.ids``: newline-delimited
UTF-8, one per row, same order. Rows are expected to be L2-normalized;
the loader rejects out-of-tolerance rows unless asked to renormalize,
since some exporters emit raw encoder outputs.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAGIC = b"ZSE1"
FORMAT_VERSION = 1
NORM_TOLERANCE = 1e-4

_HEADER = struct.Struct("<4sHIQ")


class EmbeddingFormatError(ValueError):
    """Unreadable or inconsistent embedding file."""


def l2_normalize(v: np.ndarray) -> np.ndarray:
    """Scale a vector to unit L2 norm, preserving direction.

    Rejects the zero vector (and anything non-finite), which has no
    direction to preserve.
    """
    v = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite components")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / norm


def l2_normalize_rows(m: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(m.astype(np.float64), axis=1)
    if np.any(norms == 0.0):
        raise ValueError(f"row {int(np.argmin(norms))} is the zero vector")
    return (m / norms[:, None]).astype(np.float32)


@dataclass
class EmbeddingMatrix:
    """Row-major float32 matrix with one string identifier per row."""

    ids: tuple[str, ...]
    vectors: np.ndarray

    def __post_init__(self):
        vectors = np.ascontiguousarray(self.vectors, dtype=np.float32)
        if vectors.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got ndim={vectors.ndim}")
        ids = tuple(self.ids)
        if len(ids) != vectors.shape[0]:
            raise ValueError(
                f"{len(ids)} ids for {vectors.shape[0]} rows"
            )
        if len(set(ids)) != len(ids):
            raise ValueError("row ids are not unique")
        for rid in ids:
            if not rid or "\n" in rid or "\r" in rid:
                raise ValueError(f"bad row id {rid!r}")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("matrix has non-finite components")
        self.ids = ids
        self.vectors = vectors

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return int(self.vectors.shape[0])

    def row_norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors.astype(np.float64), axis=1)


def _check_norms(matrix: EmbeddingMatrix, tolerance: float) -> None:
    if len(matrix) == 0:
        return
    norms = matrix.row_norms()
    bad = np.nonzero(np.abs(norms - 1.0) > tolerance)[0]
    if bad.size:
        i = int(bad[0])
        raise EmbeddingFormatError(
            f"row {i} ({matrix.ids[i]!r}) has L2 norm {norms[i]:.6f}, "
            f"outside 1 +/- {tolerance}"
        )


def _ids_path(path) -> Path:
    return Path(str(path) + ".ids")


def write_embeddings(matrix: EmbeddingMatrix, path) -> None:
    """Write the binary payload and its ``.ids`` sidecar.

    The matrix must already satisfy the on-disk invariants (unit-norm
    rows, finite components, unique ids); writing is refused otherwise.
    """
    _check_norms(matrix, NORM_TOLERANCE)
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, matrix.dim, len(matrix))
    payload = matrix.vectors.astype("<f4", copy=False).tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)
    with open(_ids_path(path), "w", encoding="utf-8") as fh:
        for rid in matrix.ids:
            fh.write(rid + "\n")


def read_embeddings(path, renormalize: bool = False) -> EmbeddingMatrix:
    """Load an embedding file plus sidecar, enforcing format invariants.

    Rejects bad magic, unknown version, payload/row-count disagreement,
    id-count disagreement, non-finite values, and out-of-tolerance row
    norms; ``renormalize=True`` rescales rows instead of rejecting them.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise EmbeddingFormatError(
            f"file too short for header ({len(blob)} bytes)"
        )
    magic, version, dim, n_rows = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise EmbeddingFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise EmbeddingFormatError(
            f"unsupported format version {version}, expected {FORMAT_VERSION}"
        )
    if dim == 0:
        raise EmbeddingFormatError("dim must be positive")
    expected = n_rows * dim * 4
    actual = len(blob) - _HEADER.size
    if actual < expected:
        raise EmbeddingFormatError(
            f"truncated payload: header declares {n_rows} rows * dim {dim} "
            f"({expected} bytes), found {actual}"
        )
    if actual > expected:
        raise EmbeddingFormatError(
            f"trailing data: {actual - expected} bytes beyond the declared payload"
        )
    vectors = np.frombuffer(
        blob, dtype="<f4", count=n_rows * dim, offset=_HEADER.size
    ).reshape(n_rows, dim)

    ids_file = _ids_path(path)
    if not ids_file.exists():
        raise EmbeddingFormatError(f"missing ids sidecar {ids_file}")
    ids = ids_file.read_text(encoding="utf-8").splitlines()
    if len(ids) != n_rows:
        raise EmbeddingFormatError(
            f"ids sidecar has {len(ids)} entries for {n_rows} rows"
        )

    if not np.all(np.isfinite(vectors)):
        raise EmbeddingFormatError("payload has non-finite components")
    if renormalize and n_rows:
        vectors = l2_normalize_rows(vectors)
    matrix = EmbeddingMatrix(ids=tuple(ids), vectors=np.array(vectors))
    if not renormalize:
        _check_norms(matrix, NORM_TOLERANCE)
    return matrix
