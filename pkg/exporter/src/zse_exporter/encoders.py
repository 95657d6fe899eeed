"""Encoder backends turning text and images into unit-norm embedding rows.

Two families:

- ``dummy:<dim>`` — a deterministic stand-in that derives each row from a
  SHA-256 of the input via a counter-based RNG. No weights, no downloads,
  stable across runs and platforms; this is what CI exercises.
- anything else — a CLIP-family checkpoint loaded through
  ``transformers`` (e.g. ``openai/clip-vit-base-patch32``, or the larger
  ViT-L/14 variants). Inference runs in eval mode under ``no_grad``, so
  re-exports of the same inputs are stable for a fixed runtime.

All backends L2-normalize their output rows.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Sequence

import numpy as np


class EncoderError(RuntimeError):
    """Backend failed to load or to encode an input."""


def _normalize_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.float64)
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise EncoderError("encoder produced a zero vector")
    return (rows / norms).astype(np.float32)


class DummyEncoder:
    """Deterministic hash-seeded encoder for pipeline and contract tests."""

    def __init__(self, dim: int):
        if dim <= 0:
            raise EncoderError(f"dummy encoder dim must be positive, got {dim}")
        self.dim = dim
        self.name = f"dummy:{dim}"

    def _row(self, payload: bytes) -> np.ndarray:
        digest = hashlib.sha256(payload).digest()
        seed = int.from_bytes(digest[:8], "little")
        rng = np.random.Generator(np.random.Philox(seed))
        return rng.standard_normal(self.dim)

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        rows = [self._row(b"text\x00" + t.encode("utf-8")) for t in texts]
        return _normalize_rows(np.stack(rows))

    def encode_images(self, paths: Sequence) -> np.ndarray:
        rows = []
        for path in paths:
            try:
                payload = Path(path).read_bytes()
            except OSError as exc:
                raise EncoderError(f"cannot read image {path}: {exc}") from None
            rows.append(self._row(b"image\x00" + payload))
        return _normalize_rows(np.stack(rows))


class HFClipEncoder:
    """CLIP-family checkpoints via transformers; loaded lazily."""

    def __init__(self, model_id: str, batch_size: int = 32):
        self.name = model_id
        self.batch_size = batch_size
        try:
            import torch
            from transformers import CLIPModel, CLIPProcessor
        except ImportError as exc:
            raise EncoderError(
                f"backend for {model_id!r} needs torch and transformers: {exc}"
            ) from None
        self._torch = torch
        try:
            self._model = CLIPModel.from_pretrained(model_id).eval()
            self._processor = CLIPProcessor.from_pretrained(model_id)
        except Exception as exc:
            raise EncoderError(f"cannot load model {model_id!r}: {exc}") from None

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        torch = self._torch
        chunks = []
        with torch.no_grad():
            for start in range(0, len(texts), self.batch_size):
                batch = list(texts[start : start + self.batch_size])
                inputs = self._processor(
                    text=batch, return_tensors="pt", padding=True, truncation=True
                )
                feats = self._model.get_text_features(**inputs)
                chunks.append(feats.cpu().numpy())
        return _normalize_rows(np.concatenate(chunks))

    def encode_images(self, paths: Sequence) -> np.ndarray:
        from PIL import Image

        torch = self._torch
        chunks = []
        with torch.no_grad():
            for start in range(0, len(paths), self.batch_size):
                batch = []
                for path in paths[start : start + self.batch_size]:
                    try:
                        with Image.open(path) as img:
                            batch.append(img.convert("RGB"))
                    except OSError as exc:
                        raise EncoderError(
                            f"cannot read image {path}: {exc}"
                        ) from None
                inputs = self._processor(images=batch, return_tensors="pt")
                feats = self._model.get_image_features(**inputs)
                chunks.append(feats.cpu().numpy())
        return _normalize_rows(np.concatenate(chunks))


def resolve_encoder(model_id: str):
    if model_id.startswith("dummy:"):
        try:
            dim = int(model_id.split(":", 1)[1])
        except ValueError:
            raise EncoderError(f"bad dummy encoder spec {model_id!r}") from None
        return DummyEncoder(dim)
    return HFClipEncoder(model_id)
