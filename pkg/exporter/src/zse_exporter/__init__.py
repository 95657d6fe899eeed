"""Embedding exporter: CLIP-family encoders -> ZSE1 interchange files."""

from zse_exporter.encoders import DummyEncoder, EncoderError, resolve_encoder
from zse_exporter.zse_format import read_zse, write_zse

__version__ = "0.1.0"

__all__ = [
    "DummyEncoder",
    "EncoderError",
    "read_zse",
    "resolve_encoder",
    "write_zse",
]
