"""Export CLI: prompt JSONL or an image directory -> ZSE1 files.

    zse-export export-text   --model <id> --prompts <jsonl> --out <path>
    zse-export export-images --model <id> --images <dir> --manifest <ids> --out <path>

Text rows get ids ``<species_id>#<k>`` for the k-th prompt of a species;
image rows are identified by their manifest line, which is also the file
name resolved against the image directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from zse_exporter.encoders import EncoderError, resolve_encoder
from zse_exporter.zse_format import ZseFormatError, write_zse


class InputError(ValueError):
    pass


def load_prompts(path) -> tuple[list[str], list[str]]:
    """Flatten a prompts JSONL into parallel (row_id, text) lists."""
    ids: list[str] = []
    texts: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                species_id = obj["species_id"]
                prompts = obj["prompts"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise InputError(f"{path}: line {lineno}: bad record: {exc}") from None
            if not prompts:
                raise InputError(
                    f"{path}: line {lineno}: species {species_id!r} has no prompts"
                )
            for k, text in enumerate(prompts):
                ids.append(f"{species_id}#{k}")
                texts.append(text)
    if not texts:
        raise InputError(f"{path}: no prompts to encode")
    return ids, texts


def cmd_export_text(args) -> int:
    ids, texts = load_prompts(args.prompts)
    encoder = resolve_encoder(args.model)
    rows = encoder.encode_texts(texts)
    write_zse(args.out, ids, rows)
    print(f"rows\t{len(ids)}")
    print(f"dim\t{rows.shape[1]}")
    return 0


def cmd_export_images(args) -> int:
    manifest = Path(args.manifest)
    ids = [
        line.strip()
        for line in manifest.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if not ids:
        raise InputError(f"{manifest}: no image ids to encode")
    if len(set(ids)) != len(ids):
        raise InputError(f"{manifest}: duplicate image ids")
    paths = [Path(args.images) / rid for rid in ids]
    encoder = resolve_encoder(args.model)
    rows = encoder.encode_images(paths)
    write_zse(args.out, ids, rows)
    print(f"rows\t{len(ids)}")
    print(f"dim\t{rows.shape[1]}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zse-export", description="CLIP-family embedding exporter")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("export-text", help="encode prompt JSONL into embeddings")
    p.add_argument("--model", required=True, help="model id, or dummy:<dim>")
    p.add_argument("--prompts", required=True, help="prompt JSONL file")
    p.add_argument("--out", required=True, help="ZSE1 file to write")
    p.set_defaults(func=cmd_export_text)

    p = sub.add_parser("export-images", help="encode an image directory")
    p.add_argument("--model", required=True, help="model id, or dummy:<dim>")
    p.add_argument("--images", required=True, help="image directory")
    p.add_argument("--manifest", required=True, help="one image file name per line")
    p.add_argument("--out", required=True, help="ZSE1 file to write")
    p.set_defaults(func=cmd_export_images)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "func", None) is None:
        parser.error("a subcommand is required")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 2
    except EncoderError as exc:
        print(f"error: encoder: {exc}", file=sys.stderr)
        return 2
    except ZseFormatError as exc:
        print(f"error: format: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
