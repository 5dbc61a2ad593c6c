"""Dataset serialization: CSV, JSON mirror, and the reproducibility manifest.

Numbers are written in their shortest round-trip decimal form, CSV rows end
with a bare newline, and the manifest records a checksum for every emitted
file next to the configuration that produced it.
"""
from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

MANIFEST_NAME = "manifest.json"


def format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, columns, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def write_json(path, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    return path


def rows_as_records(columns, rows) -> list[dict]:
    return [dict(zip(columns, row)) for row in rows]


def file_checksum(path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def write_manifest(directory, *, config_echo: dict, master_seed: int,
                   version: str, outputs) -> Path:
    """Record config, seed, version and a checksum per emitted file."""
    directory = Path(directory)
    manifest = {
        "artifact_version": version,
        "master_seed": master_seed,
        "config": config_echo,
        "outputs": {Path(p).name: file_checksum(p) for p in sorted(outputs, key=lambda p: Path(p).name)},
    }
    return write_json(directory / MANIFEST_NAME, manifest)
