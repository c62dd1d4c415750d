"""Deterministic JSON and CSV emission shared by the CLI commands.

All files are written with LF line endings, JSON with sorted keys, and
CSV floats at 17 significant digits, so identical runs produce
byte-identical outputs.
"""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_VERSION = 1
RNG_ALGORITHM = "numpy-pcg64"


def rng_info(seed: int) -> dict:
    return {"algorithm": RNG_ALGORITHM, "seed": seed}


def format_float(x) -> str:
    return f"{float(x):.17g}"


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if hasattr(obj, "to_dict"):
        return _jsonify(obj.to_dict())
    if hasattr(obj, "tolist"):
        return _jsonify(obj.tolist())
    if isinstance(obj, complex):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return float(obj)


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    body = dict(payload)
    body.setdefault("schema_version", SCHEMA_VERSION)
    text = json.dumps(_jsonify(body), sort_keys=True, indent=2) + "\n"
    path.write_text(text, newline="\n")
    return path


def write_csv(path, header: list, rows: list) -> Path:
    """Rows are sequences; floats are formatted at 17 significant digits,
    everything else with str()."""
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, bool) or isinstance(cell, (str, int)):
                cells.append(str(cell))
            else:
                cells.append(format_float(cell))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", newline="\n")
    return path
