"""Reading ``matroid-spec v1`` JSON documents and the built-in test corpus."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .config import DEFAULT_CAPS
from .errors import InputError
from .matroid import Matroid, from_spec

FORMAT_NAME = "matroid-spec v1"

LINE124_FLATS = [[], [1], [2], [3], [4], [1, 3], [2, 3], [3, 4], [1, 2, 4], [1, 2, 3, 4]]

# spec_id -> document; the corpus every acceptance sweep runs over
CORPUS: dict[str, dict[str, Any]] = {
    "B3": {"kind": "uniform", "rank": 3, "elements": 3},
    "B4": {"kind": "uniform", "rank": 4, "elements": 4},
    "U24": {"kind": "uniform", "rank": 2, "elements": 4},
    "U34": {"kind": "uniform", "rank": 3, "elements": 4},
    "U35": {"kind": "uniform", "rank": 3, "elements": 5},
    "K4": {"kind": "graphic", "vertices": 4, "edges": [[1, 2], [1, 3], [2, 3], [1, 4], [2, 4], [3, 4]]},
    "line124": {"kind": "flats", "ground": 4, "flats": LINE124_FLATS},
}


def read_spec(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return doc


def load_spec(path: str | Path, cap: int = DEFAULT_CAPS.atoms) -> Matroid:
    return from_spec(read_spec(path), cap=cap)


def dump_spec(m: Matroid) -> str:
    return json.dumps(m.to_spec(), separators=(",", ":"))
