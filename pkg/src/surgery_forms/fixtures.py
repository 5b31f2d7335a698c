"""Access to the transcribed matrices in ``fixtures/paper_matrices.json``.

The directory can be overridden with ``SURGERY_FORMS_FIXTURES``.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

from .matrix import RingMatrix

ENV_VAR = "SURGERY_FORMS_FIXTURES"
FILENAME = "paper_matrices.json"


class FixtureError(RuntimeError):
    pass


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).with_name("fixtures")


@lru_cache(maxsize=4)
def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise FixtureError(f"fixture file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"fixture file is not valid JSON: {path}: {exc}") from exc


def load_raw() -> dict:
    return _load(str(fixture_dir() / FILENAME))


def matrix(*keys: str) -> RingMatrix:
    """Fetch a fixture matrix by key path, e.g. ``matrix("transfer", "j")``."""
    node = load_raw()
    for key in keys:
        try:
            node = node[key]
        except KeyError as exc:
            raise FixtureError(f"fixture entry missing: {'/'.join(keys)}") from exc
    return RingMatrix.from_json(node)


def value(*keys: str):
    node = load_raw()
    for key in keys:
        try:
            node = node[key]
        except KeyError as exc:
            raise FixtureError(f"fixture entry missing: {'/'.join(keys)}") from exc
    return node
