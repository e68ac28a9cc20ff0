"""Atomic CSV/JSON output and body-config loading."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import yaml

from .errors import ConfigError
from .geometry import StarBody, body_from_config

__all__ = ["format_float", "write_csv", "write_json", "write_text_atomic", "load_body_config", "load_body"]

SECTION_HEADER = ("z", "A")
FRACTIONAL_HEADER = ("q", "value", "err_est", "branch")
FOURIER_HEADER = ("q", "lambda", "method", "value", "oracle", "rel_err")


def format_float(x) -> str:
    """17 significant digits, dot decimal separator, independent of locale."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool) or x is None:
        return str(x)
    return "%.17g" % float(x)


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write ``text`` to a temporary file in the target directory, then rename it."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(format_float(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    write_text_atomic(path, csv_text(header, rows))


def json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, payload) -> None:
    write_text_atomic(path, json_text(payload))


def load_body_config(path: str | Path) -> dict:
    """Parse a YAML (or JSON) body config into a mapping."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"body config {str(path)!r} not found", "body")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {str(path)!r}: {exc}", "body") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{str(path)!r} must contain a mapping with keys dimension, kind, params", "body")
    return data


def load_body(path: str | Path) -> StarBody:
    """Load and build the body described by the config at ``path``."""
    return body_from_config(load_body_config(path), Path(path).parent)
