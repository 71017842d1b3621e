"""Deterministic file output: shortest round-trip floats, atomic writes.

Output files carry no timestamps and no machine-specific content, so two
runs with the same configuration are byte-identical.  Floats are printed
with Python's shortest round-trip representation (at most 17 significant
digits); parsing a value back with float() recovers the exact binary it
was written from, which makes every CSV round-trippable byte for byte.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path


def fmt_float(x: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(x))


def fmt_complex(z: complex) -> dict[str, str]:
    z = complex(z)
    return {"re": fmt_float(z.real), "im": fmt_float(z.imag)}


def _atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    """Write a comma-separated file with LF line endings, atomically."""
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    _atomic_write_text(Path(path), "\n".join(lines) + "\n")


def read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    text = Path(path).read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def write_json(path: Path, payload: dict) -> None:
    """Serialize with stable key order (insertion order) and a trailing newline."""
    _atomic_write_text(Path(path), json.dumps(payload, indent=2) + "\n")


def json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2)
