"""Reader/writer for the "cmat v1" complex matrix text format.

Line 1 is ``cmat <rows> <cols>``; the following rows*cols lines each hold
``re im`` in scientific notation, row-major.  17 significant digits are
written so that a save/load roundtrip is bit-faithful for doubles.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["save_cmat", "load_cmat", "format_cmat", "parse_cmat"]


def format_cmat(m) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    lines = [f"cmat {m.shape[0]} {m.shape[1]}"]
    for v in m.reshape(-1):
        lines.append(f"{v.real:.16e} {v.imag:.16e}")
    return "\n".join(lines) + "\n"


def parse_cmat(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty cmat input")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "cmat":
        raise ValueError(f"bad cmat header: {lines[0]!r}")
    try:
        rows, cols = int(header[1]), int(header[2])
    except ValueError as exc:
        raise ValueError(f"bad cmat header: {lines[0]!r}") from exc
    if rows < 1 or cols < 1:
        raise ValueError("cmat dimensions must be positive")
    if len(lines) - 1 != rows * cols:
        raise ValueError(f"expected {rows * cols} entry lines, got {len(lines) - 1}")
    data = np.empty(rows * cols, dtype=complex)
    for i, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad cmat entry line {i + 2}: {ln!r}")
        data[i] = float(parts[0]) + 1j * float(parts[1])
    return data.reshape(rows, cols)


def save_cmat(path: str | os.PathLike, m) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_cmat(m))


def load_cmat(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return parse_cmat(fh.read())
