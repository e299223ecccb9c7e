"""Radial tables (lag or wavenumber grids with values) and their CSV/JSON forms.

The CSV layout is stable: ``# key=value`` metadata comment lines, then a
fixed header row ``abscissa_name,value_name``, then the rows.  JSON output
carries the same content as a single object.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
import numpy as np

__all__ = ["RadialTable", "write_table", "atomic_write_text"]


@dataclass
class RadialTable:
    """Sampled radial function: strictly increasing abscissa plus values."""

    abscissa: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)
    abscissa_name: str = "r"
    value_name: str = "value"

    def __post_init__(self):
        self.abscissa = np.asarray(self.abscissa, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.abscissa.shape != self.values.shape or self.abscissa.ndim != 1:
            raise ValueError("abscissa and values must be 1-D arrays of equal length")
        if np.any(np.diff(self.abscissa) <= 0):
            raise ValueError("abscissa must be strictly increasing")

    def to_csv(self) -> str:
        lines = [f"# {k}={v}" for k, v in sorted(self.metadata.items())]
        lines.append(f"{self.abscissa_name},{self.value_name}")
        for a, v in zip(self.abscissa, self.values):
            lines.append(f"{float(a)!r},{float(v)!r}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "abscissa_name": self.abscissa_name,
            "value_name": self.value_name,
            "abscissa": self.abscissa.tolist(),
            "values": self.values.tolist(),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file and rename, so readers never see partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_table(table: RadialTable, path: str, fmt: str = "csv") -> None:
    if fmt == "csv":
        atomic_write_text(path, table.to_csv())
    elif fmt == "json":
        atomic_write_text(path, table.to_json())
    else:
        raise ValueError(f"unknown table format {fmt!r}")
