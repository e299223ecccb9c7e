"""Binary and CSV persistence for simulated grids.

Binary layout: a 64-byte little-endian header
    magic 'SFG1' (4s) | version u32 | L u32 | spacing f64 | seed u64 |
    family u32 (0 = ssrf, 1 = bessel-lommel) | eta0 f64 | eta1 f64 |
    xi f64 | kc f64 (IEEE inf allowed for ssrf)
followed by the row-major float64 payload (L*L values).  Files are written
atomically (temp file + rename).
"""

from __future__ import annotations

import os
import struct
import tempfile

import numpy as np

from .models import BlParams, SsrfParams
from .simulate import FieldRealization
from .tables import atomic_write_text

__all__ = ["write_field", "read_field", "write_field_csv"]

MAGIC = b"SFG1"
VERSION = 1
_HEADER = struct.Struct("<4sIIdQIdddd")
assert _HEADER.size == 64

_FAMILY_TAGS = {SsrfParams: 0, BlParams: 1}
_TAG_FAMILIES = {0: SsrfParams, 1: BlParams}


def _pack_header(field: FieldRealization) -> bytes:
    m = field.model
    return _HEADER.pack(MAGIC, VERSION, field.grid_size, field.spacing,
                        field.seed & 0xFFFFFFFFFFFFFFFF, _FAMILY_TAGS[type(m)],
                        m.eta0, m.eta1, m.xi, m.kc)


def write_field(field: FieldRealization, path: str) -> None:
    payload = np.ascontiguousarray(field.values, dtype="<f8").tobytes()
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(_pack_header(field))
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_field(path: str) -> FieldRealization:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        magic, version, L, spacing, seed, tag, eta0, eta1, xi, kc = _HEADER.unpack(header)
        if magic != MAGIC:
            raise ValueError(f"{path}: not a field grid file (bad magic {magic!r})")
        if version != VERSION:
            raise ValueError(f"{path}: unsupported version {version}")
        payload = np.frombuffer(fh.read(8 * L * L), dtype="<f8").reshape(L, L)
    model = _TAG_FAMILIES[tag](eta0=eta0, eta1=eta1, xi=xi, kc=kc, d=2)
    return FieldRealization(values=payload.copy(), spacing=spacing, seed=seed, model=model)


def write_field_csv(field: FieldRealization, path: str) -> None:
    """Plain-text alternative: metadata comments, then L rows of L values."""
    m = field.model
    lines = [
        f"# family={'ssrf' if isinstance(m, SsrfParams) else 'bessel-lommel'}",
        f"# L={field.grid_size}",
        f"# spacing={field.spacing!r}",
        f"# seed={field.seed}",
        f"# eta0={m.eta0!r}",
        f"# eta1={m.eta1!r}",
        f"# xi={m.xi!r}",
        f"# kc={m.kc!r}",
    ]
    for row in field.values:
        lines.append(",".join(repr(float(v)) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
