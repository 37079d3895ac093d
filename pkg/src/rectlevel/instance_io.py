"""Text instance format.

::

    # comment
    rects 1
    x_min y_min x_max y_max
    ...
"""
from __future__ import annotations

import os
import tempfile

from .geometry import Family

FORMAT_HEADER = "rects 1"


class InstanceFormatError(ValueError):
    pass


def loads(text: str) -> Family:
    rows = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line.split() != FORMAT_HEADER.split():
                raise InstanceFormatError(f"line {lineno}: expected header {FORMAT_HEADER!r}, got {line!r}")
            header_seen = True
            continue
        parts = line.split()
        if len(parts) != 4:
            raise InstanceFormatError(f"line {lineno}: expected 4 integers, got {len(parts)} fields")
        try:
            rows.append(tuple(int(p) for p in parts))
        except ValueError:
            raise InstanceFormatError(f"line {lineno}: non-integer coordinate in {line!r}") from None
    if not header_seen:
        raise InstanceFormatError(f"missing header {FORMAT_HEADER!r}")
    try:
        return Family.from_coords(rows)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None


def dumps(f: Family, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(FORMAT_HEADER)
    lines.extend(" ".join(str(c) for c in r.coords) for r in f)
    return "\n".join(lines) + "\n"


def read_instance(path) -> Family:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def atomic_write_text(path, text: str) -> None:
    """Write via a temp file in the target directory, then rename over ``path``."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_instance(path, f: Family, comment: str | None = None) -> None:
    atomic_write_text(path, dumps(f, comment))
