"""Reading and writing contexts: Burmeister ``.cxt`` and a cross-table CSV."""
from __future__ import annotations

import csv
import io
from pathlib import Path

from .bits import make_mask
from .context import FormalContext
from .errors import ContextError, ParseError


def parse_cxt(text: str) -> FormalContext:
    """Parse a Burmeister file.

    Layout: ``B``, an optional name line, blank line(s), |G|, |M|, blank
    line(s), the object names, the attribute names, then |G| rows of |M|
    characters from ``X``, ``x`` and ``.``.
    """
    lines = text.splitlines()
    pos = 0

    def line_no() -> int:
        return pos + 1

    if not lines or lines[0].strip() != "B":
        raise ParseError("expected 'B' on the first line", 1, 1)
    pos = 1
    skipped = 0
    while pos < len(lines) and not lines[pos].strip().isdigit():
        skipped += 1
        pos += 1
        if skipped > 2:
            raise ParseError("expected the number of objects", line_no() - 1)
    counts = []
    for what in ("objects", "attributes"):
        if pos >= len(lines) or not lines[pos].strip().isdigit():
            raise ParseError(f"expected the number of {what}", line_no())
        counts.append(int(lines[pos].strip()))
        pos += 1
    n_objects, n_attributes = counts
    while pos < len(lines) and not lines[pos].strip():
        pos += 1

    def take_names(n: int, what: str) -> list[str]:
        nonlocal pos
        names = []
        for _ in range(n):
            if pos >= len(lines):
                raise ParseError(f"unexpected end of file while reading {what} names", line_no())
            names.append(lines[pos].strip())
            pos += 1
        return names

    objects = take_names(n_objects, "object")
    attributes = take_names(n_attributes, "attribute")
    rows = []
    for _ in range(n_objects):
        if pos >= len(lines):
            raise ParseError("unexpected end of file while reading the cross table", line_no())
        row = lines[pos].rstrip()
        for col, ch in enumerate(row, start=1):
            if ch not in "Xx.":
                raise ParseError(f"unexpected character {ch!r} in cross table", line_no(), col)
        if len(row) != n_attributes:
            raise ParseError(f"row has {len(row)} cells, expected {n_attributes}", line_no(), len(row) + 1)
        rows.append(make_mask(j for j, ch in enumerate(row) if ch in "Xx"))
        pos += 1
    for k in range(pos, len(lines)):
        if lines[k].strip():
            raise ParseError("trailing content after the cross table", k + 1)
    try:
        return FormalContext(objects, attributes, rows)
    except ContextError as exc:
        raise ParseError(str(exc)) from None


def format_cxt(context: FormalContext) -> str:
    out = ["B", "", str(context.n_objects), str(context.n_attributes), ""]
    out.extend(context.objects)
    out.extend(context.attributes)
    for row in context.rows:
        out.append("".join("X" if row >> j & 1 else "." for j in range(context.n_attributes)))
    return "\n".join(out) + "\n"


def parse_csv(text: str) -> FormalContext:
    """Header row holds attribute names (first cell ignored); each following
    row is an object name and cells ``1``/``0`` or ``X``/``.``."""
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise ParseError("empty CSV", 1)
    attributes = [a.strip() for a in table[0][1:]]
    objects = []
    rows = []
    for line_no, record in enumerate(table[1:], start=2):
        if len(record) != len(attributes) + 1:
            raise ParseError(f"expected {len(attributes) + 1} fields, got {len(record)}", line_no)
        objects.append(record[0].strip())
        row = 0
        for j, cell in enumerate(record[1:]):
            cell = cell.strip()
            if cell in ("1", "X", "x"):
                row |= 1 << j
            elif cell not in ("0", ".", ""):
                raise ParseError(f"unexpected cell value {cell!r}", line_no, j + 2)
        rows.append(row)
    try:
        return FormalContext(objects, attributes, rows)
    except ContextError as exc:
        raise ParseError(str(exc)) from None


def format_csv(context: FormalContext) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(context.attributes))
    for g, row in zip(context.objects, context.rows):
        writer.writerow([g] + ["X" if row >> j & 1 else "." for j in range(context.n_attributes)])
    return buf.getvalue()


def read_context(path: str | Path, fmt: str | None = None) -> FormalContext:
    path = Path(path)
    if fmt is None:
        fmt = path.suffix.lower().lstrip(".")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ContextError(f"cannot read {path}: {exc.strerror}") from None
    if fmt == "cxt":
        return parse_cxt(text)
    if fmt == "csv":
        return parse_csv(text)
    raise ContextError(f"unknown context format {fmt!r} (use .cxt or .csv)")


def write_context(context: FormalContext, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or path.suffix.lower().lstrip(".")
    if fmt == "cxt":
        path.write_text(format_cxt(context), encoding="utf-8")
    elif fmt == "csv":
        path.write_text(format_csv(context), encoding="utf-8")
    else:
        raise ContextError(f"unknown context format {fmt!r} (use .cxt or .csv)")
