"""Molecule tables, shipped data assets and deterministic CSV/text output."""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cost_model import MolecularInstance

MOLECULE_COLUMNS = ("name", "basis", "N", "R", "M", "alpha")


class TableError(ValueError):
    """Malformed tabular input."""


@dataclass(frozen=True)
class MoleculeRow:
    instance: MolecularInstance
    note: str = ""


@dataclass(frozen=True)
class MoleculeTable:
    rows: tuple[MoleculeRow, ...]
    source: str

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def instances(self) -> list[MolecularInstance]:
        return [r.instance for r in self.rows]


def _parse_positive(value: str, kind, column: str, lineno: int):
    try:
        number = kind(value)
    except ValueError:
        raise TableError(f"line {lineno}: {column}={value!r} is not a valid {kind.__name__}") from None
    if not number > 0:
        raise TableError(f"line {lineno}: {column} must be positive, got {value}")
    return number


def parse_molecules(text: str, source: str = "<string>") -> MoleculeTable:
    """Parse a molecule CSV; extra columns are ignored except ``note``.

    Raises:
        TableError: Missing columns, malformed or duplicate rows, with the line number.
    """
    if not text.strip():
        warnings.warn(f"{source}: empty molecule table", UserWarning, stacklevel=2)
        return MoleculeTable((), source)
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in MOLECULE_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise TableError(f"line 1: header lacks columns {missing}")
    rows, seen = [], set()
    for record in reader:
        lineno = reader.line_num
        if None in record or any(record.get(c) in (None, "") for c in MOLECULE_COLUMNS):
            raise TableError(f"line {lineno}: wrong number of fields")
        key = (record["name"].strip(), record["basis"].strip())
        if key in seen:
            raise TableError(f"line {lineno}: duplicate entry {key[0]}/{key[1]}")
        seen.add(key)
        inst = MolecularInstance(
            key[0],
            key[1],
            _parse_positive(record["N"], int, "N", lineno),
            _parse_positive(record["R"], int, "R", lineno),
            _parse_positive(record["M"], int, "M", lineno),
            _parse_positive(record["alpha"], float, "alpha", lineno),
        )
        rows.append(MoleculeRow(inst, (record.get("note") or "").strip()))
    return MoleculeTable(tuple(rows), source)


def ingest(path) -> MoleculeTable:
    path = Path(path)
    return parse_molecules(path.read_text(), str(path))


def _asset_text(name: str) -> str:
    return resources.files("ftchem").joinpath("data", name).read_text()


def shipped_molecules() -> MoleculeTable:
    return parse_molecules(_asset_text("molecules.csv"), "molecules.csv")


def shipped_counts() -> dict[tuple[str, str], tuple[int, float]]:
    """Serial-T logical counts ``(n_L, n_T)`` keyed by ``(name, basis)``."""
    reader = csv.DictReader(io.StringIO(_asset_text("table1_counts.csv")))
    return {(r["name"], r["basis"]): (int(r["n_L"]), float(r["n_T"])) for r in reader}


def to_csv(columns, rows) -> str:
    """CSV text with ``\\n`` line endings."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def read_csv(text: str) -> tuple[list[str], list[dict[str, str]]]:
    reader = csv.DictReader(io.StringIO(text))
    rows = list(reader)
    return list(reader.fieldnames or []), rows


def to_table(columns, rows) -> str:
    """Aligned text table; numbers right-aligned, text left-aligned."""
    columns = list(columns)
    cells = [[str(row[c]) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]

    def is_number(s: str) -> bool:
        try:
            float(s)
        except ValueError:
            return False
        return True

    def fmt(values) -> str:
        parts = [v.rjust(w) if is_number(v) else v.ljust(w) for v, w in zip(values, widths)]
        return "  ".join(parts).rstrip()

    lines = [fmt(columns), "  ".join("-" * w for w in widths)]
    lines += [fmt(r) for r in cells]
    return "\n".join(lines) + "\n"
