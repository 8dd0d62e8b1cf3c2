"""Reading, validating and writing family lists (CSV and JSON).

CSV layout::

    id,weights,degree
    18,1;2;2;3;5,12

with optional trailing ``quasi_smooth`` and ``terminal`` columns.  JSON is an
array of ``{"id", "weights", "degree", "quasi_smooth"?, "terminal"?}``
objects; an object with a ``"rows"`` array (as written by ``scan``) is also
accepted, and unknown keys are ignored.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import IO, Iterable, Optional, Union

from wpkstab.core import (
    HypersurfaceFamily,
    InputError,
    WeightSystem,
    fano_index,
    is_linear_cone,
    is_wellformed_ambient,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "FamilyRecord",
    "ParseResult",
    "read_families",
    "parse_family_stream",
    "serialize_families",
    "load_family_file",
    "embedded_threefold_families",
    "PRINTED_NEW_FAMILIES",
    "EXCLUDED_THREEFOLD_IDS",
    "provenance_warnings",
]

CSV_HEADER = ("id", "weights", "degree")
FLAG_COLUMNS = ("quasi_smooth", "terminal")

Source = Union[bytes, str, IO[bytes], IO[str]]


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ValidationError(ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        where = f" [{field}]" if field else ""
        super().__init__(prefix + message + where)


@dataclass(frozen=True)
class FamilyRecord:
    id: int
    weights: tuple[int, ...]
    degree: int
    quasi_smooth: bool = True
    terminal: bool = True

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(sorted(self.weights)))

    @property
    def dim(self) -> int:
        return len(self.weights) - 2

    def to_family(self) -> HypersurfaceFamily:
        return HypersurfaceFamily(
            WeightSystem(self.weights), self.degree, id=self.id,
            quasi_smooth=self.quasi_smooth, terminal=self.terminal,
        )


@dataclass
class ParseResult:
    records: list[FamilyRecord] = field(default_factory=list)
    rejected: list[tuple[int, str]] = field(default_factory=list)


def _decode(source: Source) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    return source


def _int(text, what: str, line: int) -> int:
    if isinstance(text, bool):
        raise ParseError(f"{what} must be an integer, got {text!r}", line)
    if isinstance(text, int):
        return text
    try:
        return int(str(text).strip())
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", line) from None


def _bool(text, what: str, line: int) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise ParseError(f"{what} must be a boolean, got {text!r}", line)


def validate_record(
    rec: FamilyRecord, line: Optional[int] = None, expected_index: Optional[int] = 1
) -> FamilyRecord:
    """Check what is computable from ``(weights, d)``; raise :class:`ValidationError`."""
    if rec.id < 1:
        raise ValidationError(f"id {rec.id} is not positive", "id", line)
    try:
        fam = rec.to_family()
    except InputError as exc:
        raise ValidationError(str(exc), exc.field, line) from None
    if expected_index is not None and fano_index(fam) != expected_index:
        raise ValidationError(
            f"index {fano_index(fam)} != {expected_index} "
            f"(sum {sum(rec.weights)} - degree {rec.degree})", "degree", line,
        )
    if is_linear_cone(fam):
        raise ValidationError(f"linear cone: degree {rec.degree} is a weight", "degree", line)
    if not is_wellformed_ambient(fam.ambient):
        raise ValidationError("ambient space is not well-formed", "weights", line)
    return rec


def _csv_rows(text: str):
    reader = csv.reader(io.StringIO(text))
    columns = None
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        cells = [c.strip() for c in row]
        if columns is None:
            columns = list(CSV_HEADER)
            if cells[0].lower() == "id":
                extra = [c.lower() for c in cells[3:]]
                if [c.lower() for c in cells[:3]] != list(CSV_HEADER) or any(
                    c not in FLAG_COLUMNS for c in extra
                ):
                    raise ParseError(f"unexpected header {row!r}", line)
                columns += extra
                continue
            columns += list(FLAG_COLUMNS[: max(0, len(cells) - 3)])
        if len(cells) != len(columns):
            yield line, ParseError(f"expected {len(columns)} fields, got {len(cells)}", line)
            continue
        yield line, dict(zip(columns, cells))


def _json_rows(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if isinstance(data, dict) and "rows" in data:
        data = data["rows"]
    if not isinstance(data, list):
        raise ParseError("top-level JSON value must be an array of families")
    for i, obj in enumerate(data, 1):
        if not isinstance(obj, dict):
            yield i, ParseError("each family must be a JSON object", i)
            continue
        yield i, obj


def _record(line: int, raw: dict, fmt: str) -> FamilyRecord:
    for key in CSV_HEADER:
        if key not in raw:
            raise ParseError(f"missing field {key!r}", line)
    weights = raw["weights"]
    if fmt == "csv":
        parts = [p for p in weights.split(";")]
        if any(not p.strip() for p in parts):
            raise ParseError(f"malformed weights {weights!r}", line)
        weights = [_int(p, "weight", line) for p in parts]
    elif isinstance(weights, list):
        weights = [_int(p, "weight", line) for p in weights]
    else:
        raise ParseError("weights must be a JSON array", line)
    flags = {k: _bool(raw[k], k, line) for k in FLAG_COLUMNS if raw.get(k) not in (None, "")}
    return FamilyRecord(
        _int(raw["id"], "id", line), tuple(weights), _int(raw["degree"], "degree", line), **flags
    )


def read_families(
    source: Source, fmt: str = "csv", *, expected_index: Optional[int] = 1, strict: bool = True
) -> ParseResult:
    """Parse and validate a family list.

    With ``strict`` the first bad row raises :class:`ParseError` or
    :class:`ValidationError`; otherwise bad rows are collected in
    ``rejected`` as ``(line, reason)`` and parsing continues.  Structural
    damage to the whole document (bad UTF-8, invalid JSON) always raises.
    """
    fmt = fmt.lower()
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    text = _decode(source)
    rows = _csv_rows(text) if fmt == "csv" else _json_rows(text)
    result = ParseResult()
    seen: dict[int, int] = {}
    for line, raw in rows:
        try:
            if isinstance(raw, ParseError):
                raise raw
            rec = validate_record(_record(line, raw, fmt), line, expected_index)
            if rec.id in seen:
                raise ValidationError(f"duplicate id {rec.id} (first on line {seen[rec.id]})", "id", line)
        except (ParseError, ValidationError) as exc:
            if strict:
                raise
            result.rejected.append((line, str(exc)))
            continue
        seen[rec.id] = line
        result.records.append(rec)
    return result


def parse_family_stream(
    source: Source, fmt: str = "csv", *, expected_index: Optional[int] = 1
) -> list[FamilyRecord]:
    """Strict parse: every record is valid or an error names the line."""
    return read_families(source, fmt, expected_index=expected_index).records


def serialize_families(records: Iterable[FamilyRecord], fmt: str = "csv") -> str:
    """Write records in normalized form (weights ascending)."""
    records = list(records)
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps(
            [
                {"id": r.id, "weights": list(r.weights), "degree": r.degree,
                 "quasi_smooth": r.quasi_smooth, "terminal": r.terminal}
                for r in records
            ],
            indent=1,
        ) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    flags = any(not (r.quasi_smooth and r.terminal) for r in records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER + (FLAG_COLUMNS if flags else ()))
    for r in records:
        row = [r.id, ";".join(map(str, r.weights)), r.degree]
        if flags:
            row += [str(r.quasi_smooth).lower(), str(r.terminal).lower()]
        writer.writerow(row)
    return buf.getvalue()


def format_from_path(path: str) -> str:
    return "json" if str(path).lower().endswith(".json") else "csv"


def load_family_file(path, fmt: Optional[str] = None, **kwargs) -> ParseResult:
    with open(path, "rb") as fh:
        return read_families(fh, fmt or format_from_path(path), **kwargs)


@lru_cache(maxsize=None)
def _embedded() -> tuple[FamilyRecord, ...]:
    data = resources.files("wpkstab").joinpath("data/threefolds_index1.csv").read_bytes()
    return tuple(parse_family_stream(data, "csv"))


def embedded_threefold_families() -> list[FamilyRecord]:
    """The 95 index-1 terminal quasi-smooth Fano threefold families.

    Numbered by increasing degree, ties broken by the lexicographic order of
    the ascending weights, which is the numbering used in the literature
    tables (No.1 is the quartic in P^4, No.95 is X_66 ⊂ P(1,5,6,22,33)).
    """
    return list(_embedded())


# Families whose K-stability for all members is new, with their printed data.
PRINTED_NEW_FAMILIES = {
    4: ((1, 1, 1, 2, 2), 6),
    7: ((1, 1, 2, 2, 3), 8),
    9: ((1, 1, 2, 3, 3), 9),
    18: ((1, 2, 2, 3, 5), 12),
    24: ((1, 1, 2, 5, 7), 15),
    31: ((1, 1, 4, 5, 6), 16),
    32: ((1, 2, 3, 4, 7), 16),
    43: ((1, 2, 4, 5, 9), 20),
    46: ((1, 1, 3, 7, 10), 21),
}

EXCLUDED_THREEFOLD_IDS = frozenset({2, 5, 12, 13, 20, 23, 25, 33, 38, 40, 58, 61, 76})


def provenance_warnings(records: Optional[Iterable[FamilyRecord]] = None) -> list[str]:
    """Disagreements between a threefold list and the printed table rows."""
    by_id = {r.id: r for r in (records if records is not None else _embedded())}
    warnings = []
    for i, (ws, d) in PRINTED_NEW_FAMILIES.items():
        rec = by_id.get(i)
        if rec is None:
            warnings.append(f"No.{i}: missing (expected X_{d} ⊂ P{ws})")
        elif rec.weights != ws or rec.degree != d:
            warnings.append(
                f"No.{i}: list has X_{rec.degree} ⊂ P{rec.weights}, table prints X_{d} ⊂ P{ws}"
            )
    return warnings
