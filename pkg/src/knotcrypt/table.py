"""Bundled prime-knot table: fixture parsing, load-time checks and lookup.

Record grammar, one knot per line (blank lines and lines starting with
``#`` are skipped)::

    name | crossings | pd = X(a,b,c,d) ... BASE arc +|- | dt = e1 e2 ...
         | tangle = outer ids / inner ids / NW NE SE SW | chiral = 0|1
         [| mutant = name:R]

Fields are separated by `` | ``.  Crossing ids in ``tangle`` index the PD
items from 0, and the four arcs after the second slash are the cut arcs at
the NW, NE, SE and SW corners of the inner tangle.  The optional ``mutant``
field says that mutating this entry's presentation by rotation ``R``
(one of I, H, V, Z) gives a diagram of the named entry.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .codes import DTCode, extract_dt, format_dt, parse_dt
from .diagram import Diagram, format_pd, is_alternating, is_isomorphic, parse_pd, validate_diagram
from .errors import KnotCryptError, TableError
from .tangles import RotationKind, TanglePresentation, close_presentation, mutate, split_diagram

__all__ = [
    "TableEntry",
    "KnotTable",
    "parse_table",
    "load_table",
    "format_table",
    "default_table",
    "default_table_path",
    "TABLE_ENV",
]

TABLE_ENV = "KNOTCRYPT_TABLE"

_NAME = re.compile(r"(\d+)([an]?)_(\d+)")


@dataclass(frozen=True)
class TableEntry:
    name: str
    crossing_number: int
    index: int
    pd: Diagram
    dt: DTCode
    tangle: TanglePresentation
    inner: tuple[int, ...]
    boundary: tuple[int, int, int, int]
    chiral: bool
    alternating: bool
    mutant: tuple[str, RotationKind] | None = None

    @property
    def sort_key(self):
        return (self.crossing_number, self.index, self.name)


class KnotTable:
    """Immutable, verified collection of :class:`TableEntry` records."""

    def __init__(self, entries):
        self.entries: tuple[TableEntry, ...] = tuple(sorted(entries, key=lambda e: e.sort_key))
        self._by_name = {e.name: e for e in self.entries}
        self._by_dt = {e.dt: e for e in self.entries}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, name: str) -> TableEntry:
        try:
            return self._by_name[name]
        except KeyError:
            raise KnotCryptError(f"unknown knot {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._by_name

    @property
    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def lookup(self, key) -> TableEntry | None:
        """Find an entry by name or by its exact presentation DT code."""
        if isinstance(key, str):
            return self._by_name.get(key)
        try:
            return self._by_dt.get(DTCode(key))
        except KnotCryptError:
            return None


def _fields(line: str, lineno: int) -> dict:
    parts = [p.strip() for p in line.split("|")]
    if len(parts) < 6:
        raise TableError(f"expected at least 6 fields, found {len(parts)}", lineno)
    out = {"name": parts[0], "crossings": parts[1]}
    for part in parts[2:]:
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in ("pd", "dt", "tangle", "chiral", "mutant"):
            raise TableError(f"malformed field {part!r}", lineno)
        if key in out:
            raise TableError(f"field {key!r} given twice", lineno)
        out[key] = value.strip()
    missing = [k for k in ("pd", "dt", "tangle", "chiral") if k not in out]
    if missing:
        raise TableError(f"missing field(s) {', '.join(missing)}", lineno)
    return out


def _ints(text: str, what: str, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split())
    except ValueError:
        raise TableError(f"{what} must be integers: {text!r}", lineno) from None


def _parse_entry(line: str, lineno: int) -> TableEntry:
    f = _fields(line, lineno)
    name = f["name"]
    m = _NAME.fullmatch(name)
    if not m:
        raise TableError(f"bad knot name {name!r}", lineno)
    try:
        crossings = int(f["crossings"])
    except ValueError:
        raise TableError(f"crossing number must be an integer: {f['crossings']!r}", lineno) from None
    if crossings != int(m.group(1)):
        raise TableError(f"{name}: crossing number {crossings} disagrees with the name", lineno)
    try:
        pd = parse_pd(f["pd"], name=name)
        dt = parse_dt(f["dt"])
    except KnotCryptError as exc:
        raise TableError(f"{name}: {exc}", lineno) from None
    report = validate_diagram(pd)
    if not report.ok:
        raise TableError(f"{name}: invalid diagram: {'; '.join(report.violations)}", lineno)
    if pd.n != crossings:
        raise TableError(f"{name}: PD has {pd.n} crossings, expected {crossings}", lineno)

    pieces = f["tangle"].split("/")
    if len(pieces) != 3:
        raise TableError(f"{name}: tangle needs 'outer / inner / NW NE SE SW'", lineno)
    outer = _ints(pieces[0], "outer crossing ids", lineno)
    inner = _ints(pieces[1], "inner crossing ids", lineno)
    boundary = _ints(pieces[2], "boundary arcs", lineno)
    if sorted(outer + inner) != list(range(pd.n)):
        raise TableError(f"{name}: outer and inner ids must partition 0..{pd.n - 1}", lineno)
    if len(boundary) != 4:
        raise TableError(f"{name}: tangle boundary needs four arcs", lineno)
    try:
        tangle = split_diagram(pd, inner, boundary)
    except KnotCryptError as exc:
        raise TableError(f"{name}: {exc}", lineno) from None

    if f["chiral"] not in ("0", "1"):
        raise TableError(f"{name}: chiral must be 0 or 1", lineno)
    mutant = None
    if "mutant" in f:
        target, sep, letter = f["mutant"].partition(":")
        try:
            mutant = (target.strip(), RotationKind.from_letter(letter.strip()))
        except ValueError:
            raise TableError(f"{name}: mutant must look like 'name:R' with R in I H V Z", lineno) from None
        if not sep:
            raise TableError(f"{name}: mutant must look like 'name:R'", lineno)
    return TableEntry(
        name=name,
        crossing_number=crossings,
        index=int(m.group(3)),
        pd=pd,
        dt=dt,
        tangle=tangle,
        inner=tuple(sorted(inner)),
        boundary=boundary,
        chiral=f["chiral"] == "1",
        alternating=is_alternating(pd),
        mutant=mutant,
    )


def _check_entry(e: TableEntry, lineno: int):
    found = extract_dt(e.pd)
    if found != e.dt:
        raise TableError(f"{e.name}: dt {format_dt(e.dt)} but the diagram gives {format_dt(found)}", lineno)
    if not is_isomorphic(close_presentation(e.tangle), e.pd):
        raise TableError(f"{e.name}: closing the tangle presentation does not give the PD diagram", lineno)


def _check_table(entries: list[TableEntry], lines: dict[str, int]):
    seen_dt: dict[DTCode, str] = {}
    for e in entries:
        other = seen_dt.setdefault(e.dt, e.name)
        if other != e.name:
            raise TableError(f"{e.name}: dt code already used by {other}", lines[e.name])
    codes = sorted(seen_dt, key=len)
    for i, short in enumerate(codes):
        for long in codes[i + 1:]:
            if len(long) > len(short) and long[: len(short)] == short:
                name = seen_dt[long]
                raise TableError(f"{name}: dt code has the code of {seen_dt[short]} as a prefix", lines[name])
    by_name = {e.name: e for e in entries}
    for e in entries:
        if e.mutant is None:
            continue
        target, r = e.mutant
        if target not in by_name:
            raise TableError(f"{e.name}: mutant partner {target!r} is not in the table", lines[e.name])
        if not is_isomorphic(mutate(e.tangle, r), by_name[target].pd):
            raise TableError(
                f"{e.name}: rotation {r.letter} does not give the diagram of {target}", lines[e.name]
            )


def parse_table(text: str) -> KnotTable:
    """Parse and verify fixture text; errors carry the 1-based line number."""
    entries = []
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        e = _parse_entry(line, lineno)
        if e.name in lines:
            raise TableError(f"duplicate name {e.name} (first on line {lines[e.name]})", lineno)
        _check_entry(e, lineno)
        lines[e.name] = lineno
        entries.append(e)
    _check_table(entries, lines)
    return KnotTable(entries)


def default_table_path() -> Path:
    override = os.environ.get(TABLE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("knotcrypt") / "data" / "knots.tbl"))


def load_table(source=None) -> KnotTable:
    """Load a table from a path; ``None`` means the default fixture file."""
    path = default_table_path() if source is None else Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableError(f"cannot read table {path}: {exc.strerror}") from None
    return parse_table(text)


@lru_cache(maxsize=8)
def _cached(path: str) -> KnotTable:
    return load_table(path)


def default_table() -> KnotTable:
    """The table at :func:`default_table_path`, loaded once per path."""
    return _cached(str(default_table_path()))


def format_entry(e: TableEntry) -> str:
    outer = [i for i in range(e.pd.n) if i not in e.inner]
    fields = [
        e.name,
        str(e.crossing_number),
        "pd = " + " ".join(format_pd(e.pd).splitlines()),
        "dt = " + format_dt(e.dt),
        "tangle = "
        + " / ".join(" ".join(map(str, part)) for part in (outer, e.inner, e.boundary)),
        f"chiral = {int(e.chiral)}",
    ]
    if e.mutant:
        fields.append(f"mutant = {e.mutant[0]}:{e.mutant[1].letter}")
    return " | ".join(fields)


def format_table(table: KnotTable) -> str:
    return "".join(format_entry(e) + "\n" for e in table.entries)
