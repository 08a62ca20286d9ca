"""Reading and writing per-researcher citation-count files (Publish or Perish style CSV)."""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Optional, Union

DELIMITERS = {"comma": ",", "tab": "\t", ",": ",", "\t": "\t"}


class CorpusError(ValueError):
    pass


class SchemaError(CorpusError):
    def __init__(self, column: str, header: list[str]):
        super().__init__(f"citation column {column!r} not found in header {header}")
        self.column = column


class RowError(CorpusError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyInputError(CorpusError):
    pass


@dataclass(frozen=True)
class WorkRecord:
    title: str
    inlinks: int
    year: Optional[int] = None

    def __post_init__(self):
        if self.inlinks < 0:
            raise ValueError(f"inlinks must be >= 0, got {self.inlinks}")


@dataclass(frozen=True)
class ResearcherProfile:
    name: str
    works: tuple[WorkRecord, ...] = ()
    award_year: Optional[int] = None

    @property
    def n_papers(self) -> int:
        return len(self.works)

    @property
    def counts(self) -> list[int]:
        return [w.inlinks for w in self.works]


@dataclass(frozen=True)
class CitationSchema:
    cites: str = "Cites"
    title: Optional[str] = "Title"
    year: Optional[str] = "Year"
    delimiter: str = ","

    def __post_init__(self):
        object.__setattr__(self, "delimiter", DELIMITERS.get(self.delimiter, self.delimiter))


def _parse_count(raw: str, line: int, column: str) -> int:
    text = raw.strip()
    if not text:
        raise RowError(line, f"empty {column!r} cell")
    try:
        value = int(text, 10)
    except ValueError:
        raise RowError(line, f"{column!r} value {raw!r} is not a base-10 integer") from None
    if value < 0:
        raise RowError(line, f"{column!r} value {value} is negative")
    return value


def _parse_year(raw: str, line: int) -> Optional[int]:
    text = raw.strip()
    if not text:
        return None
    try:
        return int(text, 10)
    except ValueError:
        raise RowError(line, f"year {raw!r} is not an integer") from None


def parse_citation_csv(
    source: Union[bytes, BinaryIO],
    schema: CitationSchema = CitationSchema(),
    name: str = "",
    award_year: Optional[int] = None,
) -> ResearcherProfile:
    """Parse a UTF-8 delimited file with a header row into a profile.

    Rows keep file order. Title and year columns are optional; the citation
    column is not.
    """
    data = source if isinstance(source, (bytes, bytearray)) else source.read()
    text = bytes(data).decode("utf-8-sig")
    if not text.strip():
        raise EmptyInputError("input is empty")
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=schema.delimiter)
    header = [h.strip() for h in next(reader)]
    if schema.cites not in header:
        raise SchemaError(schema.cites, header)
    ci = header.index(schema.cites)
    ti = header.index(schema.title) if schema.title and schema.title in header else None
    yi = header.index(schema.year) if schema.year and schema.year in header else None

    works = []
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) <= ci:
            raise RowError(line, f"row has {len(row)} fields, citation column is field {ci + 1}")
        works.append(
            WorkRecord(
                title=row[ti] if ti is not None and ti < len(row) else "",
                inlinks=_parse_count(row[ci], line, schema.cites),
                year=_parse_year(row[yi], line) if yi is not None and yi < len(row) else None,
            )
        )
    return ResearcherProfile(name=name, works=tuple(works), award_year=award_year)


def read_profile(
    path: Union[str, Path],
    schema: CitationSchema = CitationSchema(),
    name: Optional[str] = None,
    award_year: Optional[int] = None,
) -> ResearcherProfile:
    path = Path(path)
    with path.open("rb") as fh:
        return parse_citation_csv(fh, schema, name=path.stem if name is None else name, award_year=award_year)


def write_citation_csv(profile: ResearcherProfile, schema: CitationSchema = CitationSchema()) -> bytes:
    """Serialize a profile so that ``parse_citation_csv`` reads it back unchanged."""
    buf = io.StringIO(newline="")
    # CRLF (RFC 4180) makes the writer quote any field holding \r or \n
    w = csv.writer(buf, delimiter=schema.delimiter, lineterminator="\r\n")
    w.writerow([schema.title or "Title", schema.cites, schema.year or "Year"])
    for work in profile.works:
        w.writerow([work.title, work.inlinks, "" if work.year is None else work.year])
    return buf.getvalue().encode("utf-8")


def validate_profile(profile: ResearcherProfile) -> list[str]:
    warnings = []
    if not profile.works:
        warnings.append("empty profile: no works")
        return warnings
    if all(w.inlinks == 0 for w in profile.works):
        warnings.append("all works uncited")
    dupes = sorted(t for t, n in Counter(w.title for w in profile.works if w.title).items() if n > 1)
    if dupes:
        warnings.append(f"duplicate titles: {', '.join(repr(t) for t in dupes)}")
    return warnings
