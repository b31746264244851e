"""Multilingual word lists: records, CSV ingestion (wide and long) and shared-word lookup."""

from __future__ import annotations

import csv
import io
import unicodedata
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional


class Language(str, Enum):
    SANSKRIT = "Sanskrit"
    HINDI = "Hindi"
    PUNJABI = "Punjabi"
    MARATHI = "Marathi"
    KANNADA = "Kannada"
    TAMIL = "Tamil"
    TELUGU = "Telugu"
    ENGLISH = "English"

    @classmethod
    def parse(cls, name: str) -> "Language":
        key = name.strip().lower()
        for lang in cls:
            if lang.value.lower() == key:
                return lang
        raise SchemaError(f"unknown language {name!r}")

    def __str__(self) -> str:
        return self.value


class Category(str, Enum):
    PREPOSITIONS = "prepositions"
    KINSHIP = "kinship"
    PEOPLE = "people"
    PRONOUNS = "pronouns"
    NUMBER = "number"
    ANATOMY = "anatomy"
    ANIMALS = "animals"
    AGRICULTURE = "agriculture"
    BODILY_FUNCTIONS = "bodily_functions"
    MENTAL_FUNCTIONS = "mental_functions"
    NATURE = "nature"
    DIRECTIONS = "directions"
    FABRICATION = "fabrication"
    MOTION = "motion"
    TIME = "time"
    COMMON = "common"
    ADJECTIVE = "adjective"
    MISCELLANEOUS = "miscellaneous"

    @classmethod
    def parse(cls, name: str) -> "Category":
        key = name.strip().lower().replace(" ", "_")
        try:
            return cls(key)
        except ValueError:
            raise SchemaError(f"unknown category {name!r}") from None

    @property
    def title(self) -> str:
        return self.value.replace("_", " ").title()

    def __str__(self) -> str:
        return self.value


class LexiconError(ValueError):
    """Base class for ingestion failures."""


class ParseError(LexiconError):
    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class SchemaError(LexiconError):
    pass


class ValidationError(LexiconError):
    pass


def normalize(text: str) -> str:
    """NFC-normalize and trim; diacritics are kept."""
    return unicodedata.normalize("NFC", text).strip()


def surface_key(surface: str) -> str:
    """Comparison key for surfaces: NFC + lower case."""
    return normalize(surface).lower()


@dataclass(frozen=True)
class WordRecord:
    id: str
    concept_id: str
    language: Optional[Language]
    surface: str
    meaning: Optional[str] = None
    category: Category = Category.MISCELLANEOUS

    @property
    def key(self) -> str:
        return surface_key(self.surface)


@dataclass(frozen=True)
class Lexicon:
    records: tuple[WordRecord, ...] = ()
    shared_index: dict[str, frozenset[Language]] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        seen: set[str] = set()
        for rec in records:
            if not rec.surface.strip():
                raise ValidationError(f"record {rec.id!r} has an empty surface")
            if not isinstance(rec.language, Language):
                raise ValidationError(f"record {rec.id!r} has no valid language")
            if rec.id in seen:
                raise ValidationError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)
        object.__setattr__(self, "shared_index", _shared_index(records))

    @property
    def languages(self) -> tuple[Language, ...]:
        """Languages present, in order of first appearance."""
        return tuple(dict.fromkeys(r.language for r in self.records))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def _shared_index(records: Iterable[WordRecord]) -> dict[str, frozenset[Language]]:
    by_surface: dict[str, set[Language]] = defaultdict(set)
    for rec in records:
        by_surface[rec.key].add(rec.language)
    return {s: frozenset(langs) for s, langs in by_surface.items() if len(langs) >= 2}


def shared_words(lexicon: Lexicon) -> dict[str, frozenset[Language]]:
    """Surfaces (lower-cased NFC) that occur under two or more languages."""
    return dict(lexicon.shared_index)


def _read_rows(csv_text: str) -> tuple[list[str], list[tuple[int, list[str]]]]:
    reader = csv.reader(io.StringIO(csv_text.lstrip("﻿")), strict=True)
    try:
        rows = [(reader.line_num, row) for row in reader]
    except csv.Error as exc:
        raise ParseError(str(exc), row=reader.line_num) from None
    rows = [(n, r) for n, r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError("missing header row", row=1)
    (_, header), body = rows[0], rows[1:]
    header = [h.strip().lower() for h in header]
    for n, row in body:
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", row=n)
    return header, body


def ingest_wide(csv_text: str) -> Lexicon:
    """One row per concept keyed by its English word, one column per language.

    Empty language cells are treated as missing words. ``meaning`` and
    ``category`` columns, when present, are cascaded to every language.
    """
    header, body = _read_rows(csv_text)
    if "english" not in header:
        raise SchemaError("wide CSV needs an 'english' column")
    lang_cols: list[tuple[int, Language]] = []
    meaning_col = category_col = None
    for i, name in enumerate(header):
        if name == "meaning":
            meaning_col = i
        elif name == "category":
            category_col = i
        else:
            lang_cols.append((i, Language.parse(name)))
    if len({lang for _, lang in lang_cols}) != len(lang_cols):
        raise SchemaError("duplicate language column")

    english_col = header.index("english")
    records: list[WordRecord] = []
    concepts: set[str] = set()
    for n, row in body:
        concept = surface_key(row[english_col])
        if not concept:
            raise ValidationError(f"row {n}: empty english cell")
        if concept in concepts:
            raise ValidationError(f"row {n}: duplicate concept_id {concept!r}")
        concepts.add(concept)
        meaning = normalize(row[meaning_col]) if meaning_col is not None else ""
        try:
            category = (
                Category.parse(row[category_col])
                if category_col is not None and row[category_col].strip()
                else Category.MISCELLANEOUS
            )
        except SchemaError as exc:
            raise SchemaError(f"row {n}: {exc}") from None
        for col, lang in lang_cols:
            surface = normalize(row[col])
            if not surface:
                continue
            records.append(
                WordRecord(
                    id=f"{concept}-{lang.value}",
                    concept_id=concept,
                    language=lang,
                    surface=surface,
                    meaning=meaning or None,
                    category=category,
                )
            )
    return Lexicon(tuple(records))


LONG_COLUMNS = ("id", "concept_id", "language", "surface", "meaning", "category")


def ingest_long(csv_text: str) -> Lexicon:
    header, body = _read_rows(csv_text)
    missing = [c for c in LONG_COLUMNS if c not in header and c != "meaning"]
    if missing:
        raise SchemaError(f"long CSV missing columns: {', '.join(missing)}")
    col = {name: header.index(name) for name in LONG_COLUMNS if name in header}
    records = []
    for n, row in body:
        try:
            language = Language.parse(row[col["language"]])
            category = Category.parse(row[col["category"]])
        except SchemaError as exc:
            raise SchemaError(f"row {n}: {exc}") from None
        surface = normalize(row[col["surface"]])
        if not surface:
            raise ValidationError(f"row {n}: empty surface")
        meaning = normalize(row[col["meaning"]]) if "meaning" in col else ""
        records.append(
            WordRecord(
                id=row[col["id"]].strip(),
                concept_id=row[col["concept_id"]].strip(),
                language=language,
                surface=surface,
                meaning=meaning or None,
                category=category,
            )
        )
    return Lexicon(tuple(records))


def read_queries(csv_text: str) -> list[WordRecord]:
    """Query words for classification: ``id`` and ``surface`` are required,
    ``language`` may be blank (it is only used as ground truth)."""
    header, body = _read_rows(csv_text)
    for name in ("id", "surface"):
        if name not in header:
            raise SchemaError(f"query CSV missing column {name!r}")
    col = {name: header.index(name) for name in LONG_COLUMNS if name in header}

    def cell(row, name):
        return normalize(row[col[name]]) if name in col else ""

    out = []
    for n, row in body:
        try:
            lang = Language.parse(cell(row, "language")) if cell(row, "language") else None
            cat = Category.parse(cell(row, "category")) if cell(row, "category") else Category.MISCELLANEOUS
        except SchemaError as exc:
            raise SchemaError(f"row {n}: {exc}") from None
        if not cell(row, "surface"):
            raise ValidationError(f"row {n}: empty surface")
        out.append(
            WordRecord(
                id=cell(row, "id"),
                concept_id=cell(row, "concept_id") or cell(row, "id"),
                language=lang,
                surface=cell(row, "surface"),
                meaning=cell(row, "meaning") or None,
                category=cat,
            )
        )
    return out


def to_long_csv(records: Iterable[WordRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(LONG_COLUMNS)
    for r in records:
        writer.writerow(
            [r.id, r.concept_id, r.language.value if r.language else "", r.surface, r.meaning or "", r.category.value]
        )
    return buf.getvalue()


def load_lexicon(csv_text: str) -> Lexicon:
    """Dispatch on the header: long files carry ``surface`` and ``language`` columns."""
    header, _ = _read_rows(csv_text)
    if "surface" in header and "language" in header:
        return ingest_long(csv_text)
    return ingest_wide(csv_text)
