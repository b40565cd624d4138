"""Streaming transcript ingestion (TSV or JSON lines)."""

from __future__ import annotations

import csv
import json
import logging
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, TextIO

from . import inventory as inv
from .errors import MalformedRecord, NotASyllable, UnknownProvince
from .syllable import canonical_spelling

log = logging.getLogger(__name__)

FORMATS = ("jsonl", "tsv")
_PUNCT = re.compile(r"[^\w\s]|_", re.UNICODE)

csv.field_size_limit(sys.maxsize)


@dataclass
class Utterance:
    id: str
    text: tuple
    province: inv.Province
    dropped_tokens: int = 0

    def to_record(self) -> dict:
        return {"id": self.id, "province": self.province.name, "text": " ".join(self.text)}


@dataclass
class IngestStats:
    records: int = 0
    utterances: int = 0
    malformed: int = 0
    dropped_tokens: int = 0
    quarantined: list = field(default_factory=list)  # (line number, province name)


def clean_tokens(text: str):
    """Normalize, strip punctuation and keep Vietnamese syllables.

    Returns ``(kept tokens, number dropped)``; kept tokens use canonical
    spelling.
    """
    text = _PUNCT.sub(" ", inv.normalize_text(text))
    kept, dropped = [], 0
    for tok in text.split():
        try:
            kept.append(canonical_spelling(tok))
        except NotASyllable:
            dropped += 1
    return tuple(kept), dropped


def _records(handle: TextIO, fmt: str):
    if fmt == "jsonl":
        for n, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                yield n, (str(obj["id"]), obj["province"], obj["text"])
            except (ValueError, KeyError, TypeError) as e:
                yield n, MalformedRecord(f"line {n}: {e}")
    elif fmt == "tsv":
        for n, row in enumerate(csv.reader(handle, delimiter="\t", quoting=csv.QUOTE_NONE), 1):
            if not row or not any(c.strip() for c in row):
                continue
            if len(row) != 3:
                yield n, MalformedRecord(f"line {n}: expected 3 columns, got {len(row)}")
                continue
            yield n, tuple(row)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def read_utterances(handle: TextIO, fmt: str, stats: Optional[IngestStats] = None,
                    registry: inv.ProvinceRegistry = inv.REGISTRY) -> Iterator[Utterance]:
    stats = stats if stats is not None else IngestStats()
    for n, rec in _records(handle, fmt):
        stats.records += 1
        if isinstance(rec, MalformedRecord):
            stats.malformed += 1
            log.warning("skipping %s", rec)
            continue
        uid, province, text = rec
        if not isinstance(text, str) or not isinstance(province, str):
            stats.malformed += 1
            log.warning("skipping line %d: text and province must be strings", n)
            continue
        try:
            prov = registry.resolve(province)
        except UnknownProvince:
            stats.quarantined.append((n, province))
            log.warning("quarantined line %d: unknown province %r", n, province)
            continue
        tokens, dropped = clean_tokens(text)
        stats.utterances += 1
        stats.dropped_tokens += dropped
        yield Utterance(uid, tokens, prov, dropped)


def ingest(path, fmt: Optional[str] = None, stats: Optional[IngestStats] = None,
           registry: inv.ProvinceRegistry = inv.REGISTRY) -> Iterator[Utterance]:
    """Stream utterances from ``path``; the format defaults to the suffix."""
    path = Path(path)
    if fmt is None:
        fmt = "tsv" if path.suffix.lower() == ".tsv" else "jsonl"
    with path.open(encoding="utf-8", newline="") as handle:
        yield from read_utterances(handle, fmt, stats, registry)


def write_utterances(utterances, handle: TextIO, fmt: str) -> None:
    for u in utterances:
        rec = u.to_record()
        if fmt == "jsonl":
            handle.write(json.dumps(rec, ensure_ascii=False) + "\n")
        else:
            handle.write(f"{rec['id']}\t{rec['province']}\t{rec['text']}\n")
