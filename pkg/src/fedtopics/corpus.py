"""Dated statement corpora: loading, fetching, markup stripping and persistence.

The canonical on-disk format is JSONL, one ``{"id", "date", "text"}`` object
per line, ordered by ``(date, id)``.
"""
from __future__ import annotations

import datetime as dt
import hashlib
import html
import json
import os
import re
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DuplicateId,
    EmptyCorpus,
    FedTopicsError,
    MissingField,
    NetworkError,
    UnparseableDate,
)

__all__ = [
    "RawDocument",
    "Document",
    "Corpus",
    "parse_date",
    "load_corpus",
    "save_corpus",
    "read_url_manifest",
    "fetch_statements",
    "strip_markup",
    "corpus_fingerprint",
]


def parse_date(value) -> dt.date:
    if isinstance(value, dt.datetime):
        return value.date()
    if isinstance(value, dt.date):
        return value
    try:
        return dt.date.fromisoformat(str(value))
    except ValueError:
        raise UnparseableDate(f"not an ISO-8601 calendar date: {value!r}") from None


@dataclass(frozen=True)
class RawDocument:
    id: str
    date: dt.date
    html_or_text: str
    source_url: str | None = None

    def __post_init__(self):
        if not self.id:
            raise MissingField("document id must be non-empty")
        object.__setattr__(self, "date", parse_date(self.date))


@dataclass(frozen=True)
class Document:
    id: str
    date: dt.date
    text: str

    def __post_init__(self):
        if not self.id:
            raise MissingField("document id must be non-empty")
        object.__setattr__(self, "date", parse_date(self.date))

    @property
    def key(self):
        return (self.date, self.id)


@dataclass(frozen=True)
class Corpus:
    """Documents strictly ordered by ``(date, id)``; ``M = len(corpus)``."""

    documents: tuple[Document, ...]

    def __post_init__(self):
        docs = tuple(self.documents)
        if not docs:
            raise EmptyCorpus("a corpus needs at least one document")
        for prev, cur in zip(docs, docs[1:]):
            if not prev.key < cur.key:
                raise ValueError(
                    f"documents out of order: {prev.key} then {cur.key}; "
                    "use Corpus.from_documents to sort"
                )
        object.__setattr__(self, "documents", docs)

    @classmethod
    def from_documents(cls, docs: Iterable[Document]) -> "Corpus":
        docs = list(docs)
        seen = set()
        for d in docs:
            if d.id in seen:
                raise DuplicateId(f"duplicate document id {d.id!r}")
            seen.add(d.id)
        return cls(tuple(sorted(docs, key=lambda d: d.key)))

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __getitem__(self, i):
        return self.documents[i]

    @property
    def dates(self) -> list[dt.date]:
        return [d.date for d in self.documents]

    @property
    def ids(self) -> list[str]:
        return [d.id for d in self.documents]


def corpus_fingerprint(docs: Iterable) -> str:
    """Hash of the ordered ``(id, date)`` sequence of any document-like items."""
    h = hashlib.sha256()
    for d in docs:
        h.update(f"{d.id}\t{d.date.isoformat()}\n".encode("utf-8"))
    return h.hexdigest()


# -- JSONL / text_dir loading -------------------------------------------------

_DATE_PREFIX = re.compile(r"^(\d{4}-\d{2}-\d{2})")


def _load_jsonl(path: Path) -> list[Document]:
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            rec = json.loads(line)
            missing = [k for k in ("id", "date", "text") if k not in rec]
            if missing:
                raise MissingField(f"{path}:{lineno}: missing {', '.join(missing)}")
            docs.append(Document(str(rec["id"]), parse_date(rec["date"]), rec["text"]))
    return docs


def _load_text_dir(path: Path) -> list[Document]:
    docs = []
    for entry in sorted(path.iterdir()):
        if not entry.is_file() or entry.name.startswith("."):
            continue
        m = _DATE_PREFIX.match(entry.name)
        if m is None:
            raise UnparseableDate(f"{entry.name}: file name lacks a YYYY-MM-DD prefix")
        text = entry.read_text(encoding="utf-8")
        date = parse_date(m.group(1))
        if entry.suffix.lower() in (".htm", ".html"):
            text = strip_markup(RawDocument(entry.stem, date, text)).text
        docs.append(Document(entry.stem, date, text))
    return docs


def load_corpus(path, format: str = "jsonl") -> Corpus:
    """Load a corpus from a JSONL file or a directory of dated text files.

    Raises
    ------
    MissingField, UnparseableDate, DuplicateId, EmptyCorpus
    """
    path = Path(path)
    if format == "jsonl":
        docs = _load_jsonl(path)
    elif format == "text_dir":
        docs = _load_text_dir(path)
    else:
        raise ValueError(f"unknown corpus format {format!r}")
    if not docs:
        raise EmptyCorpus(f"{path} contains no documents")
    return Corpus.from_documents(docs)


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for d in corpus:
            rec = {"id": d.id, "date": d.date.isoformat(), "text": d.text}
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


# -- markup stripping ---------------------------------------------------------

_BLOCK_TAGS = frozenset(
    "address article aside blockquote br dd div dl dt fieldset figcaption figure "
    "footer form h1 h2 h3 h4 h5 h6 header hr li main nav ol p pre section table "
    "tbody td tfoot th thead tr ul".split()
)
_SKIP_TAGS = frozenset(("script", "style", "noscript", "template"))


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts = []
        self._skip = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip += 1
        elif tag in _BLOCK_TAGS:
            self.parts.append(" ")

    def handle_startendtag(self, tag, attrs):
        if tag in _BLOCK_TAGS:
            self.parts.append(" ")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip = max(0, self._skip - 1)
        elif tag in _BLOCK_TAGS:
            self.parts.append(" ")

    def handle_data(self, data):
        if not self._skip:
            self.parts.append(data)


_WS = re.compile(r"\s+")
_LEFTOVER_ENTITY = re.compile(r"&\w+;")


def strip_markup(raw: RawDocument) -> Document:
    """Remove tags, decode entities and collapse whitespace.

    The result never contains ``<``, ``>`` or an ``&name;`` sequence, even when
    the payload double-escapes entities or holds stray angle brackets.
    """
    parser = _TextExtractor()
    parser.feed(raw.html_or_text)
    parser.close()
    text = "".join(parser.parts)
    while True:
        decoded = html.unescape(text)
        if decoded == text:
            break
        text = decoded
    text = text.replace("<", " ").replace(">", " ")
    while _LEFTOVER_ENTITY.search(text):
        text = _LEFTOVER_ENTITY.sub(" ", text)
    text = _WS.sub(" ", text).strip()
    return Document(raw.id, raw.date, text)


# -- fetching -----------------------------------------------------------------

_URL_DATE = re.compile(r"(\d{4})(\d{2})(\d{2})")


def read_url_manifest(path) -> list[tuple[str | None, str]]:
    """Parse a fetch manifest: one URL per line, optionally ``YYYY-MM-DD URL``.

    Blank lines and ``#`` comments are ignored.
    """
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 2:
                entries.append((parts[0], parts[1]))
            else:
                entries.append((None, parts[0]))
    return entries


def _doc_meta(url: str, date_hint: str | None) -> tuple[str, dt.date]:
    stem = os.path.splitext(url.rstrip("/").rsplit("/", 1)[-1])[0] or "statement"
    if date_hint is not None:
        return stem, parse_date(date_hint)
    m = _URL_DATE.search(stem) or _URL_DATE.search(url)
    if m is None:
        raise UnparseableDate(f"{url}: no YYYYMMDD date in URL and no date given")
    try:
        return stem, dt.date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    except ValueError:
        raise UnparseableDate(f"{url}: {m.group(0)} is not a calendar date") from None


def _fetch_one(url: str, timeout: float) -> str:
    req = urllib.request.Request(url, headers={"User-Agent": "fedtopics/0.1"})
    with urllib.request.urlopen(req, timeout=timeout) as resp:
        charset = resp.headers.get_content_charset() or "utf-8"
        return resp.read().decode(charset, errors="replace")


def fetch_statements(
    urls: Sequence,
    out=None,
    *,
    timeout: float = 30.0,
    max_workers: int = 4,
) -> tuple[list[RawDocument], list[FedTopicsError]]:
    """Download statement pages.

    ``urls`` holds plain URL strings or ``(date_or_None, url)`` pairs as
    returned by :func:`read_url_manifest`. Failures never abort the batch:
    they come back in the second list, in input order, next to the
    successfully fetched documents. When ``out`` is given the raw documents
    are written to ``out/raw.jsonl``.
    """
    entries = [(None, u) if isinstance(u, str) else tuple(u) for u in urls]

    def work(entry):
        hint, url = entry
        try:
            doc_id, date = _doc_meta(url, hint)
        except FedTopicsError as exc:
            return exc
        try:
            payload = _fetch_one(url, timeout)
        except (urllib.error.URLError, OSError, ValueError) as exc:
            return NetworkError(url, getattr(exc, "reason", exc))
        return RawDocument(doc_id, date, payload, source_url=url)

    if entries:
        with ThreadPoolExecutor(max_workers=max(1, min(max_workers, len(entries)))) as pool:
            results = list(pool.map(work, entries))
    else:
        results = []

    docs = [r for r in results if isinstance(r, RawDocument)]
    errors = [r for r in results if not isinstance(r, RawDocument)]
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "raw.jsonl", "w", encoding="utf-8", newline="\n") as fh:
            for d in docs:
                rec = {
                    "id": d.id,
                    "date": d.date.isoformat(),
                    "source_url": d.source_url,
                    "html_or_text": d.html_or_text,
                }
                fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    return docs, errors
