"""Cleansing and normalization of statement text into token lists."""
from __future__ import annotations

import datetime as dt
import hashlib
import json
import re
import string
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import Corpus, Document, parse_date
from .porter import porter_stem

__all__ = [
    "PreprocessConfig",
    "TokenizedDocument",
    "STEPS",
    "STOPWORDS_BEFORE_STEMMING",
    "read_term_file",
    "default_stopwords",
    "default_blocklist",
    "normalize",
    "normalize_corpus",
    "save_tokens",
    "load_tokens",
    "porter_stem",
]

# Stopword and blocklist filtering look at surface forms, before stemming.
STOPWORDS_BEFORE_STEMMING = True

STEPS = (
    "strip_special_characters",
    "lowercase",
    "remove_punctuation",
    "tokenize",
    "drop_blocklist",
    "drop_stopwords",
    "drop_numbers_and_single_chars",
    "stem",
)

_TERM = re.compile(r"^\S+$")


def read_term_file(path) -> frozenset[str]:
    """One term per line, ``#`` comments and blank lines ignored."""
    terms = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term = line.split("#", 1)[0].strip()
            if term:
                terms.add(term)
    return frozenset(terms)


def _bundled(name):
    with resources.as_file(resources.files("fedtopics.data") / name) as p:
        return read_term_file(p)


def default_stopwords() -> frozenset[str]:
    return _bundled("stopwords.txt")


def default_blocklist() -> frozenset[str]:
    return _bundled("blocklist.txt")


@dataclass(frozen=True)
class PreprocessConfig:
    blocklist: frozenset[str] = field(default_factory=default_blocklist)
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    stem: bool = True

    def __post_init__(self):
        for name in ("blocklist", "stopwords"):
            terms = frozenset(getattr(self, name))
            for t in terms:
                if not t or t != t.lower() or not _TERM.match(t):
                    raise ValueError(f"{name} entry {t!r} must be lowercase, non-empty, whitespace-free")
            object.__setattr__(self, name, terms)

    @classmethod
    def from_files(cls, stopwords=None, blocklist=None, stem=True) -> "PreprocessConfig":
        return cls(
            blocklist=read_term_file(blocklist) if blocklist else default_blocklist(),
            stopwords=read_term_file(stopwords) if stopwords else default_stopwords(),
            stem=stem,
        )

    def digest(self) -> str:
        payload = json.dumps(
            {
                "blocklist": sorted(self.blocklist),
                "stopwords": sorted(self.stopwords),
                "stem": self.stem,
                "steps": STEPS,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class TokenizedDocument:
    id: str
    date: dt.date
    tokens: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "date", parse_date(self.date))
        object.__setattr__(self, "tokens", tuple(self.tokens))


_ASCII_KEEP = frozenset(string.ascii_letters + string.digits + string.punctuation + string.whitespace)
_PUNCT_TABLE = str.maketrans({c: " " for c in string.punctuation})
_ALPHA = re.compile(r"^[a-z]+$")


def _strip_special(text: str) -> str:
    # fold accents, then blank out anything outside printable ASCII
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(
        c if c in _ASCII_KEEP else ("" if unicodedata.combining(c) else " ")
        for c in decomposed
    )


def normalize(doc: Document, cfg: PreprocessConfig | None = None) -> TokenizedDocument:
    """Turn a plain-text document into its token list.

    The steps run in the order listed in :data:`STEPS`. Punctuation is
    replaced by a space rather than deleted, so ``"Committee's"`` yields
    ``committee`` and a dropped single-character ``s``.
    """
    cfg = cfg or PreprocessConfig()
    text = _strip_special(doc.text)
    text = text.lower()
    text = text.translate(_PUNCT_TABLE)
    tokens = text.split()
    tokens = [t for t in tokens if t not in cfg.blocklist]
    tokens = [t for t in tokens if t not in cfg.stopwords]
    tokens = [t for t in tokens if len(t) > 1 and not t.isdigit()]
    if cfg.stem:
        tokens = [porter_stem(t) if _ALPHA.match(t) else t for t in tokens]
    return TokenizedDocument(doc.id, doc.date, tuple(tokens))


def normalize_corpus(corpus: Corpus | Iterable[Document], cfg: PreprocessConfig | None = None):
    cfg = cfg or PreprocessConfig()
    return [normalize(d, cfg) for d in corpus]


def save_tokens(docs: Iterable[TokenizedDocument], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for d in docs:
            rec = {"id": d.id, "date": d.date.isoformat(), "tokens": list(d.tokens)}
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def load_tokens(path) -> list[TokenizedDocument]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            rec = json.loads(line)
            out.append(TokenizedDocument(rec["id"], rec["date"], rec["tokens"]))
    return out
