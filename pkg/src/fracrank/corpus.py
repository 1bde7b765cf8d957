"""Corpus ingestion: tokenization, term counting, and line-delimited JSON loading."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Maximal runs of Unicode alphanumerics; underscore and punctuation are separators.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


class CorpusError(ValueError):
    """Raised for malformed or inadmissible corpus input."""


def tokenize(text: str) -> list[str]:
    """Split raw text into lowercase alphanumeric tokens.

    Every maximal run of Unicode letters/digits becomes one token; all other
    characters act as separators. Total function: empty input gives [].
    """
    return [m.group(0).lower() for m in _TOKEN_RE.finditer(text)]


@dataclass(frozen=True)
class Document:
    """A tokenized document. ``length`` is the token count and is always >= 1."""

    id: str
    tokens: tuple[str, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.tokens) < 1:
            raise CorpusError(f"document {self.id!r} has no tokens")

    @property
    def length(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable collection of documents with unique ids."""

    documents: tuple[Document, ...]

    def __post_init__(self):
        if len(self.documents) < 1:
            raise CorpusError("corpus must contain at least one document")
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    @property
    def size(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __len__(self) -> int:
        return len(self.documents)


@dataclass(frozen=True)
class Query:
    """Ordered list of distinct lowercase query terms."""

    terms: tuple[str, ...]

    def __post_init__(self):
        if len(self.terms) < 1:
            raise CorpusError("query must contain at least one term")
        norm = tuple(t.lower() for t in self.terms)
        if len(set(norm)) != len(norm):
            raise CorpusError("query terms must be distinct after lowercasing")
        object.__setattr__(self, "terms", norm)

    @classmethod
    def from_string(cls, text: str) -> "Query":
        """Build a query from whitespace/punctuation separated text, deduplicating."""
        seen: list[str] = []
        for tok in tokenize(text):
            if tok not in seen:
                seen.append(tok)
        return cls(tuple(seen))


def count_entries(doc: Document, term: str) -> int:
    """Number of tokens in ``doc`` exactly equal to ``term`` (already lowercase)."""
    return sum(1 for t in doc.tokens if t == term)


def ingest_jsonl(lines: Iterable[str] | str) -> Corpus:
    """Build a Corpus from line-delimited JSON records with ``id`` and ``text`` fields.

    Documents keep input order. Rejects malformed lines (by line number),
    documents that tokenize to zero tokens, and duplicate ids. An optional
    ``meta`` object is preserved on the document.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    docs: list[Document] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: malformed record ({exc.msg})") from exc
        if not isinstance(rec, dict) or "id" not in rec or "text" not in rec:
            raise CorpusError(f"line {lineno}: record must have 'id' and 'text' fields")
        doc_id = rec["id"]
        if not isinstance(doc_id, str):
            raise CorpusError(f"line {lineno}: 'id' must be a string")
        if not isinstance(rec["text"], str):
            raise CorpusError(f"line {lineno}: 'text' must be a string")
        if doc_id in seen:
            raise CorpusError(f"line {lineno}: duplicate document id {doc_id!r}")
        tokens = tokenize(rec["text"])
        if not tokens:
            raise CorpusError(
                f"line {lineno}: document {doc_id!r} is empty after tokenization"
            )
        meta = rec.get("meta") or {}
        docs.append(Document(id=doc_id, tokens=tuple(tokens), meta=meta))
        seen.add(doc_id)
    if not docs:
        raise CorpusError("no documents in input")
    return Corpus(tuple(docs))


def ingest_jsonl_path(path) -> Corpus:
    """ingest_jsonl over a UTF-8 file on disk."""
    with open(path, encoding="utf-8") as fh:
        return ingest_jsonl(fh)
