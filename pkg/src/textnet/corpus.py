"""Text ingestion and preprocessing.

Raw text is tokenized into lowercase word forms, stripped of stopwords and
mapped to canonical forms through a lemma table.  Both resources are plain
files so they can be edited or swapped per language:

* stopword file: one token per line, UTF-8; blank lines and lines starting
  with ``#`` are ignored
* lemma file: tab-separated ``surface<TAB>lemma`` pairs, one per line

A surface form absent from the lemma table maps to itself.  A canonical form
that is itself a stopword is dropped as well, so a document never contains a
stopword no matter how sloppy the lemma table is.

Default resources ship with the package.  The ``TEXTNET_RESOURCES``
environment variable may point at a directory with the same layout
(``stopwords/<language>.txt``, ``lemmas/<language>.tsv``) to override them
without touching the installation.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from .errors import DocumentEmptyError, ManifestError

# A token is a maximal run of letters, possibly joined by internal
# apostrophes or hyphens.  Digits and underscores never start or extend one.
_WORD_RE = re.compile(r"[^\W\d_]+(?:['\-][^\W\d_]+)*")


@dataclass(frozen=True)
class RawText:
    """A piece of text as read from disk, before any processing."""

    id: str
    language: str
    content: str


@dataclass(frozen=True)
class Document:
    """A preprocessed token sequence; order matters, duplicates stay."""

    id: str
    tokens: tuple[str, ...]


class Lexicon:
    """Stopword set plus lemma map for one language."""

    def __init__(self, stopwords=(), lemmas=None):
        self.stopwords = frozenset(stopwords)
        self.lemma_map = dict(lemmas) if lemmas else {}

    def lemma(self, token: str) -> str:
        return self.lemma_map.get(token, token)

    @classmethod
    def from_files(cls, stopword_path=None, lemma_path=None) -> "Lexicon":
        stops = load_stopwords(stopword_path) if stopword_path else frozenset()
        lemmas = load_lemmas(lemma_path) if lemma_path else {}
        return cls(stops, lemmas)


def load_stopwords(path) -> frozenset[str]:
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def load_lemmas(path) -> dict[str, str]:
    table = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ManifestError(f"{path}:{lineno}: expected 'surface<TAB>lemma', got {line!r}")
        table[parts[0].lower()] = parts[1].lower()
    return table


def _resource_root():
    override = os.environ.get("TEXTNET_RESOURCES")
    if override:
        return Path(override)
    return None


def default_lexicon(language: str = "en") -> Lexicon:
    """Load the stopword and lemma resources for a language.

    Files under ``TEXTNET_RESOURCES`` win over the packaged ones.  A missing
    lemma table is fine (identity mapping); a missing stopword list is fine
    too (nothing removed).
    """
    root = _resource_root()
    if root is not None:
        stop = root / "stopwords" / f"{language}.txt"
        lem = root / "lemmas" / f"{language}.tsv"
        return Lexicon(
            load_stopwords(stop) if stop.exists() else frozenset(),
            load_lemmas(lem) if lem.exists() else {},
        )
    pkg = importlib_resources.files("textnet") / "resources"
    stop = pkg / "stopwords" / f"{language}.txt"
    lem = pkg / "lemmas" / f"{language}.tsv"
    stops = frozenset()
    lemmas = {}
    if stop.is_file():
        with importlib_resources.as_file(stop) as p:
            stops = load_stopwords(p)
    if lem.is_file():
        with importlib_resources.as_file(lem) as p:
            lemmas = load_lemmas(p)
    return Lexicon(stops, lemmas)


def tokenize(raw: RawText) -> list[str]:
    """Lowercase word tokens in text order.

    Typographic apostrophes are folded to ASCII ones first so contractions
    survive as single tokens.  Anything without a letter is discarded.
    """
    text = raw.content.replace("’", "'").lower()
    return _WORD_RE.findall(text)


def preprocess(raw: RawText, lexicon: Lexicon) -> Document:
    """Tokenize, drop stopwords, then map the rest through the lemma table.

    Raises DocumentEmptyError when nothing survives.
    """
    kept = []
    for token in tokenize(raw):
        if token in lexicon.stopwords:
            continue
        canonical = lexicon.lemma(token)
        if canonical in lexicon.stopwords:
            continue
        kept.append(canonical)
    if not kept:
        raise DocumentEmptyError(f"document {raw.id!r}: no tokens survive preprocessing")
    return Document(id=raw.id, tokens=tuple(kept))


@dataclass(frozen=True)
class CorpusEntry:
    """One manifest row: the text, its optional class label, its origin."""

    text: RawText
    label: str | None
    path: Path


def load_manifest(path) -> list[CorpusEntry]:
    """Read a corpus manifest: a JSON array of objects with ``id``,
    ``language`` and ``path`` fields plus an optional ``label``.

    Relative paths resolve against the manifest's directory.  Duplicate ids,
    missing files and empty files are schema violations reported with the
    offending row number.
    """
    manifest_path = Path(path)
    try:
        rows = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(rows, list):
        raise ManifestError(f"{path}: top level must be a JSON array")
    entries = []
    seen = set()
    for i, row in enumerate(rows, 1):
        where = f"{path}: row {i}"
        if not isinstance(row, dict):
            raise ManifestError(f"{where}: expected an object")
        for key in ("id", "language", "path"):
            if not isinstance(row.get(key), str) or not row[key]:
                raise ManifestError(f"{where}: missing or empty field {key!r}")
        if row["id"] in seen:
            raise ManifestError(f"{where}: duplicate id {row['id']!r}")
        seen.add(row["id"])
        label = row.get("label")
        if label is not None and not isinstance(label, str):
            raise ManifestError(f"{where}: label must be a string when present")
        text_path = Path(row["path"])
        if not text_path.is_absolute():
            text_path = manifest_path.parent / text_path
        try:
            content = text_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ManifestError(f"{where}: cannot read {text_path}: {exc}") from exc
        if not content.strip():
            raise ManifestError(f"{where}: file {text_path} is empty")
        entries.append(
            CorpusEntry(
                text=RawText(id=row["id"], language=row["language"], content=content),
                label=label,
                path=text_path,
            )
        )
    return entries
