"""Corpus-level counts and distributions.

"Words" exclude white-space tokens by default (they are separators, not
words); pass ``include_spaces=True`` to count them in. Named entities and
clauses are counted by their B-labels, which by BIEO legality is the
number of spans.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .format import Corpus, Document
from .schema import BoundaryPrefix, ClauseLabel


@dataclass(frozen=True, slots=True)
class CorpusCounts:
    documents: int = 0
    sentences: int = 0
    clauses: int = 0
    named_entities: int = 0
    words: int = 0
    tokens: int = 0

    def __add__(self, other: "CorpusCounts") -> "CorpusCounts":
        return CorpusCounts(
            self.documents + other.documents,
            self.sentences + other.sentences,
            self.clauses + other.clauses,
            self.named_entities + other.named_entities,
            self.words + other.words,
            self.tokens + other.tokens,
        )

    def to_dict(self) -> dict[str, int]:
        return {
            "documents": self.documents,
            "sentences": self.sentences,
            "clauses": self.clauses,
            "named_entities": self.named_entities,
            "words": self.words,
            "tokens": self.tokens,
        }


def document_counts(doc: Document, include_spaces: bool = False) -> CorpusCounts:
    sentences = clauses = entities = words = tokens = 0
    for sentence in doc.sentences:
        sentences += 1
        for token in sentence.tokens:
            tokens += 1
            if include_spaces or not token.is_space:
                words += 1
            if token.ne.prefix is BoundaryPrefix.B:
                entities += 1
            if token.clause is ClauseLabel.B_CLS:
                clauses += 1
    return CorpusCounts(1, sentences, clauses, entities, words, tokens)


def corpus_counts(corpus: Corpus, include_spaces: bool = False) -> CorpusCounts:
    total = CorpusCounts()
    for doc in corpus.documents:
        total = total + document_counts(doc, include_spaces)
    return total


def genre_histogram(corpus: Corpus) -> Counter:
    """Documents per genre; documents without one land in ``unknown``."""
    histogram: Counter = Counter()
    for doc in corpus.documents:
        histogram[doc.genre if doc.genre else "unknown"] += 1
    return histogram


def tag_frequency(corpus: Corpus, layer: str) -> Counter:
    """Tag histogram for ``layer``: ``pos`` counts every token's POS tag,
    ``ne`` counts entities (B-labels) per category."""
    if layer not in ("pos", "ne"):
        raise ValueError("layer must be 'pos' or 'ne'")
    histogram: Counter = Counter()
    for doc in corpus.documents:
        for sentence in doc.sentences:
            for token in sentence.tokens:
                if layer == "pos":
                    histogram[token.pos.value] += 1
                elif token.ne.prefix is BoundaryPrefix.B:
                    histogram[token.ne.category.value] += 1
    return histogram


def load_manifest(text: str) -> dict[str, str]:
    """Parse a genre manifest: ``<document-id>\\t<genre>`` per line."""
    genres: dict[str, str] = {}
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        doc_id, sep, genre = line.partition("\t")
        if not sep or not doc_id or not genre.strip():
            raise ValueError(f"line {line_no}: expected '<document-id>\\t<genre>'")
        genres[doc_id] = genre.strip()
    return genres
