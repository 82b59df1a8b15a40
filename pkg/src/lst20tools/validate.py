"""Lint engine: located diagnostics for label sequences and token-level rules.

Structural label violations are errors; guideline-preference rules
(verbless clauses, singleton clause marks, punctuation/URL splitting) are
warnings. Space tokens may sit inside a clause (I_CLS) or outside (O);
neither is flagged.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .format import Document, Sentence
from .schema import BoundaryPrefix, ClauseLabel, PosTag

LAYER_POS = "POS"
LAYER_NE = "NE"
LAYER_CLS = "CLS"
LAYER_FORMAT = "FORMAT"

#: The closed diagnostic code list.
CODES = (
    "NE_ORPHAN_I",
    "NE_ORPHAN_E",
    "NE_CAT_MISMATCH",
    "NE_UNTERMINATED",
    "CLS_ORPHAN_I",
    "CLS_ORPHAN_E",
    "CLS_UNTERMINATED",
    "CLS_SINGLETON",
    "CLS_NO_VERB",
    "SPACE_NOT_PU",
    "URL_SPLIT",
    "PUNCT_RUN_SPLIT",
    "FORMAT_SPACE_IN_SURFACE",
    "FORMAT_LINE",
    "FORMAT_TOKEN",
)


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class LintIssue:
    severity: Severity
    code: str
    message: str
    sentence: Optional[int]
    token: Optional[int]
    layer: str

    def to_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
            "sentence": self.sentence,
            "token": self.token,
            "layer": self.layer,
        }


@dataclass(frozen=True, slots=True)
class LintReport:
    issues: tuple[LintIssue, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "issues", tuple(self.issues))

    @property
    def counts(self) -> dict[Severity, int]:
        tally = {Severity.ERROR: 0, Severity.WARNING: 0}
        for issue in self.issues:
            tally[issue.severity] += 1
        return tally

    @property
    def error_count(self) -> int:
        return self.counts[Severity.ERROR]

    @property
    def warning_count(self) -> int:
        return self.counts[Severity.WARNING]

    def to_dicts(self) -> list[dict]:
        return [issue.to_dict() for issue in self.issues]


def _issue(severity, code, message, sentence, token, layer) -> LintIssue:
    return LintIssue(severity, code, message, sentence, token, layer)


def _boundary_issues(pairs, code_prefix, layer, sentence_idx):
    """Walk (prefix, category) pairs through the BIEO automaton.

    Returns (issues, lone_b_positions). After a violation the walker
    resynchronises on the offending label, so a single corruption yields a
    single diagnostic.
    """
    issues = []
    lone_b = []

    def err(code, message, position):
        issues.append(
            _issue(Severity.ERROR, f"{code_prefix}_{code}", message, sentence_idx, position, layer)
        )

    open_span = None  # (prefix, category, start index) while a span is open
    span_ok = True  # False once this span has already been reported
    for i, (prefix, category) in enumerate(pairs):
        if prefix is BoundaryPrefix.I:
            if open_span is None:
                err("ORPHAN_I", "I-label with no open span", i)
                span_ok = False
            elif open_span[1] != category:
                err(
                    "CAT_MISMATCH",
                    f"category changes from {open_span[1]} to {category} mid-span",
                    i,
                )
                span_ok = False
            open_span = (BoundaryPrefix.I, category, i)
        elif prefix is BoundaryPrefix.E:
            if open_span is None:
                err("ORPHAN_E", "E-label with no open span", i)
            elif open_span[1] != category:
                err(
                    "CAT_MISMATCH",
                    f"category changes from {open_span[1]} to {category} mid-span",
                    i,
                )
            open_span = None
            span_ok = True
        else:  # O or B
            if open_span is not None:
                if open_span[0] is BoundaryPrefix.I and span_ok:
                    err("UNTERMINATED", "open span not closed by an E-label", i)
                elif open_span[0] is BoundaryPrefix.B:
                    lone_b.append(open_span[2])
            open_span = (
                (BoundaryPrefix.B, category, i) if prefix is BoundaryPrefix.B else None
            )
            span_ok = True
    if open_span is not None:
        if open_span[0] is BoundaryPrefix.I and span_ok:
            err("UNTERMINATED", "span still open at sentence end", len(pairs) - 1)
        elif open_span[0] is BoundaryPrefix.B:
            lone_b.append(open_span[2])
    return issues, lone_b


def validate_ne_sequence(sentence: Sentence, sentence_idx: int = 0) -> list[LintIssue]:
    """BIEO legality of the NE layer. Lone B is a legal single-token entity."""
    pairs = [(t.ne.prefix, t.ne.category) for t in sentence.tokens]
    issues, _ = _boundary_issues(pairs, "NE", LAYER_NE, sentence_idx)
    return issues


_CLAUSE_PREFIX = {
    ClauseLabel.B_CLS: BoundaryPrefix.B,
    ClauseLabel.I_CLS: BoundaryPrefix.I,
    ClauseLabel.E_CLS: BoundaryPrefix.E,
    ClauseLabel.O: BoundaryPrefix.O,
}


def _clause_spans(labels) -> list[tuple[int, int]]:
    """Well-formed clause spans: B..E runs and lone Bs. Broken runs are skipped."""
    spans = []
    i = 0
    n = len(labels)
    while i < n:
        if labels[i] is not ClauseLabel.B_CLS:
            i += 1
            continue
        j = i + 1
        while j < n and labels[j] is ClauseLabel.I_CLS:
            j += 1
        if j < n and labels[j] is ClauseLabel.E_CLS:
            spans.append((i, j + 1))
            i = j + 1
        elif j == i + 1:
            spans.append((i, i + 1))  # lone B: single-token clause
            i = j
        else:
            i = j  # B I.. without E: already an error, no span
    return spans


def validate_clause_sequence(
    sentence: Sentence, sentence_idx: int = 0
) -> list[LintIssue]:
    """Clause-layer legality plus the verb-content and singleton warnings."""
    labels = [t.clause for t in sentence.tokens]
    pairs = [(_CLAUSE_PREFIX[lab], "CLS") for lab in labels]
    issues, lone_b = _boundary_issues(pairs, "CLS", LAYER_CLS, sentence_idx)
    for pos in lone_b:
        issues.append(
            _issue(
                Severity.WARNING,
                "CLS_SINGLETON",
                "single-token clause (lone B_CLS)",
                sentence_idx,
                pos,
                LAYER_CLS,
            )
        )
    for start, end in _clause_spans(labels):
        if not any(
            t.pos is PosTag.VV for t in sentence.tokens[start:end]
        ):
            issues.append(
                _issue(
                    Severity.WARNING,
                    "CLS_NO_VERB",
                    "clause contains no verb",
                    sentence_idx,
                    start,
                    LAYER_CLS,
                )
            )
    return issues


_URL_RE = re.compile(r"^(?:https?://|www\.)[\x21-\x7e]*$")
_URL_CONT_RE = re.compile(r"^[A-Za-z0-9/._~%?#=&+-]+$")
_ASCII_PUNCT = set(string.punctuation)
_WHITESPACE_RE = re.compile(r"\s")


def validate_token_tags(sentence: Sentence, sentence_idx: int = 0) -> list[LintIssue]:
    """Token-level rules: space POS, split URLs, split punctuation runs."""
    issues = []
    tokens = sentence.tokens
    for i, token in enumerate(tokens):
        if token.is_space and token.pos is not PosTag.PU:
            issues.append(
                _issue(
                    Severity.ERROR,
                    "SPACE_NOT_PU",
                    f"white-space token tagged {token.pos} instead of PU",
                    sentence_idx,
                    i,
                    LAYER_POS,
                )
            )
        if not token.is_space and _WHITESPACE_RE.search(token.surface):
            issues.append(
                _issue(
                    Severity.WARNING,
                    "FORMAT_SPACE_IN_SURFACE",
                    "white-space character inside a word surface",
                    sentence_idx,
                    i,
                    LAYER_FORMAT,
                )
            )
    for i in range(len(tokens) - 1):
        cur, nxt = tokens[i], tokens[i + 1]
        if (
            not cur.is_space
            and not nxt.is_space
            and _URL_RE.match(cur.surface)
            and _URL_CONT_RE.match(nxt.surface)
            and _URL_RE.match(cur.surface + nxt.surface)
        ):
            issues.append(
                _issue(
                    Severity.WARNING,
                    "URL_SPLIT",
                    "URL appears to be split across adjacent tokens",
                    sentence_idx,
                    i,
                    LAYER_FORMAT,
                )
            )
        if (
            not cur.is_space
            and not nxt.is_space
            and len(cur.surface) == 1
            and len(nxt.surface) == 1
            and cur.surface in _ASCII_PUNCT
            and nxt.surface in _ASCII_PUNCT
        ):
            issues.append(
                _issue(
                    Severity.WARNING,
                    "PUNCT_RUN_SPLIT",
                    "consecutive non-Thai punctuation split into separate tokens",
                    sentence_idx,
                    i + 1,
                    LAYER_FORMAT,
                )
            )
    return issues


def lint_sentence(sentence: Sentence, sentence_idx: int = 0) -> list[LintIssue]:
    issues = (
        validate_ne_sequence(sentence, sentence_idx)
        + validate_clause_sequence(sentence, sentence_idx)
        + validate_token_tags(sentence, sentence_idx)
    )
    issues.sort(key=_sort_key)
    return issues


def _sort_key(issue: LintIssue):
    return (
        issue.sentence if issue.sentence is not None else -1,
        issue.token if issue.token is not None else -1,
        issue.code,
    )


def lint_document(doc: Document, extra: Optional[list[LintIssue]] = None) -> LintReport:
    """All validators over all sentences, ordered by (sentence, token, code).

    ``extra`` lets callers merge in FORMAT_* issues collected while parsing.
    """
    issues: list[LintIssue] = list(extra) if extra else []
    for idx, sentence in enumerate(doc.sentences):
        issues.extend(lint_sentence(sentence, idx))
    issues.sort(key=_sort_key)
    return LintReport(tuple(issues))
