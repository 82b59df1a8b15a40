"""Distributional POS test frames: a pattern mini-language and matcher.

A frame is a whitespace-separated list of slots:

* ``_``      the hole: the word under test (exactly one per frame)
* ``TAG``    exactly one token with that POS tag
* ``(TAG)``  zero or one token with that POS tag
* ``*``      a run of one or more tokens of any POS
* ``*?``     a run of zero or more tokens of any POS

A frame matches a POS sequence when its slots cover the whole sequence
with the hole bound to the candidate index. Content-word classes are
derived from the union of matched frame ids over a lexeme's attested
usages: noun requires all four NN frames, verb requires one of VV.1-VV.5
plus VV.6, adjective and adverb require any one of their frames.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from .schema import PosTag, UnknownTag, parse_pos_tag


class FrameSpecError(ValueError):
    """A malformed frame definition string."""


class SlotKind(Enum):
    EXACT = "exact"
    HOLE = "hole"
    PHRASE = "phrase"


@dataclass(frozen=True, slots=True)
class FrameSlot:
    kind: SlotKind
    tag: Optional[PosTag] = None
    optional: bool = False

    def spec(self) -> str:
        if self.kind is SlotKind.HOLE:
            return "_"
        if self.kind is SlotKind.PHRASE:
            return "*?" if self.optional else "*"
        return f"({self.tag.value})" if self.optional else self.tag.value


@dataclass(frozen=True, slots=True)
class FramePattern:
    frame_id: str
    slots: tuple[FrameSlot, ...]

    def __post_init__(self) -> None:
        holes = sum(1 for s in self.slots if s.kind is SlotKind.HOLE)
        if holes != 1:
            raise FrameSpecError(
                f"frame {self.frame_id or '<anonymous>'} needs exactly one hole, got {holes}"
            )

    @property
    def hole_index(self) -> int:
        for i, slot in enumerate(self.slots):
            if slot.kind is SlotKind.HOLE:
                return i
        raise AssertionError("unreachable: pattern always has a hole")

    def spec(self) -> str:
        return " ".join(slot.spec() for slot in self.slots)


@dataclass(frozen=True, slots=True)
class FrameMatch:
    """Witness alignment: one half-open token range per slot, in order."""

    frame_id: str
    alignment: tuple[tuple[int, int], ...]


def compile_frame(spec: str, frame_id: str = "") -> FramePattern:
    """Compile a mini-language string into a pattern."""
    slots = []
    for item in spec.split():
        if item == "_":
            slots.append(FrameSlot(SlotKind.HOLE))
        elif item == "*":
            slots.append(FrameSlot(SlotKind.PHRASE))
        elif item == "*?":
            slots.append(FrameSlot(SlotKind.PHRASE, optional=True))
        elif item.startswith("(") and item.endswith(")"):
            slots.append(
                FrameSlot(SlotKind.EXACT, _tag(item[1:-1], spec), optional=True)
            )
        else:
            slots.append(FrameSlot(SlotKind.EXACT, _tag(item, spec)))
    if not slots:
        raise FrameSpecError("empty frame spec")
    return FramePattern(frame_id, tuple(slots))


def _tag(text: str, spec: str) -> PosTag:
    try:
        return parse_pos_tag(text)
    except UnknownTag:
        raise FrameSpecError(f"unknown tag {text!r} in frame spec {spec!r}") from None


def _cover(
    slots: Sequence[FrameSlot], tags: Sequence[PosTag], lo: int, hi: int
) -> Optional[list[tuple[int, int]]]:
    """Ranges assigning slots to tags[lo:hi] exactly, greedy-longest first."""
    if not slots:
        return [] if lo == hi else None
    head, rest = slots[0], slots[1:]
    if head.kind is SlotKind.PHRASE:
        shortest = 0 if head.optional else 1
        for take in range(hi - lo, shortest - 1, -1):
            sub = _cover(rest, tags, lo + take, hi)
            if sub is not None:
                return [(lo, lo + take)] + sub
        return None
    # EXACT (the hole never reaches here)
    nexts = []
    if lo < hi and tags[lo] is head.tag:
        nexts.append(lo + 1)
    if head.optional:
        nexts.append(lo)
    for nxt in nexts:
        sub = _cover(rest, tags, nxt, hi)
        if sub is not None:
            return [(lo, nxt)] + sub
    return None


def frame_matches(
    pos_sequence: Sequence[PosTag], candidate: int, frame: FramePattern
) -> Optional[FrameMatch]:
    """Match a frame against the whole sequence with the hole at ``candidate``.

    Returns the leftmost-longest witness (each slot greedily takes the most
    it can, scanning left to right) or None. The caller strips space tokens
    beforehand; ``candidate`` indexes the stripped sequence.
    """
    if not 0 <= candidate < len(pos_sequence):
        raise ValueError("candidate index out of range")
    hole = frame.hole_index
    before = _cover(frame.slots[:hole], pos_sequence, 0, candidate)
    if before is None:
        return None
    after = _cover(
        frame.slots[hole + 1 :], pos_sequence, candidate + 1, len(pos_sequence)
    )
    if after is None:
        return None
    alignment = before + [(candidate, candidate + 1)] + after
    return FrameMatch(frame.frame_id, tuple(alignment))


#: Built-in frame definitions. The optional slots reflect what the worked
#: usages actually require; override any of them with a frame file.
DEFAULT_FRAME_SPECS: dict[str, str] = {
    "NN.1": "_ VV (AV)",
    "NN.2": "NN VV _ (AV)",
    "NN.3": "NN VV PS _ (AV)",
    "NN.4": "_ CL AJ",
    "VV.1": "NN (AX) _ (AV)",
    "VV.2": "(AX) _ NN (AV)",
    "VV.3": "(AX) _ NN NN (AV)",
    "VV.4": "NN (AX) NN _ (NN) (AV)",
    "VV.5": "NN _ VV (NN) (AV)",
    "VV.6": "NN VV NN CC (AX) (NN) _ *?",
    "AJ.1": "NN (CL) _ VV",
    "AJ.2": "_ NN VV",
    "AJ.3": "NN _ NU CL VV",
    "AJ.4": "NN NU _ CL VV",
    "AV.1": "NN VV (NN) _",
    "AV.2": "_ NN VV NN",
    "AV.3": "_ NN VV NN",
    "AV.4": "NN VV NN _",
}

NOUN_FRAMES = frozenset({"NN.1", "NN.2", "NN.3", "NN.4"})
VERB_CORE_FRAMES = frozenset({"VV.1", "VV.2", "VV.3", "VV.4", "VV.5"})
VERB_GATE_FRAME = "VV.6"
ADJECTIVE_FRAMES = frozenset({"AJ.1", "AJ.2", "AJ.3", "AJ.4"})
ADVERB_FRAMES = frozenset({"AV.1", "AV.2", "AV.3", "AV.4"})


@dataclass(frozen=True, slots=True)
class FrameSet:
    frames: tuple[FramePattern, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "frames", tuple(self.frames))
        seen = set()
        for frame in self.frames:
            if frame.frame_id in seen:
                raise FrameSpecError(f"duplicate frame id {frame.frame_id!r}")
            seen.add(frame.frame_id)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(f.frame_id for f in self.frames)

    def get(self, frame_id: str) -> FramePattern:
        for frame in self.frames:
            if frame.frame_id == frame_id:
                return frame
        raise KeyError(frame_id)


def default_frameset() -> FrameSet:
    return FrameSet(
        tuple(compile_frame(spec, fid) for fid, spec in DEFAULT_FRAME_SPECS.items())
    )


def load_frameset(text: str) -> FrameSet:
    """Parse ``id: spec`` lines (``#`` comments, blank lines ignored)."""
    frames = []
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        frame_id, sep, spec = line.partition(":")
        if not sep or not frame_id.strip():
            raise FrameSpecError(f"line {line_no}: expected 'id: spec'")
        frames.append(compile_frame(spec.strip(), frame_id.strip()))
    return FrameSet(tuple(frames))


def dump_frameset(frameset: FrameSet) -> str:
    return "".join(f"{f.frame_id}: {f.spec()}\n" for f in frameset.frames)


def classify_instance(
    pos_sequence: Sequence[PosTag], candidate: int, frameset: FrameSet
) -> set[str]:
    """Ids of every frame matching this usage."""
    return {
        frame.frame_id
        for frame in frameset.frames
        if frame_matches(pos_sequence, candidate, frame) is not None
    }


def classify_lexeme(
    attestations: Iterable[tuple[Sequence[PosTag], int]], frameset: FrameSet
) -> set[str]:
    """Content-word classes licensed by the union of matched frames."""
    matched: set[str] = set()
    for pos_sequence, candidate in attestations:
        matched |= classify_instance(pos_sequence, candidate, frameset)
    classes = set()
    if NOUN_FRAMES <= matched:
        classes.add("noun")
    if matched & VERB_CORE_FRAMES and VERB_GATE_FRAME in matched:
        classes.add("verb")
    if matched & ADJECTIVE_FRAMES:
        classes.add("adjective")
    if matched & ADVERB_FRAMES:
        classes.add("adverb")
    return classes
