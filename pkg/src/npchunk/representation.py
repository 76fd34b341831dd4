"""Conversions between chunk spans and seven tagging formats.

The four complete formats (IOB1, IOB2, IOE1, IOE2) determine a chunking
uniquely.  IO decodes on its own but merges adjacent chunks.  The two
bracket formats mark only chunk openings or only closings and must be
combined pairwise ([+], [+IO, IO+]) to recover spans.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .corpus import ChunkSpan


class SchemeError(ValueError):
    """Operation not defined for the given tag scheme."""


class TagScheme(Enum):
    IOB1 = "iob1"
    IOB2 = "iob2"
    IOE1 = "ioe1"
    IOE2 = "ioe2"
    IO = "io"
    OPEN_BRACKET = "open"
    CLOSE_BRACKET = "close"

    @property
    def alphabet(self) -> frozenset[str]:
        return _ALPHABETS[self]

    @property
    def outside(self) -> str:
        """Tag carried by tokens outside every chunk."""
        return "." if self in _BRACKETS else "O"

    @property
    def complete(self) -> bool:
        """Whether the format alone determines the chunking exactly."""
        return self in _COMPLETE

    @property
    def decodable(self) -> bool:
        """Whether sequences decode to spans without a partner sequence."""
        return self not in _BRACKETS

    def __str__(self) -> str:
        return self.value


_COMPLETE = frozenset(
    {TagScheme.IOB1, TagScheme.IOB2, TagScheme.IOE1, TagScheme.IOE2}
)
_BRACKETS = frozenset({TagScheme.OPEN_BRACKET, TagScheme.CLOSE_BRACKET})
_ALPHABETS = {
    TagScheme.IOB1: frozenset("IOB"),
    TagScheme.IOB2: frozenset("IOB"),
    TagScheme.IOE1: frozenset("IOE"),
    TagScheme.IOE2: frozenset("IOE"),
    TagScheme.IO: frozenset("IO"),
    TagScheme.OPEN_BRACKET: frozenset("[."),
    TagScheme.CLOSE_BRACKET: frozenset("]."),
}


def parse_scheme(name: str) -> TagScheme:
    """Look up a scheme by its case-insensitive CLI/config name."""
    try:
        return TagScheme(name.strip().lower())
    except ValueError:
        valid = ", ".join(s.value for s in TagScheme)
        raise SchemeError(f"unknown tag scheme {name!r} (expected one of: {valid})") from None


@dataclass(frozen=True)
class TagSequence:
    scheme: TagScheme
    tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        alphabet = self.scheme.alphabet
        for tag in self.tags:
            if tag not in alphabet:
                raise ValueError(f"tag {tag!r} not in {self.scheme} alphabet")

    def __len__(self) -> int:
        return len(self.tags)

    def __iter__(self):
        return iter(self.tags)


def _validated_spans(chunks: Iterable[ChunkSpan], length: int) -> list[ChunkSpan]:
    spans = sorted(chunks)
    prev_end = 0
    for span in spans:
        if span.start < prev_end:
            raise ValueError(f"overlapping spans at [{span.start}, {span.end})")
        if span.end > length:
            raise ValueError(f"span [{span.start}, {span.end}) exceeds length {length}")
        prev_end = span.end
    return spans


def encode(chunks: Iterable[ChunkSpan], length: int, scheme: TagScheme) -> TagSequence:
    """The unique tag sequence of a chunking under ``scheme``.

    Total for all seven schemes; raises ValueError on invalid spans.
    """
    spans = _validated_spans(chunks, length)
    tags = [scheme.outside] * length
    if scheme is TagScheme.OPEN_BRACKET:
        for span in spans:
            tags[span.start] = "["
    elif scheme is TagScheme.CLOSE_BRACKET:
        for span in spans:
            tags[span.end - 1] = "]"
    else:
        for span in spans:
            for i in range(span.start, span.end):
                tags[i] = "I"
        if scheme is TagScheme.IOB2:
            for span in spans:
                tags[span.start] = "B"
        elif scheme is TagScheme.IOE2:
            for span in spans:
                tags[span.end - 1] = "E"
        elif scheme is TagScheme.IOB1:
            ends = {span.end for span in spans}
            for span in spans:
                if span.start in ends:  # chunk-initial word right after another chunk
                    tags[span.start] = "B"
        elif scheme is TagScheme.IOE1:
            starts = {span.start for span in spans}
            for span in spans:
                if span.end in starts:  # chunk-final word right before another chunk
                    tags[span.end - 1] = "E"
    return TagSequence(scheme, tuple(tags))


def decode(sequence: TagSequence) -> tuple[ChunkSpan, ...]:
    """Spans of a tag sequence, repairing inconsistent classifier output.

    Repair reading: B always starts a chunk (closing any open one), I
    continues a chunk or starts one after O, E always ends a chunk
    (opening a one-word chunk if none is open), and a chunk left open at
    an O or at the sentence end closes there.  Every sequence over the
    scheme's alphabet is accepted.  IO merges adjacent chunks by design.
    """
    scheme = sequence.scheme
    if not scheme.decodable:
        raise SchemeError(
            f"{scheme} sequences do not determine spans on their own; use "
            "combine_brackets, combine_open_io or combine_io_close"
        )
    if scheme in (TagScheme.IOE1, TagScheme.IOE2):
        return _decode_end_marked(sequence.tags)
    return _decode_start_marked(sequence.tags)


def _decode_start_marked(tags: tuple[str, ...]) -> tuple[ChunkSpan, ...]:
    spans = []
    start = None
    for i, tag in enumerate(tags):
        if tag == "O":
            if start is not None:
                spans.append(ChunkSpan(start, i))
                start = None
        elif tag == "B":
            if start is not None:
                spans.append(ChunkSpan(start, i))
            start = i
        else:  # I
            if start is None:
                start = i
    if start is not None:
        spans.append(ChunkSpan(start, len(tags)))
    return tuple(spans)


def _decode_end_marked(tags: tuple[str, ...]) -> tuple[ChunkSpan, ...]:
    spans = []
    start = None
    for i, tag in enumerate(tags):
        if tag == "O":
            if start is not None:
                spans.append(ChunkSpan(start, i))
                start = None
        elif tag == "E":
            spans.append(ChunkSpan(i if start is None else start, i + 1))
            start = None
        else:  # I
            if start is None:
                start = i
    if start is not None:
        spans.append(ChunkSpan(start, len(tags)))
    return tuple(spans)


def _expect(sequence: TagSequence, scheme: TagScheme) -> None:
    if sequence.scheme is not scheme:
        raise SchemeError(f"expected a {scheme} sequence, got {sequence.scheme}")


def combine_brackets(
    open_tags: TagSequence, close_tags: TagSequence
) -> tuple[ChunkSpan, ...]:
    """Spans whose first word carries ``[``, whose last word carries ``]``,
    and which contain no other bracket.

    Greedy left-to-right matching; unmatched brackets yield no chunk, so
    the result is well-formed for arbitrary (even inconsistent) input.
    """
    _expect(open_tags, TagScheme.OPEN_BRACKET)
    _expect(close_tags, TagScheme.CLOSE_BRACKET)
    if len(open_tags) != len(close_tags):
        raise ValueError("open and close sequences differ in length")
    opens = open_tags.tags
    closes = close_tags.tags
    n = len(opens)
    spans = []
    i = 0
    while i < n:
        if opens[i] != "[":
            i += 1
            continue
        j = i
        while j < n and closes[j] != "]" and not (j > i and opens[j] == "["):
            j += 1
        if j == n:  # no closing bracket and no later opener
            break
        if j > i and opens[j] == "[":  # a second [ spoils every window from i
            i = j
        else:
            spans.append(ChunkSpan(i, j + 1))
            i = j + 1
    return tuple(spans)


def combine_open_io(
    open_tags: TagSequence, io_tags: TagSequence
) -> tuple[ChunkSpan, ...]:
    """Turn I tags that also carry ``[`` into B and read the result as IOB2."""
    _expect(open_tags, TagScheme.OPEN_BRACKET)
    _expect(io_tags, TagScheme.IO)
    if len(open_tags) != len(io_tags):
        raise ValueError("open and io sequences differ in length")
    rewritten = tuple(
        "B" if io == "I" and op == "[" else io
        for op, io in zip(open_tags.tags, io_tags.tags)
    )
    return decode(TagSequence(TagScheme.IOB2, rewritten))


def combine_io_close(
    io_tags: TagSequence, close_tags: TagSequence
) -> tuple[ChunkSpan, ...]:
    """Turn I tags that also carry ``]`` into E and read the result as IOE2."""
    _expect(io_tags, TagScheme.IO)
    _expect(close_tags, TagScheme.CLOSE_BRACKET)
    if len(io_tags) != len(close_tags):
        raise ValueError("io and close sequences differ in length")
    rewritten = tuple(
        "E" if io == "I" and cl == "]" else io
        for io, cl in zip(io_tags.tags, close_tags.tags)
    )
    return decode(TagSequence(TagScheme.IOE2, rewritten))


def convert(sequence: TagSequence, target: TagScheme) -> TagSequence:
    """Re-encode under ``target``; the source must be a complete scheme."""
    if not sequence.scheme.complete:
        raise SchemeError(
            f"conversion needs a complete source scheme, got {sequence.scheme}"
        )
    return encode(decode(sequence), len(sequence), target)
