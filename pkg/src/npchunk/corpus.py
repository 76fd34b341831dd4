"""Column-formatted chunk corpora: data types, parsing, serialization, folds.

File format: one token per line with three space-separated columns
``WORD POS TAG``, sentences separated by exactly one blank line, final
newline required, no trailing spaces.
"""

from __future__ import annotations

from dataclasses import dataclass


class FormatError(ValueError):
    """Malformed corpus input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TagError(FormatError):
    """Tag column value outside the scheme's alphabet."""


def _check_symbol(name: str, value: str) -> None:
    if not value or any(ch.isspace() for ch in value):
        raise ValueError(f"{name} must be non-empty and whitespace-free, got {value!r}")


@dataclass(frozen=True)
class Token:
    word: str
    pos: str

    def __post_init__(self):
        _check_symbol("word", self.word)
        _check_symbol("pos", self.pos)


@dataclass(frozen=True, order=True)
class ChunkSpan:
    """Half-open token span ``[start, end)``."""

    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Sentence:
    """Tokens plus non-overlapping, sorted, never-nested chunk spans."""

    tokens: tuple[Token, ...]
    chunks: tuple[ChunkSpan, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "chunks", tuple(self.chunks))
        if not self.tokens:
            raise ValueError("sentence needs at least one token")
        prev_end = 0
        for span in self.chunks:
            if span.start < prev_end:
                raise ValueError("chunks must be sorted and non-overlapping")
            prev_end = span.end
        if prev_end > len(self.tokens):
            raise ValueError("chunk extends past sentence end")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(t.word for t in self.tokens)

    @property
    def pos_tags(self) -> tuple[str, ...]:
        return tuple(t.pos for t in self.tokens)


@dataclass(frozen=True)
class Corpus:
    sentences: tuple[Sentence, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    @property
    def n_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)


def parse_corpus(text: str, scheme) -> Corpus:
    """Parse corpus text whose tag column uses ``scheme``.

    The scheme must be decodable on its own (a complete scheme or IO);
    bracket columns carry too little information to reconstruct spans.
    Raises FormatError/TagError with line numbers on malformed input.
    """
    # imported here: representation depends on the data types above
    from .representation import SchemeError, TagSequence, decode

    if not scheme.decodable:
        raise SchemeError(
            f"cannot parse a corpus tagged with {scheme} alone; "
            "bracket schemes only decode pairwise"
        )
    if text == "":
        return Corpus(())
    if not text.endswith("\n"):
        raise FormatError("final newline required", text.count("\n") + 1)
    lines = text.split("\n")
    lines.pop()  # the empty string after the final newline

    alphabet = scheme.alphabet
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    tags: list[str] = []

    def flush() -> None:
        spans = decode(TagSequence(scheme, tuple(tags)))
        sentences.append(Sentence(tuple(tokens), spans))
        tokens.clear()
        tags.clear()

    for line_no, line in enumerate(lines, start=1):
        if line == "":
            if not tokens:
                raise FormatError("blank line without a preceding sentence", line_no)
            flush()
            continue
        columns = line.split(" ")
        if len(columns) != 3 or "" in columns:
            raise FormatError(
                f"expected three space-separated columns 'WORD POS TAG', got {line!r}",
                line_no,
            )
        word, pos, tag = columns
        try:
            token = Token(word, pos)
        except ValueError as exc:
            raise FormatError(str(exc), line_no) from None
        if tag not in alphabet:
            raise TagError(f"tag {tag!r} not in {scheme} alphabet", line_no)
        tokens.append(token)
        tags.append(tag)
    if not tokens:
        raise FormatError("trailing blank line", len(lines))
    flush()
    return Corpus(tuple(sentences))


def write_corpus(corpus: Corpus, scheme) -> str:
    """Serialize ``corpus`` with the tag column encoded under ``scheme``.

    Inverse of parse_corpus for the same scheme (byte-exact round trip).
    """
    from .representation import encode

    blocks = []
    for sentence in corpus.sentences:
        tags = encode(sentence.chunks, len(sentence), scheme).tags
        blocks.append(
            "".join(
                f"{tok.word} {tok.pos} {tag}\n"
                for tok, tag in zip(sentence.tokens, tags)
            )
        )
    return "\n".join(blocks)


def split_folds(corpus: Corpus, n_folds: int) -> list[tuple[Corpus, Corpus]]:
    """Partition into contiguous test blocks in document order.

    The first ``len(corpus) % n_folds`` folds take one extra sentence.
    Returns (train, test) pairs; train is the complement of its test block.
    """
    if n_folds < 2:
        raise ValueError("n_folds must be at least 2")
    n = len(corpus.sentences)
    if n < n_folds:
        raise ValueError(f"cannot split {n} sentences into {n_folds} folds")
    base, extra = divmod(n, n_folds)
    folds = []
    start = 0
    for i in range(n_folds):
        stop = start + base + (1 if i < extra else 0)
        test = Corpus(corpus.sentences[start:stop])
        train = Corpus(corpus.sentences[:start] + corpus.sentences[stop:])
        folds.append((train, test))
        start = stop
    return folds
