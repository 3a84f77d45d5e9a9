"""Parse dictionary sources into a normalized Lexicon.

The ingest pipeline is: parse -> select_first_senses -> strip_function_words
-> drop_undefined. After the full pipeline every definition token resolves
to some entry lemma (the lexicon is *closed*) and the graph builder can run.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, IO, Iterable

log = logging.getLogger(__name__)

POS_TAGS = ("noun", "verb", "adj", "adv")

# Characters stripped from token edges: ASCII punctuation plus common
# typographic marks found in dictionary text.
_PUNCT = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~“”‘’‹›«»–—…·"


class ParseError(ValueError):
    """Malformed input record; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NoDefinedWordsError(ValueError):
    """drop_undefined would leave an empty lexicon."""


@dataclass(frozen=True)
class Normalizer:
    """Token normalizer: case-fold, strip edge punctuation, optional stemmer.

    The stemmer hook is identity by default; plug in a real stemmer by
    passing ``stem`` and a distinguishing ``id``.
    """

    id: str = "casefold-strip-punct"
    stem: Callable[[str], str] | None = None

    def __call__(self, token: str) -> str:
        tok = token.strip().casefold().strip(_PUNCT)
        if self.stem is not None and tok:
            tok = self.stem(tok)
        return tok


DEFAULT_NORMALIZER = Normalizer()


@dataclass(frozen=True)
class LexEntry:
    lemma: str
    pos: str
    sense_rank: int
    definition: tuple[str, ...]

    def __post_init__(self):
        if not self.lemma:
            raise ValueError("lemma must be nonempty")
        if self.sense_rank < 1:
            raise ValueError("sense_rank must be >= 1")


@dataclass
class Lexicon:
    entries: list[LexEntry]
    stoplist_id: str = "none"
    normalizer_id: str = DEFAULT_NORMALIZER.id
    _first_by_lemma: dict[str, LexEntry] | None = field(
        default=None, repr=False, compare=False
    )

    def __len__(self) -> int:
        return len(self.entries)

    def first_entry_for(self, lemma: str) -> LexEntry | None:
        """Earliest-record entry with this lemma, or None."""
        if self._first_by_lemma is None:
            index: dict[str, LexEntry] = {}
            for entry in self.entries:
                index.setdefault(entry.lemma, entry)
            self._first_by_lemma = index
        return self._first_by_lemma.get(lemma)

    def replaced(self, entries: list[LexEntry]) -> "Lexicon":
        return Lexicon(entries, self.stoplist_id, self.normalizer_id)


@dataclass
class PipelineStats:
    entries_parsed: int = 0
    entries_after_first_sense: int = 0
    entries_after_stoplist: int = 0
    entries_after_drop_undefined: int = 0
    tokens_dropped_undefined: int = 0
    entries_dropped_undefined: int = 0

    def as_dict(self) -> dict:
        return dict(vars(self))


def _decode_lines(stream: IO) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        yield lineno, line.rstrip("\n").rstrip("\r")


def parse_lexicon(
    stream: IO,
    format: str = "jsonl",
    normalizer: Normalizer = DEFAULT_NORMALIZER,
    unknown_pos: str = "reject",
) -> Lexicon:
    """Parse a jsonl or tsv dictionary stream into a Lexicon.

    jsonl records: ``{"lemma": str, "pos": str, "definition": [str, ...]}``
    with optional ``"sense"`` (positive int; defaults to file order per
    (lemma, pos)). tsv records: ``lemma<TAB>pos<TAB>space-separated-definition``.

    ``unknown_pos`` is ``"reject"`` (raise ParseError) or ``"skip"`` (drop the
    record with a logged diagnostic).
    """
    if format not in ("jsonl", "tsv"):
        raise ValueError(f"unknown format {format!r}")
    if unknown_pos not in ("reject", "skip"):
        raise ValueError(f"unknown_pos must be 'reject' or 'skip', got {unknown_pos!r}")

    entries: list[LexEntry] = []
    seen_senses: dict[tuple[str, str], int] = {}
    for lineno, line in _decode_lines(stream):
        if not line.strip():
            continue
        if format == "jsonl":
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON ({exc.msg})", lineno) from exc
            if not isinstance(record, dict):
                raise ParseError("record is not an object", lineno)
            lemma_raw = record.get("lemma")
            pos = record.get("pos")
            definition_raw = record.get("definition")
            sense = record.get("sense")
            if not isinstance(lemma_raw, str) or not isinstance(pos, str):
                raise ParseError("lemma and pos must be strings", lineno)
            if not isinstance(definition_raw, list) or not all(
                isinstance(t, str) for t in definition_raw
            ):
                raise ParseError("definition must be an array of strings", lineno)
            if sense is not None and (not isinstance(sense, int) or sense < 1):
                raise ParseError("sense must be a positive integer", lineno)
        else:
            columns = line.split("\t")
            if len(columns) != 3:
                raise ParseError(
                    f"expected 3 tab-separated columns, got {len(columns)}", lineno
                )
            lemma_raw, pos, def_text = columns
            definition_raw = def_text.split()
            sense = None

        if pos not in POS_TAGS:
            if unknown_pos == "reject":
                raise ParseError(f"unknown POS tag {pos!r}", lineno)
            log.warning("line %d: skipping record with unknown POS %r", lineno, pos)
            continue

        lemma = normalizer(lemma_raw)
        if not lemma:
            raise ParseError(f"lemma {lemma_raw!r} normalizes to nothing", lineno)
        definition = tuple(t for t in (normalizer(tok) for tok in definition_raw) if t)

        if sense is None:
            key = (lemma, pos)
            sense = seen_senses.get(key, 0) + 1
            seen_senses[key] = sense
        entries.append(LexEntry(lemma, pos, sense, definition))

    return Lexicon(entries, stoplist_id="none", normalizer_id=normalizer.id)


def select_first_senses(lex: Lexicon) -> Lexicon:
    """Keep exactly the sense_rank-1 entry per (lemma, pos)."""
    kept = [e for e in lex.entries if e.sense_rank == 1]
    if len(kept) != len(lex.entries):
        log.info(
            "select_first_senses: %d -> %d entries", len(lex.entries), len(kept)
        )
    return lex.replaced(kept)


def strip_function_words(lex: Lexicon, stoplist: frozenset[str] | set[str],
                         stoplist_id: str = "custom") -> Lexicon:
    """Drop stoplist tokens from definitions and stoplist-lemma entries."""
    kept = []
    for entry in lex.entries:
        if entry.lemma in stoplist:
            continue
        definition = tuple(t for t in entry.definition if t not in stoplist)
        if definition != entry.definition:
            entry = LexEntry(entry.lemma, entry.pos, entry.sense_rank, definition)
        kept.append(entry)
    out = lex.replaced(kept)
    out.stoplist_id = stoplist_id
    return out


def drop_undefined(lex: Lexicon, stats: PipelineStats | None = None) -> Lexicon:
    """Remove definition tokens with no entry and cascade empty definitions.

    Iterates to a fixpoint: a token is dropped when no surviving entry has it
    as lemma; an entry is dropped when its definition empties. The result is
    closed: every surviving definition token equals some entry lemma.
    """
    entries = list(lex.entries)
    tokens_dropped = 0
    entries_dropped = 0
    while True:
        lemmas = {e.lemma for e in entries}
        next_entries = []
        changed = False
        for entry in entries:
            definition = tuple(t for t in entry.definition if t in lemmas)
            if len(definition) != len(entry.definition):
                tokens_dropped += len(entry.definition) - len(definition)
                changed = True
            if not definition:
                entries_dropped += 1
                changed = True
                continue
            if definition != entry.definition:
                entry = LexEntry(entry.lemma, entry.pos, entry.sense_rank, definition)
            next_entries.append(entry)
        entries = next_entries
        if not changed:
            break
    if not entries:
        raise NoDefinedWordsError("no defined words remain")
    if stats is not None:
        stats.tokens_dropped_undefined = tokens_dropped
        stats.entries_dropped_undefined = entries_dropped
    if tokens_dropped or entries_dropped:
        log.info(
            "drop_undefined: dropped %d tokens and %d entries",
            tokens_dropped, entries_dropped,
        )
    return lex.replaced(entries)


def resolve_token(lex: Lexicon, token: str) -> LexEntry | None:
    """Map a definition token to the earliest-record entry with that lemma.

    Returns None when the token matches no entry (the caller drops it, per
    drop_undefined).
    """
    return lex.first_entry_for(token)


def run_pipeline(
    lex: Lexicon,
    stoplist: frozenset[str] | set[str],
    stoplist_id: str = "custom",
) -> tuple[Lexicon, PipelineStats]:
    """Full normalization pipeline with a reduction report."""
    stats = PipelineStats(entries_parsed=len(lex.entries))
    lex = select_first_senses(lex)
    stats.entries_after_first_sense = len(lex.entries)
    lex = strip_function_words(lex, stoplist, stoplist_id)
    stats.entries_after_stoplist = len(lex.entries)
    lex = drop_undefined(lex, stats)
    stats.entries_after_drop_undefined = len(lex.entries)
    return lex, stats


def write_lexicon_jsonl(lex: Lexicon, stream: IO) -> None:
    """Serialize entries, one JSON object per line, in entry order."""
    for entry in lex.entries:
        stream.write(json.dumps({
            "lemma": entry.lemma,
            "pos": entry.pos,
            "sense": entry.sense_rank,
            "definition": list(entry.definition),
        }, ensure_ascii=False) + "\n")
