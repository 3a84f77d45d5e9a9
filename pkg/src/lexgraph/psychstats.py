"""Join structure labels with psycholinguistic norms and aggregate.

Norm tables are lemma-keyed CSVs (``word,value``). Frequency is carried on
the log10(count+1) scale; words missing from the frequency table count as
zero, while words missing age or concreteness are excluded from those
averages but still counted in the coverage denominator.
"""

from __future__ import annotations

import csv
import logging
import math
import random
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .graph import split_word_id
from .lexicon import DEFAULT_NORMALIZER, Lexicon, Normalizer
from .minset import MinSetResult, split_minset
from .structure import CORE, KERNEL, REST, SATELLITE, Hierarchy, StructureLabels

log = logging.getLogger(__name__)

NORM_KINDS = ("frequency_raw", "frequency_lg10wf", "aoa", "concreteness")
VARIABLES = ("frequency", "aoa", "concreteness")

MINSET_CORE = "MinSet-core"
MINSET_SATELLITE = "MinSet-satellite"

STRUCTURES = (CORE, SATELLITE, KERNEL, REST)
EFFECT_PAIRS = (
    (CORE, SATELLITE),
    (CORE, REST),
    (SATELLITE, REST),
    (KERNEL, REST),
)


@dataclass
class NormTable:
    kind: str
    values: dict[str, float]
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.values)


def load_norms(
    stream: IO,
    kind: str,
    provenance: str = "",
    normalizer: Normalizer = DEFAULT_NORMALIZER,
) -> NormTable:
    """Read a `word,value` CSV (header required) into a NormTable.

    Duplicate lemmas keep the first row; non-numeric values reject the row.
    Both produce logged diagnostics rather than errors.
    """
    if kind not in NORM_KINDS:
        raise ValueError(f"unknown norm kind {kind!r}")
    reader = csv.reader(line.decode("utf-8") if isinstance(line, bytes) else line
                        for line in stream)
    values: dict[str, float] = {}
    try:
        next(reader)
    except StopIteration:
        log.warning("empty norm file (%s)", provenance or kind)
        return NormTable(kind, values, provenance)
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) < 2:
            log.warning("row %d: expected word,value; rejected", rownum)
            continue
        lemma = normalizer(row[0])
        try:
            value = float(row[1])
        except ValueError:
            log.warning("row %d: non-numeric value %r; rejected", rownum, row[1])
            continue
        if kind in ("frequency_raw", "frequency_lg10wf") and value < 0:
            log.warning("row %d: negative frequency %r; rejected", rownum, row[1])
            continue
        if lemma in values:
            log.warning("row %d: duplicate lemma %r; keeping first", rownum, lemma)
            continue
        values[lemma] = value
    if not values:
        log.warning("norm table %s has no usable rows", provenance or kind)
    return NormTable(kind, values, provenance)


def lg10wf(count: float) -> float:
    """log10(count + 1), the standard damped word-frequency scale."""
    if count < 0:
        raise ValueError(f"frequency count must be >= 0, got {count}")
    return math.log10(count + 1)


@dataclass
class WordRecord:
    word: str
    lemma: str
    pos: str
    label: str
    frequency: float | None    # lg10wf scale; None when no table was given
    aoa: float | None
    concreteness: float | None

    def value(self, variable: str) -> float | None:
        return getattr(self, "frequency" if variable == "frequency" else variable)


def join_norms(
    labels: StructureLabels,
    frequency: NormTable | None = None,
    aoa: NormTable | None = None,
    concreteness: NormTable | None = None,
) -> list[WordRecord]:
    """Attach norm values to every labeled word, in sorted word order."""
    if aoa is not None and aoa.kind != "aoa":
        raise ValueError(f"expected an aoa table, got {aoa.kind}")
    if concreteness is not None and concreteness.kind != "concreteness":
        raise ValueError(f"expected a concreteness table, got {concreteness.kind}")
    if frequency is not None and not frequency.kind.startswith("frequency"):
        raise ValueError(f"expected a frequency table, got {frequency.kind}")
    records = []
    for word in sorted(labels.label):
        lemma, pos = split_word_id(word)
        freq_value: float | None = None
        if frequency is not None:
            raw = frequency.values.get(lemma, 0.0)
            freq_value = lg10wf(raw) if frequency.kind == "frequency_raw" else raw
        records.append(WordRecord(
            word=word,
            lemma=lemma,
            pos=pos,
            label=labels.label[word],
            frequency=freq_value,
            aoa=None if aoa is None else aoa.values.get(lemma),
            concreteness=(
                None if concreteness is None else concreteness.values.get(lemma)
            ),
        ))
    return records


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def _sample_sd(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    m = _mean(values)
    return math.sqrt(sum((x - m) ** 2 for x in values) / (len(values) - 1))


@dataclass
class StatCell:
    count: int                 # words in the structure
    covered: int               # words with a value for this variable
    mean: float | None
    sd: float | None

    @property
    def coverage(self) -> float:
        return self.covered / self.count if self.count else 0.0


@dataclass
class StructureReport:
    cells: dict[tuple[str, str], StatCell]          # (structure, variable)
    effect_sizes: dict[tuple[str, str, str], float | None]  # (variable, a, b)
    correlations: dict[tuple[str, str], float | None]
    structures: tuple[str, ...] = STRUCTURES
    notes: dict[str, str] = field(default_factory=dict)


def _structure_members(
    labels: StructureLabels, minset: MinSetResult | None
) -> list[tuple[str, frozenset[str]]]:
    members = [(s, labels.members(s)) for s in STRUCTURES]
    if minset is not None:
        core_part, satellite_part = split_minset(minset, labels)
        members.append((MINSET_CORE, core_part))
        members.append((MINSET_SATELLITE, satellite_part))
    return members


def aggregate_by_structure(
    records: Iterable[WordRecord],
    labels: StructureLabels,
    minset: MinSetResult | None = None,
) -> StructureReport:
    """Per-structure counts, means, SDs and coverage; pairwise effect sizes;
    variable intercorrelations. Purely descriptive, no tests."""
    records = list(records)
    by_word = {r.word: r for r in records}
    structure_members = _structure_members(labels, minset)

    cells: dict[tuple[str, str], StatCell] = {}
    samples: dict[tuple[str, str], list[float]] = {}
    for structure, members in structure_members:
        words = sorted(members)
        for variable in VARIABLES:
            values = [
                v for w in words
                if w in by_word and (v := by_word[w].value(variable)) is not None
            ]
            samples[(structure, variable)] = values
            cells[(structure, variable)] = StatCell(
                count=len(words),
                covered=len(values),
                mean=_mean(values) if values else None,
                sd=_sample_sd(values) if values else None,
            )

    effect_sizes: dict[tuple[str, str, str], float | None] = {}
    for variable in VARIABLES:
        for a, b in EFFECT_PAIRS:
            sample_a = samples[(a, variable)]
            sample_b = samples[(b, variable)]
            try:
                effect_sizes[(variable, a, b)] = cohens_d(sample_a, sample_b)
            except ValueError:
                effect_sizes[(variable, a, b)] = None

    correlations: dict[tuple[str, str], float | None] = {}
    for i, var_a in enumerate(VARIABLES):
        for var_b in VARIABLES[i + 1:]:
            pairs = [
                (xa, xb) for r in records
                if (xa := r.value(var_a)) is not None
                and (xb := r.value(var_b)) is not None
            ]
            try:
                correlations[(var_a, var_b)] = pearson(
                    [p[0] for p in pairs], [p[1] for p in pairs]
                )
            except ValueError:
                correlations[(var_a, var_b)] = None

    structures = tuple(s for s, _ in structure_members)
    return StructureReport(cells, effect_sizes, correlations, structures)


def cohens_d(sample_a: Sequence[float], sample_b: Sequence[float]) -> float:
    """(mean_a - mean_b) / pooled SD."""
    n_a, n_b = len(sample_a), len(sample_b)
    if n_a < 2 or n_b < 2:
        raise ValueError("cohens_d needs at least 2 covered values per sample")
    var_a = _sample_sd(sample_a) ** 2
    var_b = _sample_sd(sample_b) ** 2
    pooled = math.sqrt(((n_a - 1) * var_a + (n_b - 1) * var_b) / (n_a + n_b - 2))
    if pooled == 0.0:
        raise ValueError("degenerate samples: pooled SD is zero")
    return (_mean(sample_a) - _mean(sample_b)) / pooled


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ValueError("pearson needs paired samples")
    n = len(xs)
    if n < 2:
        raise ValueError("pearson needs at least 2 points")
    mean_x, mean_y = _mean(xs), _mean(ys)
    sxx = sum((x - mean_x) ** 2 for x in xs)
    syy = sum((y - mean_y) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("zero variance")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    denominator = math.sqrt(sxx) * math.sqrt(syy)  # avoids product underflow
    if denominator == 0.0:
        raise ValueError("zero variance")
    return sxy / denominator


def residualize(target: Sequence[float], regressor: Sequence[float]) -> list[float]:
    """Residuals of an OLS fit target = a + b*regressor."""
    if len(target) != len(regressor):
        raise ValueError("residualize needs paired samples")
    n = len(target)
    if n < 2:
        raise ValueError("residualize needs at least 2 points")
    mean_x = _mean(regressor)
    mean_y = _mean(target)
    sxx = sum((x - mean_x) ** 2 for x in regressor)
    if sxx == 0.0:
        raise ValueError("zero variance in regressor")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(regressor, target))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    return [y - (intercept + slope * x) for x, y in zip(regressor, target)]


def residual_effect_sizes(
    records: Iterable[WordRecord],
    labels: StructureLabels,
) -> dict[tuple[str, str, str], float | None]:
    """Effect sizes recomputed on the variance left after removing frequency.

    The target variable is OLS-residualized against lg10wf over words with
    both values; effect sizes then use the residuals in place of raw values.
    """
    records = list(records)
    out: dict[tuple[str, str, str], float | None] = {}
    for variable in ("aoa", "concreteness"):
        paired = [
            r for r in records
            if r.value(variable) is not None and r.frequency is not None
        ]
        residual_of: dict[str, float] = {}
        if len(paired) >= 2:
            try:
                residuals = residualize(
                    [r.value(variable) for r in paired],
                    [r.frequency for r in paired],
                )
            except ValueError:
                residuals = []
            residual_of = {r.word: res for r, res in zip(paired, residuals)}
        for a, b in EFFECT_PAIRS:
            sample_a = [residual_of[w] for w in sorted(labels.members(a)) if w in residual_of]
            sample_b = [residual_of[w] for w in sorted(labels.members(b)) if w in residual_of]
            try:
                out[(variable, a, b)] = cohens_d(sample_a, sample_b)
            except ValueError:
                out[(variable, a, b)] = None
    return out


@dataclass
class LevelRow:
    level: int
    count: int                 # words at this level before merging
    merged_count: int          # equals count except at the truncation level
    means: dict[str, float | None]
    coverage: dict[str, float]


def gradient_by_level(
    h: Hierarchy,
    records: Iterable[WordRecord],
    restrict: str | None = None,
    truncate_min_count: int = 100,
) -> list[LevelRow]:
    """Per-level variable means with sparse-tail merging.

    Levels beyond the last level with count >= truncate_min_count are merged
    into that level; the row keeps both its own count and the merged total.
    """
    by_word = {r.word: r for r in records}
    allowed = None
    if restrict == KERNEL:
        allowed = (CORE, SATELLITE)
    elif restrict is not None:
        allowed = (restrict,)
    level_words: dict[int, list[str]] = {}
    for word in sorted(h.levels):
        if word not in by_word:
            continue
        if allowed is not None and by_word[word].label not in allowed:
            continue
        level_words.setdefault(h.levels[word], []).append(word)
    if not level_words:
        return []
    levels = sorted(level_words)
    cutoff = None
    for level in levels:
        if len(level_words[level]) >= truncate_min_count:
            cutoff = level
    rows: list[LevelRow] = []
    for level in levels:
        if cutoff is not None and level > cutoff:
            break
        words = list(level_words[level])
        own_count = len(words)
        if cutoff is not None and level == cutoff:
            for higher in levels:
                if higher > cutoff:
                    words.extend(level_words[higher])
        means: dict[str, float | None] = {}
        coverage: dict[str, float] = {}
        for variable in VARIABLES:
            values = [
                v for w in words if (v := by_word[w].value(variable)) is not None
            ]
            means[variable] = _mean(values) if values else None
            coverage[variable] = len(values) / len(words) if words else 0.0
        rows.append(LevelRow(
            level=level,
            count=own_count,
            merged_count=len(words),
            means=means,
            coverage=coverage,
        ))
    return rows


def level_intersection(h1: Hierarchy, h2: Hierarchy) -> dict[int, set[str]]:
    """Per level, the lemmas sitting at that level in both hierarchies."""
    def lemmas_by_level(h: Hierarchy) -> dict[int, set[str]]:
        out: dict[int, set[str]] = {}
        for word, level in h.levels.items():
            out.setdefault(level, set()).add(split_word_id(word)[0])
        return out

    first = lemmas_by_level(h1)
    second = lemmas_by_level(h2)
    return {
        level: first[level] & second[level]
        for level in sorted(set(first) & set(second))
        if first[level] & second[level]
    }


def pos_breakdown(
    labels: StructureLabels, lex: Lexicon
) -> dict[str, dict[str, float]]:
    """Per-structure percentage of each part of speech (rows sum to 100)."""
    pos_of = {}
    for entry in lex.entries:
        pos_of[f"{entry.lemma}#{entry.pos}"] = entry.pos
    out: dict[str, dict[str, float]] = {}
    for structure in STRUCTURES:
        members = labels.members(structure)
        if not members:
            continue
        counts = {pos: 0 for pos in ("noun", "verb", "adj", "adv")}
        total = 0
        for word in members:
            pos = pos_of.get(word)
            if pos in counts:
                counts[pos] += 1
                total += 1
        if total == 0:
            continue
        out[structure] = {
            pos: 100.0 * n / total for pos, n in counts.items()
        }
    return out


def minset_vs_random(
    m: MinSetResult,
    labels: StructureLabels,
    records: Iterable[WordRecord],
    samples: int = 1000,
    seed: int = 0,
) -> dict:
    """Compare each MinSet part against equal-sized random subsets of its
    parent structure (seeded, reproducible)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    by_word = {r.word: r for r in records}
    core_part, satellite_part = split_minset(m, labels)
    rng = random.Random(seed)
    report: dict = {"samples": samples, "seed": seed, "parts": {}}
    for part_name, part, structure in (
        ("core", core_part, CORE),
        ("satellite", satellite_part, SATELLITE),
    ):
        pool = sorted(labels.members(structure))
        if len(part) > len(pool):
            raise ValueError(
                f"{part_name} part of size {len(part)} exceeds structure size {len(pool)}"
            )
        part_entry: dict = {"size": len(part), "structure_size": len(pool)}
        draws = [rng.sample(pool, len(part)) for _ in range(samples)]
        for variable in VARIABLES:
            part_values = [
                v for w in sorted(part)
                if w in by_word and (v := by_word[w].value(variable)) is not None
            ]
            draw_means = []
            for draw in draws:
                values = [
                    v for w in draw
                    if w in by_word and (v := by_word[w].value(variable)) is not None
                ]
                if values:
                    draw_means.append(_mean(values))
            part_entry[variable] = {
                "minset_mean": _mean(part_values) if part_values else None,
                "random_mean": _mean(draw_means) if draw_means else None,
                "random_sd": _sample_sd(draw_means) if draw_means else None,
            }
        report["parts"][part_name] = part_entry
    return report
