"""Deterministic CSV/JSON artifact writers for the CLI pipelines.

Every writer produces byte-identical output for identical inputs: rows are
sorted, floats use repr formatting, and nothing time- or host-dependent is
serialized (solver wall time stays in memory).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .graph import DefGraph, export_edges
from .minset import MinSetResult, split_minset
from .psychstats import (
    EFFECT_PAIRS,
    VARIABLES,
    LevelRow,
    StructureReport,
)
from .structure import Hierarchy, StructureLabels, level_counts, KERNEL


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])
    return path


def _write_json(path: Path, payload) -> Path:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return path


def write_labels_csv(
    out_dir: Path,
    labels: StructureLabels,
    k_hierarchy: Hierarchy,
    c_hierarchy: Hierarchy,
) -> Path:
    rows = [
        [
            word,
            labels.label[word],
            labels.scc_id[word],
            labels.scc_size[word],
            k_hierarchy.levels[word],
            c_hierarchy.levels[word],
        ]
        for word in sorted(labels.label)
    ]
    return _write_csv(
        out_dir / "labels.csv",
        ["word", "label", "scc_id", "scc_size", "k_level", "c_level"],
        rows,
    )


def write_graph_edges(out_dir: Path, g: DefGraph) -> Path:
    path = out_dir / "graph.tsv"
    path.write_text(export_edges(g), encoding="utf-8")
    return path


def write_minset_json(
    out_dir: Path, result: MinSetResult, labels: StructureLabels
) -> Path:
    core_part, satellite_part = split_minset(result, labels)
    return _write_json(out_dir / "minset.json", {
        "size": len(result.members),
        "status": result.status,
        "lower_bound": result.lower_bound,
        "members": sorted(result.members),
        "core_members": sorted(core_part),
        "satellite_members": sorted(satellite_part),
        "stats": result.stats.as_dict(),
    })


def write_table1(
    out_dir: Path,
    labels: StructureLabels,
    minset: MinSetResult | None = None,
) -> Path:
    total = len(labels.label)

    def pct(count: int, denom: int) -> float:
        return round(100.0 * count / denom, 2) if denom else 0.0

    rows = [
        ["total_words", total, ""],
        ["rest", len(labels.rest), pct(len(labels.rest), total)],
        ["kernel", len(labels.kernel), pct(len(labels.kernel), total)],
        ["satellites", len(labels.satellites), pct(len(labels.satellites), total)],
        ["core", len(labels.core), pct(len(labels.core), total)],
    ]
    if minset is not None:
        core_part, satellite_part = split_minset(minset, labels)
        size = len(minset.members)
        rows.append(["minset", size, pct(size, total)])
        rows.append(["satellites_minset", len(satellite_part), pct(len(satellite_part), size)])
        rows.append(["core_minset", len(core_part), pct(len(core_part), size)])
    return _write_csv(out_dir / "table1.csv", ["structure", "count", "percent"], rows)


def write_table2(
    out_dir: Path,
    k_hierarchy: Hierarchy,
    c_hierarchy: Hierarchy,
    labels: StructureLabels,
) -> tuple[Path, Path]:
    k_counts = level_counts(k_hierarchy)
    c_counts = level_counts(c_hierarchy, labels, restrict=KERNEL)
    k_path = _write_csv(
        out_dir / "table2_k.csv",
        ["level", "count"],
        [[level, count] for level, count in sorted(k_counts.items())],
    )
    c_path = _write_csv(
        out_dir / "table2_c.csv",
        ["level", "count"],
        [[level, count] for level, count in sorted(c_counts.items())],
    )
    return k_path, c_path


def write_structure_report(out_dir: Path, report: StructureReport) -> Path:
    rows = []
    for structure in report.structures:
        for variable in VARIABLES:
            cell = report.cells[(structure, variable)]
            rows.append([
                structure, variable, cell.count, cell.covered,
                round(cell.coverage, 6), cell.mean, cell.sd,
            ])
    return _write_csv(
        out_dir / "structure_report.csv",
        ["structure", "variable", "count", "covered", "coverage", "mean", "sd"],
        rows,
    )


def write_effect_sizes(
    out_dir: Path,
    report: StructureReport,
    residual_effects: dict | None = None,
) -> Path:
    rows = []
    for variable in VARIABLES:
        for a, b in EFFECT_PAIRS:
            rows.append([variable, "raw", a, b, report.effect_sizes[(variable, a, b)]])
    if residual_effects:
        for variable in ("aoa", "concreteness"):
            for a, b in EFFECT_PAIRS:
                value = residual_effects.get((variable, a, b))
                rows.append([variable, "frequency_residual", a, b, value])
    return _write_csv(
        out_dir / "effect_sizes.csv",
        ["variable", "basis", "group_a", "group_b", "cohens_d"],
        rows,
    )


def write_correlations(out_dir: Path, report: StructureReport) -> Path:
    rows = [
        [a, b, value]
        for (a, b), value in sorted(report.correlations.items())
    ]
    return _write_csv(
        out_dir / "correlations.csv", ["variable_a", "variable_b", "pearson_r"], rows
    )


def write_gradients(out_dir: Path, kind: str, rows: list[LevelRow]) -> Path:
    header = ["level", "count", "merged_count"]
    for variable in VARIABLES:
        header.append(f"{variable}_mean")
    for variable in VARIABLES:
        header.append(f"{variable}_coverage")
    table = []
    for row in rows:
        record = [row.level, row.count, row.merged_count]
        record.extend(row.means[v] for v in VARIABLES)
        record.extend(round(row.coverage[v], 6) for v in VARIABLES)
        table.append(record)
    return _write_csv(out_dir / f"gradients_{kind}.csv", header, table)


def write_pos_breakdown(out_dir: Path, breakdown: dict[str, dict[str, float]]) -> Path:
    rows = [
        [structure] + [round(breakdown[structure][pos], 4) for pos in ("noun", "verb", "adj", "adv")]
        for structure in sorted(breakdown)
    ]
    return _write_csv(
        out_dir / "pos_breakdown.csv",
        ["structure", "noun", "verb", "adj", "adv"],
        rows,
    )


def write_minset_comparison(out_dir: Path, comparison: dict) -> Path:
    return _write_json(out_dir / "minset_comparison.json", comparison)


def write_run_meta(out_dir: Path, meta: dict) -> Path:
    return _write_json(out_dir / "run_meta.json", meta)
