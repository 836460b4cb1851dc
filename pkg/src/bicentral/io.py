"""Text formats: matrix CSV, edge list, lookup-table TSV, rating reports.

Weights may be written as decimals or as exact fractions ("4/3"), so
fixtures can carry values that would truncate in decimal. Reads tolerate
LF and CRLF; everything written uses LF.
"""

from __future__ import annotations

import csv
import json
import math
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np

from bicentral import errors
from bicentral.centrality import RatingTable
from bicentral.core import NebsResult, NecsResult, ReverseTransform, WeightRelation
from bicentral.spectral import FloatArray

REPORT_DIGITS = 12


def _parse_number(token: str, line: int, column: int) -> float:
    text = token.strip()
    if "/" in text:
        try:
            value = float(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise errors.ParseError(line, column, f"bad fraction {token!r}") from None
    else:
        try:
            value = float(text)
        except ValueError:
            raise errors.ParseError(line, column, f"bad number {token!r}") from None
    if not math.isfinite(value):
        raise errors.ParseError(line, column, f"non-finite value {token!r}")
    return value


def read_matrix_csv(text: str) -> WeightRelation:
    """Parse a labeled weight matrix.

    Layout: cell (1,1) is ignored, the rest of the first row names the
    columns (a-items), the first cell of every later row names that row
    (b-item), and the remaining cells are nonnegative weights. An empty cell
    is 0. Column numbers in errors are 1-based cell positions.
    """
    rows = [
        (lineno, cells)
        for lineno, cells in enumerate(csv.reader(text.splitlines()), start=1)
        if any(cell.strip() for cell in cells)
    ]
    if not rows:
        raise errors.EmptyRelation(0, 0, "input contains no cells")

    header_line, header = rows[0]
    a_labels = [cell.strip() for cell in header[1:]]
    if not a_labels:
        raise errors.ParseError(header_line, 2, "header names no columns")
    for pos, label in enumerate(a_labels, start=2):
        if not label:
            raise errors.ParseError(header_line, pos, "empty column label")
    if len(set(a_labels)) != len(a_labels):
        raise errors.DuplicateLabel(header_line, 2, "duplicate column label")

    if len(rows) == 1:
        raise errors.EmptyRelation(header_line, 1, "no data rows after the header")

    b_labels: list[str] = []
    data: list[list[float]] = []
    for lineno, cells in rows[1:]:
        label = cells[0].strip() if cells else ""
        if not label:
            raise errors.ParseError(lineno, 1, "empty row label")
        if label in b_labels:
            raise errors.DuplicateLabel(lineno, 1, f"duplicate row label {label!r}")
        values = cells[1:]
        if len(values) != len(a_labels):
            raise errors.ParseError(
                lineno,
                len(cells) + 1,
                f"expected {len(a_labels)} value cells, found {len(values)}",
            )
        parsed: list[float] = []
        for pos, cell in enumerate(values, start=2):
            if not cell.strip():
                parsed.append(0.0)
                continue
            value = _parse_number(cell, lineno, pos)
            if value < 0:
                raise errors.NegativeWeight(
                    lineno, pos, f"negative weight {cell.strip()!r}"
                )
            parsed.append(value)
        b_labels.append(label)
        data.append(parsed)

    return WeightRelation(
        a_labels=tuple(a_labels),
        b_labels=tuple(b_labels),
        weights=np.array(data, dtype=np.float64),
    )


def read_edge_list(text: str) -> WeightRelation:
    """Parse tab-separated edges: a_label, b_label, positive weight.

    Labels are collected in first-appearance order; pairs never listed get
    weight 0. A repeated pair is an error, as is a nonpositive weight
    (listing an edge asserts the pair is related).
    """
    edges: list[tuple[str, str, float]] = []
    a_order: list[str] = []
    b_order: list[str] = []
    seen: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 3:
            raise errors.ParseError(
                lineno, 1, f"expected 3 tab-separated fields, found {len(parts)}"
            )
        a_label, b_label = parts[0].strip(), parts[1].strip()
        if not a_label or not b_label:
            raise errors.ParseError(lineno, 1, "empty label")
        weight = _parse_number(parts[2], lineno, 3)
        if weight <= 0:
            raise errors.NonPositiveWeight(
                lineno, 3, f"edge weight must be positive, got {parts[2].strip()!r}"
            )
        pair = (a_label, b_label)
        if pair in seen:
            raise errors.DuplicateEdge(lineno, 1, f"duplicate edge {pair!r}")
        seen.add(pair)
        if a_label not in a_order:
            a_order.append(a_label)
        if b_label not in b_order:
            b_order.append(b_label)
        edges.append((a_label, b_label, weight))

    if not edges:
        raise errors.EmptyRelation(0, 0, "edge list contains no edges")

    a_index = {label: j for j, label in enumerate(a_order)}
    b_index = {label: i for i, label in enumerate(b_order)}
    weights = np.zeros((len(b_order), len(a_order)), dtype=np.float64)
    for a_label, b_label, weight in edges:
        weights[b_index[b_label], a_index[a_label]] = weight
    return WeightRelation(
        a_labels=tuple(a_order), b_labels=tuple(b_order), weights=weights
    )


def _significant(x: float) -> float:
    return float(f"{x:.{REPORT_DIGITS}g}")


def table_payload(table: RatingTable) -> list[dict]:
    """Rating table as a list of plain dicts, scores at 12 significant digits."""
    return [
        {
            "label": e.label,
            "score": _significant(e.score),
            "rank": e.rank,
            "tied": e.tied,
        }
        for e in table.entries
    ]


def write_tables_tsv(tables: Mapping[str, RatingTable]) -> str:
    """Ranked tables as TSV, one row per entry, LF line endings."""
    lines = ["side\tlabel\tscore\trank\ttied"]
    for side, table in tables.items():
        for e in table.entries:
            lines.append(
                f"{side}\t{e.label}\t{_significant(e.score):.{REPORT_DIGITS}g}"
                f"\t{e.rank}\t{'true' if e.tied else 'false'}"
            )
    return "\n".join(lines) + "\n"


def write_report(
    result: Union[NebsResult, NecsResult],
    tables: Mapping[str, RatingTable],
    fmt: str = "json",
) -> str:
    """Serialize a solver result plus its ranked tables.

    JSON carries the scalars, the convergence summary, and structured
    warnings; TSV carries only the ranked tables. Scores and scalars are
    rounded to 12 significant digits so output is byte-deterministic.
    """
    if fmt not in ("json", "tsv"):
        raise ValueError(f"unknown format {fmt!r}")

    if isinstance(result, NebsResult):
        expected = ("a", "b")
    else:
        expected = ("c",)
    for key in expected:
        if key not in tables:
            raise errors.DimensionMismatch(f"missing rating table {key!r}")

    if fmt == "tsv":
        return write_tables_tsv({key: tables[key] for key in expected})

    report = result.convergence
    if isinstance(result, NebsResult):
        payload: dict = {
            "a": table_payload(tables["a"]),
            "b": table_payload(tables["b"]),
            "lambda": _significant(result.lambda_),
            "mu": _significant(result.mu),
            "rho": _significant(result.rho),
            "alpha": _significant(result.alpha),
            "beta": _significant(result.beta),
        }
        warnings = [
            {"code": w.code, "message": w.message, "side": w.side}
            for w in result.warnings
        ]
    else:
        payload = {
            "c": table_payload(tables["c"]),
            "eigenvalue": _significant(result.eigenvalue),
            "lambda": _significant(result.rating_coefficient),
        }
        warnings = []
    payload.update(
        {
            "iterations": report.iterations,
            "final_residual": _significant(report.final_residual),
            "rate_estimate": (
                None
                if report.rate_estimate is None
                else _significant(report.rate_estimate)
            ),
            "warnings": warnings,
        }
    )
    return json.dumps(payload, indent=2) + "\n"


def write_matrix_csv(
    a_labels: Sequence[str],
    b_labels: Sequence[str],
    weights: FloatArray,
) -> str:
    """Labeled matrix as CSV readable by :func:`read_matrix_csv`.

    Values use shortest round-trip formatting, so read-back is bit exact.
    """
    W = np.asarray(weights, dtype=np.float64)
    if W.shape != (len(b_labels), len(a_labels)):
        raise errors.DimensionMismatch(
            f"matrix shape {W.shape} does not match label counts"
        )
    out: list[str] = []

    class _Sink:
        def write(self, chunk: str) -> None:
            out.append(chunk)

    writer = csv.writer(_Sink(), lineterminator="\n")
    writer.writerow([""] + list(a_labels))
    for i, label in enumerate(b_labels):
        writer.writerow([label] + [repr(float(v)) for v in W[i]])
    return "".join(out)


def write_transform_table(transform: ReverseTransform) -> str:
    """Lookup transform as two-column TSV: weight, reverse weight."""
    if transform.table is None:
        raise ValueError("only table transforms can be written as a table")
    lines = [
        f"{repr(weight)}\t{repr(value)}"
        for weight, value in sorted(transform.table.items())
    ]
    return "\n".join(lines) + "\n"


def read_transform_table(text: str) -> ReverseTransform:
    """Parse the TSV written by :func:`write_transform_table`."""
    mapping: dict[float, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 2:
            raise errors.ParseError(
                lineno, 1, f"expected 2 tab-separated fields, found {len(parts)}"
            )
        weight = _parse_number(parts[0], lineno, 1)
        value = _parse_number(parts[1], lineno, 2)
        if weight in mapping:
            raise errors.ParseError(lineno, 1, f"duplicate weight {weight!r}")
        mapping[weight] = value
    if not mapping:
        raise errors.EmptyRelation(0, 0, "transform table contains no entries")
    return ReverseTransform.from_table(mapping)
