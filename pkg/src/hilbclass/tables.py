"""Serialization of coefficient tables and exact comparison against golden files."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .partitions import Partition, table_order
from .series import CoefficientTable
from .surface import Mono


def render_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _rows(table: CoefficientTable) -> list[tuple[Partition, Mono, Fraction]]:
    return [(lam, mono, c) for (lam, mono), c in table.items()]


def to_json(table: CoefficientTable) -> str:
    """One entry per line, so that goldens and outputs diff line by line."""
    entries = [
        json.dumps({"partition": list(lam), "class": mono.label, "coefficient": render_rational(c)})
        for lam, mono, c in _rows(table)
    ]
    head = [f'  "{k}": {json.dumps(v)},' for k, v in
            (("series", table.series), ("surface", table.surface), ("rank", table.rank))]
    body = ",\n".join("    " + e for e in entries)
    return "{\n" + "\n".join(head) + '\n  "entries": [\n' + body + ("\n" if entries else "") + "  ]\n}\n"


def to_csv(table: CoefficientTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=";", lineterminator="\n")
    writer.writerow(["partition", "class", "coefficient"])
    for lam, mono, c in _rows(table):
        writer.writerow([str(lam), mono.label, render_rational(c)])
    return buf.getvalue()


def to_markdown(table: CoefficientTable) -> str:
    """One row per partition, one column per class monomial that occurs."""
    monos = sorted({m for _, m in table.entries})
    head = "| partition | " + " | ".join(m.label for m in monos) + " |"
    rule = "|---" * (len(monos) + 1) + "|"
    lines = [head, rule]
    for lam in table.partitions():
        row = table.row(lam)
        cells = [render_rational(row.get(m, 0)) for m in monos]
        lines.append(f"| {lam} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


FORMATS = {"json": to_json, "csv": to_csv, "md": to_markdown}


def render(table: CoefficientTable, fmt: str) -> str:
    try:
        return FORMATS[fmt](table)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {sorted(FORMATS)}") from None


def from_json(text: str) -> CoefficientTable:
    doc = json.loads(text)
    entries = {
        (Partition(e["partition"]), Mono.from_label(e["class"])): parse_rational(e["coefficient"])
        for e in doc["entries"]
    }
    return CoefficientTable(
        entries, series=doc.get("series", ""), surface=doc.get("surface", "generic"), rank=doc.get("rank")
    )


# -- golden files


@dataclass(frozen=True)
class Golden:
    """Expected values for one table.

    ``entries`` lists every compared cell, zeros included; ``classes`` names
    the compared columns, so a computed nonzero cell outside ``entries`` but
    inside those columns and within ``max_weight`` is also a mismatch.
    """

    name: str
    series: str
    surface: str
    rank: int | None
    max_weight: int
    classes: tuple[Mono, ...]
    entries: dict[tuple[Partition, Mono], Fraction]
    description: str = ""


def load_golden(name: str) -> Golden:
    text = resources.files("hilbclass").joinpath("golden", f"{name}.json").read_text()
    return golden_from_json(name, text)


def golden_from_json(name: str, text: str) -> Golden:
    doc = json.loads(text)
    entries = {
        (Partition(e["partition"]), Mono.from_label(e["class"])): parse_rational(e["coefficient"])
        for e in doc["entries"]
    }
    return Golden(
        name=name,
        series=doc["series"],
        surface=doc["surface"],
        rank=doc.get("rank"),
        max_weight=doc["max_weight"],
        classes=tuple(Mono.from_label(c) for c in doc["classes"]),
        entries=entries,
        description=doc.get("description", ""),
    )


def golden_names() -> list[str]:
    folder = resources.files("hilbclass").joinpath("golden")
    return sorted(Path(p.name).stem for p in folder.iterdir() if p.name.endswith(".json"))


@dataclass(frozen=True)
class Mismatch:
    partition: Partition
    mono: Mono
    expected: Fraction
    actual: Fraction

    def __str__(self) -> str:
        return (
            f"{self.partition} {self.mono.label}: expected {render_rational(self.expected)}, "
            f"got {render_rational(self.actual)}"
        )


def diff(table: CoefficientTable, golden: Golden) -> list[Mismatch]:
    """Exact cell-by-cell comparison, in table order."""
    keys = set(golden.entries)
    for (lam, mono), c in table.entries.items():
        if mono in golden.classes and lam.weight <= golden.max_weight and c:
            keys.add((lam, mono))
    out = []
    for lam, mono in sorted(keys, key=lambda k: (table_order(k[0]), k[1])):
        expected = golden.entries.get((lam, mono), Fraction(0))
        actual = table.get(lam, mono)
        if expected != actual:
            out.append(Mismatch(lam, mono, expected, actual))
    return out
