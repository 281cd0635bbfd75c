"""Golden-table regression against the transcribed tables in ``data/``.

Each ``g<N>.jsonl`` holds one row per printed stratum.  The verifier
recomputes every populated field and reports per-row results; the data files
are never regenerated from the code.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .final import final_of_young, final_type_of, parse_young
from .rings import class_from_json
from .strata import class_u, class_v, push_u
from .weyl import apply_word, enumerate_weyl, parse_perm, parse_word, reduced_word

__all__ = ["RowResult", "Report", "data_dir", "load_table", "verify_tables", "SUPPORTED"]

SUPPORTED = (2, 3, 4)


@dataclass
class RowResult:
    label: str
    ok: bool
    diffs: list[str] = field(default_factory=list)


@dataclass
class Report:
    g: int
    rows: list[RowResult]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.rows) and not self.notes

    def summary(self) -> str:
        return f"{self.passed}/{len(self.rows)} rows pass"

    def lines(self) -> list[str]:
        out = []
        for r in self.rows:
            out.append(f"{'PASS' if r.ok else 'FAIL'}  {r.label}")
            out.extend(f"      {d}" for d in r.diffs)
        out.extend(f"NOTE  {n}" for n in self.notes)
        out.append(self.summary())
        return out


def data_dir() -> Path:
    """``$STRATA_DATA_DIR`` if set, else the package's ``data`` directory."""
    env = os.environ.get("STRATA_DATA_DIR")
    return Path(env) if env else Path(__file__).resolve().parent / "data"


def load_table(g: int, directory: Path | None = None) -> list[dict]:
    path = (directory or data_dir()) / f"g{g}.jsonl"
    if not path.exists():
        raise FileNotFoundError(f"golden data {path} not found")
    with path.open(encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _diff(name: str, want, got) -> str:
    return f"{name}: expected {want}, got {got}"


def _check_combinatorics(row: dict, w, g: int) -> list[str]:
    diffs = []
    if row.get("len") is not None and w.length != row["len"]:
        diffs.append(_diff("length", row["len"], w.length))
    if row.get("word") is not None:
        word = parse_word(row["word"])
        if apply_word(word, g) != w:
            diffs.append(f"word {row['word']} does not multiply out to {w}")
        if len(word) != len(reduced_word(w)):
            diffs.append(_diff("word length", len(word), len(reduced_word(w))))
    if row.get("nu") is not None:
        nu = list(final_type_of(w).values)
        if nu != row["nu"]:
            diffs.append(_diff("nu", row["nu"], nu))
    if row.get("Y") is not None:
        y = parse_young(row["Y"], g)
        if final_of_young(y) != w:
            diffs.append(f"{w} is not the final element of Y={y}")
    return diffs


def _check_element(row: dict, g: int) -> list[tuple[str, list[str]]]:
    """One row per printed class or pushdown; a bare combinatorial row otherwise.

    The length, word, nu and Y checks ride along with the first of them.
    """
    w = parse_perm(row["w"], g)
    pending = _check_combinatorics(row, w, g)
    out = []
    for key, fn in (("class", class_u), ("push", push_u)):
        if row.get(key) is not None:
            want, got = class_from_json(row[key]), fn(w)
            diffs = pending + ([] if want == got else [_diff(key, want, got)])
            out.append((f"w={w} {key}", diffs))
            pending = []
    if not out:
        out.append((f"w={w}", pending))
    return out


def _check_vclass(row: dict, g: int) -> tuple[str, list[str]]:
    y = parse_young(row["Y"], g)
    want, got = class_from_json(row["vclass"]), class_v(y)
    diffs = [] if want == got else [_diff("[Vc]", want, got)]
    return [(f"Y={y} [Vc]", diffs)]


def verify_tables(g: int, jobs: int = 1, directory: Path | None = None) -> Report:
    """Recompute every populated field of the ``g`` table.

    Rows carrying a ``w`` are checked as elements (length, word, nu, Y,
    class, push); every ``vclass`` adds one more ``[Vc]`` row.
    When the table lists ``nu`` the set of listed elements must be exactly
    the admissible elements of ``W_g``.
    """
    if g not in SUPPORTED:
        raise ValueError(f"no golden table for g={g}; available: {SUPPORTED}")
    table = load_table(g, directory)
    tasks = [(_check_element, row) for row in table if row.get("w")]
    tasks += [(_check_vclass, row) for row in table if row.get("vclass")]
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = [r for chunk in pool.map(lambda t: t[0](t[1], g), tasks) for r in chunk]
    report = Report(g, [RowResult(label, not diffs, diffs) for label, diffs in results])
    listed = [row for row in table if row.get("w") and row.get("nu") is not None]
    if listed:
        have = {parse_perm(row["w"], g) for row in listed}
        want = set(enumerate_weyl(g, "admissible"))
        if have != want:
            report.notes.append(f"table lists {len(have)} elements, {len(want)} admissible; "
                                f"{len(want - have)} missing, {len(have - want)} extra")
    return report

