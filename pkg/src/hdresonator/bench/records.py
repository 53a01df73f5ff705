"""Trial records and their CSV / JSON persistence."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

FIELDS = (
    "experiment", "trial", "kind", "rule", "D", "F", "n", "M",
    "beta", "sigma", "k", "accuracy", "iterations", "converged", "success",
)
_INT_FIELDS = {"trial", "D", "F", "n", "M", "k", "iterations"}
_FLOAT_FIELDS = {"beta", "sigma", "accuracy"}
_BOOL_FIELDS = {"converged", "success"}


@dataclass(frozen=True)
class TrialRecord:
    experiment: str
    trial: int
    kind: str
    rule: str
    D: int
    F: int
    n: int
    M: int
    beta: float
    sigma: float
    k: int
    accuracy: float
    iterations: int
    converged: bool
    success: bool
    wall_time: float = field(default=0.0, compare=False)

    def row(self) -> dict:
        """Persisted fields at emitted precision (wall_time is not persisted)."""
        out = {}
        for name in FIELDS:
            v = getattr(self, name)
            if name in _FLOAT_FIELDS:
                v = _round6(v)
            out[name] = v
        return out


def _round6(x: float) -> float:
    return float(format(float(x), ".6g"))


def _fmt(name: str, v) -> str:
    if name in _BOOL_FIELDS:
        return "true" if v else "false"
    if name in _FLOAT_FIELDS:
        return format(float(v), ".6g")
    return str(v)


def _parse(name: str, s):
    if name in _BOOL_FIELDS:
        if isinstance(s, bool):
            return s
        if s not in ("true", "false"):
            raise ValueError(f"bad flag {s!r} in column {name}")
        return s == "true"
    if name in _INT_FIELDS:
        return int(s)
    if name in _FLOAT_FIELDS:
        return float(s)
    return str(s)


def csv_header() -> str:
    return ",".join(FIELDS) + "\n"


def csv_line(rec: TrialRecord) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(_fmt(f, getattr(rec, f)) for f in FIELDS)
    return buf.getvalue()


def format_records(records: Iterable[TrialRecord], fmt: str = "csv") -> str:
    records = list(records)
    if fmt == "csv":
        return csv_header() + "".join(csv_line(r) for r in records)
    if fmt == "json":
        return json.dumps([r.row() for r in records], indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected csv or json")


def write_records(records: Sequence[TrialRecord], path, fmt: str = "csv") -> None:
    text = format_records(records, fmt)
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise OSError(f"cannot write records to {path}: {e.strerror or e}") from e


def parse_records(text: str, fmt: str = "csv") -> list[TrialRecord]:
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != FIELDS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = list(reader)
    elif fmt == "json":
        rows = json.loads(text)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected csv or json")
    return [TrialRecord(**{f: _parse(f, row[f]) for f in FIELDS}) for row in rows]


def read_records(path, fmt: str | None = None) -> list[TrialRecord]:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    try:
        text = path.read_text()
    except OSError as e:
        raise OSError(f"cannot read records from {path}: {e.strerror or e}") from e
    return parse_records(text, fmt)


class StreamingSink:
    """Appends CSV lines to ``<path>.incomplete`` as trials finish.

    ``finalize`` writes the canonically sorted output to ``path`` and removes
    the partial file. If the run dies, the ``.incomplete`` file stays behind.
    """

    def __init__(self, path, fmt: str = "csv"):
        self.path = Path(path)
        self.fmt = fmt
        self.partial = self.path.with_name(self.path.name + ".incomplete")
        try:
            self._fh = open(self.partial, "w")
            self._fh.write("# INCOMPLETE: run did not finish\n" + csv_header())
        except OSError as e:
            raise OSError(f"cannot open {self.partial}: {e.strerror or e}") from e

    def write(self, records: Iterable[TrialRecord]) -> None:
        try:
            for r in records:
                self._fh.write(csv_line(r))
            self._fh.flush()
        except OSError as e:
            raise OSError(f"write to {self.partial} failed: {e.strerror or e}") from e

    def finalize(self, records: Sequence[TrialRecord]) -> None:
        self._fh.close()
        write_records(records, self.path, self.fmt)
        os.remove(self.partial)

    def close(self) -> None:
        if not self._fh.closed:
            self._fh.close()

