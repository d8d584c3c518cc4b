"""Sweep rows and their CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

FIELDS = ("p", "check_name", "value", "prediction", "ratio", "satisfied")


def fmt(v) -> str:
    """Decimal text for a value: exact for integers and surds, 17 significant digits for floats."""
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    # moments.Surd and anything else with an exact textual form
    if hasattr(v, "x") and hasattr(v, "y") and hasattr(v, "r"):
        if v.y == 0:
            return str(v.x)
        return f"{v.x}{v.y:+d}*sqrt({v.r})"
    return str(v)


def status(ok: bool | None) -> str:
    if ok is None:
        return "report_only"
    return "true" if ok else "false"


@dataclass(frozen=True)
class SweepRow:
    p: int
    check_name: str
    value: str
    prediction: str
    ratio: str
    satisfied: str

    @classmethod
    def make(cls, p: int, name: str, value, prediction=None, ratio=None, ok: bool | None = None):
        return cls(p, name, fmt(value), fmt(prediction), fmt(ratio), status(ok))

    @property
    def failed(self) -> bool:
        return self.satisfied == "false"


def sort_rows(rows) -> list[SweepRow]:
    return sorted(rows, key=lambda r: (r.p, r.check_name))


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(FIELDS)
    for r in rows:
        w.writerow([r.p, r.check_name, r.value, r.prediction, r.ratio, r.satisfied])
    return buf.getvalue()


def to_json(rows) -> str:
    return json.dumps([asdict(r) for r in rows], indent=1) + "\n"


def from_csv(text: str) -> list[SweepRow]:
    rd = csv.DictReader(io.StringIO(text))
    return [SweepRow(int(d["p"]), d["check_name"], d["value"], d["prediction"], d["ratio"], d["satisfied"]) for d in rd]


def from_json(text: str) -> list[SweepRow]:
    return [SweepRow(**d) for d in json.loads(text)]
