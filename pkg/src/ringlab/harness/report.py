"""Check records and their text/JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "skip", "data")
SCHEMA_VERSION = 1
GENERATED_BY = "ringlab"

# fixed key order of a serialized check
CHECK_KEYS = (
    "id", "suite", "anchor", "ring", "status", "reason", "vacuity",
    "witness", "counterexample", "data", "millis",
)


@dataclass
class CheckReport:
    """Outcome of one check on one ring.

    ``pass``/``fail`` only for checks with a definite asserted outcome;
    exploratory results use ``data``. ``vacuity`` marks claims that hold
    automatically at finite scale (every finite ring is periodic).
    """

    id: str
    suite: str
    anchor: str
    ring: str
    status: str
    reason: str = ""
    vacuity: bool = False
    witness: str | None = None
    counterexample: str | None = None
    data: dict = field(default_factory=dict)
    millis: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def as_dict(self, durations: bool = True) -> dict:
        out = {k: getattr(self, k) for k in CHECK_KEYS}
        out["millis"] = round(self.millis, 3) if durations else 0
        return out


def exit_code(reports: list[CheckReport]) -> int:
    """Nonzero iff any check failed."""
    return 1 if any(r.status == "fail" for r in reports) else 0


def summary(reports: list[CheckReport]) -> dict[str, int]:
    counts = {s: 0 for s in STATUSES}
    for r in reports:
        counts[r.status] += 1
    return counts


def render_json(reports: list[CheckReport], durations: bool = True) -> str:
    doc = {
        "version": SCHEMA_VERSION,
        "generated_by": GENERATED_BY,
        "checks": [r.as_dict(durations) for r in reports],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _cell(r: CheckReport) -> str:
    if r.status == "skip":
        return r.reason
    if r.counterexample is not None:
        return f"counterexample: {r.counterexample}"
    if r.witness is not None:
        return r.witness
    if r.data:
        return ", ".join(f"{k}={v}" for k, v in r.data.items())
    return r.reason


def render_text(reports: list[CheckReport], durations: bool = True) -> str:
    head = ("SUITE", "CHECK", "RING", "STATUS", "MS", "DETAIL")
    rows = []
    for r in reports:
        status = r.status + ("*" if r.vacuity else "")
        ms = f"{r.millis:.1f}" if durations else "-"
        rows.append((r.suite, r.id, r.ring, status, ms, _cell(r)))
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(head)]
    lines = []
    for row in [head, *rows]:
        cells = [c.ljust(w) for c, w in zip(row[:-1], widths)]
        lines.append("  ".join(cells + [row[-1]]).rstrip())
    counts = summary(reports)
    lines.append("")
    lines.append(
        f"{len(reports)} checks: "
        + ", ".join(f"{counts[s]} {s}" for s in STATUSES)
        + ("; * = vacuous at finite scale" if any(r.vacuity for r in reports) else "")
    )
    return "\n".join(lines) + "\n"


def render_report(reports: list[CheckReport], fmt: str = "text", durations: bool = True) -> str:
    if fmt == "json":
        return render_json(reports, durations)
    if fmt == "text":
        return render_text(reports, durations)
    raise ValueError(f"unknown format {fmt!r}")
