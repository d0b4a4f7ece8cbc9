"""Run results and their text and JSON Lines renderings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import orjson

from lawbench.lawcheck import Counterexample, LawId, LawReport, Mode, Status
from lawbench.schemas import (
    Bounds,
    CatalogRecordOut,
    LawRecordOut,
    NamedValueOut,
    ReproRecordOut,
    ValueRecordOut,
    WitnessOut,
)
from lawbench.syntax import parse_value, show_value
from lawbench.values import Val

Format = Literal["text", "machine"]


@dataclass
class Reproduction:
    """A named example: its law reports, printed values and whether it matched."""

    example: str
    claim: str
    reports: list[LawReport] = field(default_factory=list)
    values: list[tuple[str, Val]] = field(default_factory=list)
    checks: list[bool] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def show(self, label: str, value: Val) -> None:
        self.values.append((label, value))

    def expect(self, condition: bool, note: str) -> None:
        self.checks.append(bool(condition))
        if not condition:
            self.notes.append(f"mismatch: {note}")

    @property
    def matched(self) -> bool:
        return all(self.checks) and all(report.matched for report in self.reports)


@dataclass
class RunResult:
    reports: list[LawReport] = field(default_factory=list)
    reproductions: list[Reproduction] = field(default_factory=list)
    entries: list[tuple[str, str, str]] = field(default_factory=list)
    values: list[tuple[str, Val]] = field(default_factory=list)
    bounds: Bounds | None = None

    @property
    def all_reports(self) -> list[LawReport]:
        nested = [r for repro in self.reproductions for r in repro.reports]
        return [*self.reports, *nested]

    @property
    def exit_code(self) -> int:
        ok = all(r.matched for r in self.reports) and all(p.matched for p in self.reproductions)
        return 0 if ok else 1


def to_record(report: LawReport) -> LawRecordOut:
    witness = None
    if report.witness is not None:
        w = report.witness
        witness = WitnessOut(
            inputs=[NamedValueOut(name=name, value=show_value(v)) for name, v in w.inputs],
            lhs=show_value(w.lhs),
            rhs=show_value(w.rhs),
            lhsPath=w.lhs_path,
            rhsPath=w.rhs_path,
            divergence=w.divergence,
        )
    return LawRecordOut(
        lawId=report.law.value,
        subject=report.subject,
        status=report.status.value,
        expected=report.expected.value if report.expected else None,
        casesChecked=report.cases_checked,
        mode=report.mode.value,
        witness=witness,
        bounds=report.bounds,
        seed=report.bounds.sampleSeed,
        elapsedMs=round(report.elapsed * 1000, 3),
    )


def from_record(record: LawRecordOut) -> LawReport:
    witness = None
    if record.witness is not None:
        w = record.witness
        witness = Counterexample(
            tuple((item.name, parse_value(item.value)) for item in w.inputs),
            parse_value(w.lhs),
            parse_value(w.rhs),
            w.lhsPath,
            w.rhsPath,
            w.divergence,
        )
    return LawReport(
        LawId(record.lawId),
        record.subject,
        Status(record.status),
        record.casesChecked,
        Mode(record.mode),
        record.bounds,
        witness,
        Status(record.expected) if record.expected else None,
        record.elapsedMs / 1000,
    )


def _dump(model, *, stable: bool) -> bytes:
    exclude = {"elapsedMs"} if stable else None
    return orjson.dumps(model.model_dump(exclude=exclude), option=orjson.OPT_SORT_KEYS) + b"\n"


def render_machine(result: RunResult, *, stable: bool = False) -> bytes:
    """JSON Lines: law records, then per reproduction its laws, values and outcome."""
    chunks = [
        _dump(CatalogRecordOut(section=section, name=name, description=text), stable=stable)
        for section, name, text in result.entries
    ]
    chunks.extend(_dump(to_record(report), stable=stable) for report in result.reports)
    for label, value in result.values:
        record = ValueRecordOut(example="eval", label=label, value=show_value(value))
        chunks.append(_dump(record, stable=stable))
    for repro in result.reproductions:
        chunks.extend(_dump(to_record(report), stable=stable) for report in repro.reports)
        for label, value in repro.values:
            record = ValueRecordOut(example=repro.example, label=label, value=show_value(value))
            chunks.append(_dump(record, stable=stable))
        chunks.append(
            _dump(
                ReproRecordOut(
                    example=repro.example,
                    claim=repro.claim,
                    matched=repro.matched,
                    notes=repro.notes,
                ),
                stable=stable,
            )
        )
    return b"".join(chunks)


def parse_machine(data: bytes) -> list[LawReport]:
    """Law reports back from a machine rendering."""
    reports = []
    for line in data.splitlines():
        if not line.strip():
            continue
        payload = orjson.loads(line)
        if payload.get("type") == "law":
            reports.append(from_record(LawRecordOut.model_validate(payload)))
    return reports


def bounds_header(bounds: Bounds) -> str:
    dumped = bounds.model_dump(exclude_none=True)
    fields = ", ".join(f"{key}={value}" for key, value in dumped.items())
    return f"bounds: {fields}"


def format_report(report: LawReport) -> list[str]:
    expected = ""
    if report.expected is not None:
        expected = " (expected)" if report.matched else f" (expected {report.expected.value})"
    lines = [
        f"{report.status.value:<7} {report.law.value:<22} {report.subject}  "
        f"[{report.cases_checked} cases, {report.mode.value}]{expected}"
    ]
    w = report.witness
    if w is not None:
        for name, value in w.inputs:
            lines.append(f"    {name} = {show_value(value)}")
        lines.append(f"    {w.lhs_path} = {show_value(w.lhs)}")
        lines.append(f"    {w.rhs_path} = {show_value(w.rhs)}")
        if w.divergence is not None:
            lines.append(f"    first divergence at index {w.divergence}")
    return lines


def render_text(result: RunResult) -> bytes:
    lines: list[str] = []
    if result.bounds is not None:
        lines.append(bounds_header(result.bounds))
    lines.extend(f"{section:<10} {name:<22} {text}" for section, name, text in result.entries)
    for report in result.reports:
        lines.extend(format_report(report))
    lines.extend(f"{label} = {show_value(value)}" for label, value in result.values)
    for repro in result.reproductions:
        lines.append(f"REPRO {repro.example}: {'matched' if repro.matched else 'MISMATCH'}")
        lines.append(f"  claim: {repro.claim}")
        for report in repro.reports:
            lines.extend("  " + line for line in format_report(report))
        for label, value in repro.values:
            lines.append(f"  {label} = {show_value(value)}")
        lines.extend(f"  {note}" for note in repro.notes)
    return ("\n".join(lines) + "\n").encode()


def render_report(result: RunResult, format: Format = "text", *, stable: bool = False) -> bytes:
    if format == "machine":
        return render_machine(result, stable=stable)
    return render_text(result)
