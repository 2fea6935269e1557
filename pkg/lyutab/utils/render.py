from __future__ import annotations
from typing import Literal

import pandas as pd
from pydantic import BaseModel

from lyutab.analysis.lyubeznik import LyubeznikTable
from lyutab.analysis.resolution import BettiTable
from lyutab.analysis.strands import CheckReport, NuTable
from lyutab.errors import InvalidInput
from lyutab.utils.parse import table_model

Format = Literal["text", "json", "csv"]


def table_frame(table: BettiTable | NuTable | LyubeznikTable) -> pd.DataFrame:
	return table.to_frame()


def _grid(frame: pd.DataFrame, zero: str = ".") -> str:
	"""Aligned grid: zeros as dots, blanks (None) left empty."""
	if frame.empty:
		return "(empty table)"
	shown = frame.map(lambda v: "" if v is None else (zero if v == 0 else str(v)))
	shown.index = [f"{r}:" for r in frame.index]
	return shown.to_string()


def betti_text(table: BettiTable) -> str:
	frame = table.to_frame()
	if frame.empty:
		return "(zero module)"
	totals = pd.DataFrame([frame.attrs["totals"]], index=["total"], columns=frame.columns)
	return _grid(pd.concat([totals, frame]))


def nu_text(table: NuTable) -> str:
	return f"l = {table.l}\n" + _grid(table.to_frame())


def lyubeznik_text(table: LyubeznikTable) -> str:
	header = f"d = {table.d}, field {table.field_name}"
	if table.metadata.get("radical"):
		header += f", radical {table.metadata['radical']}"
	return header + "\n" + _grid(table.to_frame(), zero="0")


def render(table: BettiTable | NuTable | LyubeznikTable, fmt: Format = "text") -> str:
	if fmt == "json":
		return table_model(table).model_dump_json(indent=2)
	if fmt == "csv":
		return table_frame(table).to_csv()
	if fmt != "text":
		raise InvalidInput(f"unknown output format {fmt!r}")
	if isinstance(table, BettiTable):
		return betti_text(table)
	if isinstance(table, NuTable):
		return nu_text(table)
	return lyubeznik_text(table)


def render_checks(reports: list[CheckReport], fmt: Format = "text") -> str:
	if fmt == "json":
		return pd.Series([r.as_dict() for r in reports]).to_json(orient="values", indent=2)
	if fmt == "csv":
		rows = [{"name": r.name, "passed": r.passed, "violations": "; ".join(r.violations)} for r in reports]
		return pd.DataFrame(rows, columns=["name", "passed", "violations"]).to_csv(index=False)
	if fmt != "text":
		raise InvalidInput(f"unknown output format {fmt!r}")
	lines = []
	for report in reports:
		lines.append(f"[{'ok' if report.passed else 'FAIL'}] {report.name}")
		lines.extend(f"  - {v}" for v in report.violations)
		lines.extend(f"  {key}: {value}" for key, value in report.details.items())
	return "\n".join(lines)


def render_report(report: BaseModel, fmt: Format = "text") -> str:
	if fmt == "json":
		return report.model_dump_json(indent=2)
	data = report.model_dump()
	if fmt == "csv":
		flat = {key: "; ".join(map(str, v)) if isinstance(v, list) else v for key, v in data.items()}
		return pd.Series(flat, name="value").to_csv(index_label="field")
	if fmt != "text":
		raise InvalidInput(f"unknown output format {fmt!r}")
	violations = data.pop("violations", None) or data.pop("mismatches", None) or []
	skipped = data.pop("skipped_items", None) or []
	lines = [f"{key}: {value}" for key, value in data.items()]
	lines.extend(f"  - {v}" for v in violations)
	lines.extend(f"  skipped {v}" for v in skipped)
	return "\n".join(lines)
