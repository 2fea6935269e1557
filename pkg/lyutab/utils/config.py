from __future__ import annotations
import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

from lyutab.errors import InvalidInput

BUDGET_ENV = "LYU_BUDGET"
DEBUG_ENV = "LYU_DEBUG"

_BUDGET_KEYS = {
	"taylor": "taylor_generators",
	"generators": "taylor_generators",
	"vertices": "subdivision_vertices",
	"degree": "component_degree",
	"subdivision": "subdivision_generators",
}


@dataclass(frozen=True)
class Budgets:
	taylor_generators: int = 20
	subdivision_vertices: int = 24
	component_degree: int = 12
	subdivision_generators: int = 14
	debug_checks: bool = False

	@classmethod
	def from_env(cls) -> "Budgets":
		"""Defaults overridden by LYU_BUDGET / LYU_DEBUG (a .env file is honoured).

		LYU_BUDGET is either one integer, which replaces both the Taylor generator
		budget and the subdivision vertex budget, or a comma list such as
		``taylor=14,vertices=30,degree=10,subdivision=16``. The subdivision
		entry is the Taylor generator budget for subdivided complexes in the battery.
		"""
		_load_dotenv_once()
		budgets = cls()
		raw = os.getenv(BUDGET_ENV, "").strip()
		if raw:
			budgets = budgets.with_overrides(raw)
		if os.getenv(DEBUG_ENV, "").strip().lower() in {"1", "true", "yes", "on"}:
			budgets = replace(budgets, debug_checks=True)
		return budgets

	def with_overrides(self, raw: str) -> "Budgets":
		if raw.isdigit():
			value = int(raw)
			return replace(self, taylor_generators=value, subdivision_vertices=value)
		changes = {}
		for part in raw.split(","):
			key, sep, value = part.partition("=")
			key = key.strip().lower()
			if not sep or key not in _BUDGET_KEYS or not value.strip().isdigit():
				raise InvalidInput(f"cannot read {BUDGET_ENV} entry {part!r}")
			changes[_BUDGET_KEYS[key]] = int(value)
		return replace(self, **changes)


DEFAULT_BUDGETS = Budgets()
_dotenv_loaded = False


def _load_dotenv_once() -> None:
	global _dotenv_loaded
	if not _dotenv_loaded:
		load_dotenv()
		_dotenv_loaded = True
