from __future__ import annotations


class LyutabError(Exception):
	"""Base class for every error raised by lyutab."""


class InvalidInput(LyutabError, ValueError):
	"""Malformed complex, ideal, matrix, flag or input file."""


class NotSquarefree(InvalidInput):
	pass


class InvalidIdeal(InvalidInput):
	"""Zero or unit ideal handed to a resolution-facing operation."""


class NonPureComplex(InvalidInput):
	pass


class VoidComplex(InvalidInput):
	pass


class BudgetExceeded(LyutabError):
	"""A generator, vertex or degree budget would be exceeded."""

	def __init__(self, what: str, needed: int, budget: int):
		self.what = what
		self.needed = needed
		self.budget = budget
		super().__init__(f"{what} budget exceeded: need {needed}, budget is {budget} (raise it with LYU_BUDGET)")


class ResolutionInconsistency(LyutabError):
	"""Internal error: a complex stopped being a multigraded complex."""


class PropertyViolation(LyutabError):
	def __init__(self, what: str, violations: list[str]):
		self.what = what
		self.violations = list(violations)
		super().__init__(f"{what}: " + "; ".join(self.violations))
