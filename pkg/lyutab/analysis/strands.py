from __future__ import annotations
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from lyutab.analysis.resolution import (
	BettiTable,
	MultigradedFreeComplex,
	betti_table,
	koszul_betti,
	minimal_resolution,
)
from lyutab.combinatorics.monomial import MonomialIdeal, degree_component
from lyutab.errors import InvalidInput, PropertyViolation
from lyutab.linalg.exactla import MonomialMatrix, generic_rank
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)


@dataclass
class CheckReport:
	name: str
	passed: bool = True
	violations: list[str] = field(default_factory=list)
	details: dict = field(default_factory=dict)

	def fail(self, message: str) -> None:
		self.passed = False
		self.violations.append(message)

	def as_dict(self) -> dict:
		return {"name": self.name, "passed": self.passed, "violations": list(self.violations), "details": dict(self.details)}


@dataclass
class LinearStrand:
	r: int
	terms: list[list[tuple[int, ...]]]
	differentials: list[MonomialMatrix | None]

	@property
	def ranks(self) -> list[int]:
		return [len(t) for t in self.terms]


def linear_strand(C: MultigradedFreeComplex, r: int) -> LinearStrand:
	"""Generators of degree i + r in homological degree i, with the linear part of each differential."""
	if not C.is_minimal:
		raise InvalidInput("linear strands are taken from a minimal complex")
	keep = [[g for g, deg in enumerate(term) if sum(deg) == i + r] for i, term in enumerate(C.terms)]
	terms = [[C.terms[i][g] for g in kept] for i, kept in enumerate(keep)]
	differentials: list[MonomialMatrix | None] = [None]
	for i in range(1, len(C.terms)):
		cols = {g: c for c, g in enumerate(keep[i])}
		rows = {g: r_ for r_, g in enumerate(keep[i - 1])}
		entries = {}
		for s, column in C.differentials[i].items():
			if s not in cols:
				continue
			for t, coef in column.items():
				if t in rows:
					entries[(rows[t], cols[s])] = (coef, tuple(a - b for a, b in zip(C.terms[i][s], C.terms[i - 1][t])))
		differentials.append(MonomialMatrix(len(keep[i - 1]), len(keep[i]), C.n, C.field, entries))
	while len(terms) > 1 and not terms[-1]:
		terms.pop()
		differentials.pop()
	return LinearStrand(r, terms, differentials)


@dataclass
class NuTable:
	"""nu_{i,j} keyed by (i, j); `l` is the least generator degree, `n` the variable count."""

	n: int
	l: int
	entries: dict[tuple[int, int], int] = field(default_factory=dict)
	metadata: dict = field(default_factory=dict)

	def nu(self, i: int, j: int) -> int:
		return self.entries.get((i, j), 0)

	@classmethod
	def trivial(cls, n: int, l: int) -> "NuTable":
		return cls(n, l, {(0, l): 1})

	def cleaned(self) -> dict[tuple[int, int], int]:
		return {key: v for key, v in sorted(self.entries.items()) if v}

	def violations(self, betti: BettiTable | None = None) -> list[str]:
		found = []
		entries = self.cleaned()
		if any(v < 0 for v in entries.values()):
			found.append("negative nu entry")
		total = sum((-1) ** i * v for (i, _), v in entries.items())
		if total != 1:
			found.append(f"alternating sum of nu is {total}, expected 1")
		if self.nu(0, self.l) < 1:
			found.append(f"nu_0,{self.l} vanishes")
		if betti is not None:
			graded = betti.graded
			for (i, j), v in entries.items():
				if v > graded.get((i, j), 0):
					found.append(f"nu_{i},{j} = {v} exceeds beta_{i},{j} = {graded.get((i, j), 0)}")
			for r in sorted({j - i for i, j in graded} | {j - i for i, j in entries}):
				nu_row = sum((-1) ** i * v for (i, j), v in entries.items() if j - i == r)
				beta_row = sum((-1) ** i * v for (i, j), v in graded.items() if j - i == r)
				if nu_row != beta_row:
					found.append(f"strand {r}: alternating nu sum {nu_row} != alternating beta sum {beta_row}")
		return found

	def to_frame(self) -> pd.DataFrame:
		"""Rows r = j - i, columns i."""
		entries = self.cleaned()
		if not entries:
			return pd.DataFrame()
		rows = range(min(j - i for i, j in entries), max(j - i for i, j in entries) + 1)
		cols = range(max(i for i, _ in entries) + 1)
		frame = pd.DataFrame([[entries.get((i, i + r), 0) for i in cols] for r in rows], index=list(rows), columns=list(cols))
		frame.index.name = "r"
		frame.attrs["l"] = self.l
		return frame

	def __eq__(self, other) -> bool:
		if not isinstance(other, NuTable):
			return NotImplemented
		return self.l == other.l and self.cleaned() == other.cleaned()


def strand_homology(strand: LinearStrand, k: FieldSpec, rank_mode: str = "exact", rng: np.random.Generator | None = None, trials: int = 3) -> tuple[list[int], list[dict]]:
	"""dim_K H_i of the strand tensored with K = k(x1..xn): rank formula, no kernels built."""
	ranks = [0]
	details = []
	for i in range(1, len(strand.terms)):
		result = generic_rank(strand.differentials[i], k, mode=rank_mode, seed=rng, trials=trials)
		ranks.append(result.rank)
		if rank_mode == "randomized":
			details.append({"r": strand.r, "i": i, **result.as_dict()})
	ranks.append(0)
	return [len(strand.terms[i]) - ranks[i] - ranks[i + 1] for i in range(len(strand.terms))], details


def nu_table_from_resolution(
	C: MultigradedFreeComplex,
	l: int,
	k: FieldSpec,
	rank_mode: str = "exact",
	seed: int | None = 0,
	trials: int = 3,
	validate: bool = True,
) -> NuTable:
	betti = betti_table(C)
	rng = np.random.default_rng(seed)
	entries: dict[tuple[int, int], int] = {}
	bounds: list[dict] = []
	for r in betti.strand_offsets():
		strand = linear_strand(C, r)
		homology, details = strand_homology(strand, k, rank_mode, rng, trials)
		bounds.extend(details)
		for i, value in enumerate(homology):
			if value:
				entries[(i, i + r)] = value
	table = NuTable(C.n, l, entries, {"field": str(k), "rank_mode": rank_mode})
	if rank_mode == "randomized":
		table.metadata.update({"seed": seed, "trials": trials, "failure_bounds": bounds})
	if validate:
		problems = table.violations(betti)
		if problems:
			raise PropertyViolation("nu-table", problems)
	return table


def nu_table(
	ideal: MonomialIdeal,
	k: FieldSpec,
	rank_mode: str = "exact",
	seed: int | None = 0,
	trials: int = 3,
	budgets: Budgets = DEFAULT_BUDGETS,
	validate: bool = True,
) -> NuTable:
	"""nu_{i,i+r} = beta_{i,i+r} - rank d_i - rank d_{i+1} on each linear strand, ranks over k(x)."""
	ideal.require_proper()
	C = minimal_resolution(ideal, k, budgets)
	table = nu_table_from_resolution(C, ideal.min_degree, k, rank_mode, seed, trials, validate)
	logger.debug("nu-table of %s over %s: %s", ideal, k, table.cleaned())
	return table


def is_trivial_nu(table: NuTable) -> bool:
	return table.cleaned() == {(0, table.l): 1}


@dataclass
class ColumnSums:
	sums: list[int]
	trivial: list[bool]
	top_trivial: bool


def _column_trivial(i: int, value: int) -> bool:
	return value <= 1 if i == 0 else value == 0


def nu_column_sums(table: NuTable) -> ColumnSums:
	"""nu_i = sum_j nu_{i,j} for i = 0..n, with per-column triviality."""
	sums = [0] * (table.n + 1)
	for (i, _), v in table.cleaned().items():
		if i >= len(sums):
			sums.extend([0] * (i + 1 - len(sums)))
		sums[i] += v
	trivial = [_column_trivial(i, v) for i, v in enumerate(sums)]
	return ColumnSums(sums, trivial, trivial[table.n] if table.n < len(trivial) else True)


def check_nu_consecutiveness(table: NuTable) -> CheckReport:
	"""A nontrivial nu_j (1 <= j <= n-1) needs a nontrivial neighbour; a nontrivial nu_0 needs a nontrivial nu_1."""
	report = CheckReport("nu-consecutiveness")
	columns = nu_column_sums(table)
	nontrivial = [not t for t in columns.trivial]
	report.details["column_sums"] = columns.sums

	def bad(j: int) -> bool:
		return 0 <= j < len(nontrivial) and nontrivial[j]

	if bad(0) and not bad(1):
		report.fail("nu_0 is nontrivial but nu_1 is trivial (j=0)")
	for j in range(1, table.n):
		if bad(j) and not (bad(j - 1) or bad(j + 1)):
			report.fail(f"nu_{j} is nontrivial with trivial neighbours (j={j})")
	if not columns.top_trivial:
		report.fail(f"nu_{table.n} is nontrivial")
	return report


def componentwise_linearity_report(ideal: MonomialIdeal, k: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> CheckReport:
	"""Test that I_<r> has an r-linear resolution for r from the least generator degree to reg(I)."""
	ideal.require_proper()
	report = CheckReport("componentwise-linear")
	reg = koszul_betti(ideal, k).regularity
	low = ideal.min_degree
	report.details.update({"sweep": [low, reg]})
	checked = []
	for r in range(low, reg + 1):
		component = degree_component(ideal, r, budgets)
		if component.is_zero:
			continue
		betti = koszul_betti(component, k)
		checked.append(r)
		off = [(i, j) for i, j in betti.graded if j != i + r]
		if off:
			report.fail(f"I_<{r}> has non-linear Betti numbers at {off}")
			report.details["first_failure"] = r
			break
	report.details["checked"] = checked
	return report


def is_componentwise_linear(ideal: MonomialIdeal, k: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
	return componentwise_linearity_report(ideal, k, budgets).passed
