from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import Sequence

import pandas as pd

from lyutab.analysis.strands import CheckReport, is_componentwise_linear, nu_table
from lyutab.combinatorics.monomial import MonomialIdeal, dual_ideal, from_complex, radical, to_complex
from lyutab.combinatorics.simplicial import (
	SimplicialComplex,
	barycentric_subdivision,
	codim_one_component_count,
	connected_components_nonisolated,
	dimension,
)
from lyutab.errors import InvalidInput, PropertyViolation
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)


@dataclass
class LyubeznikTable:
	"""Upper-triangular table lambda_{p,i}, 0 <= p <= i <= d, of R/I in n variables."""

	n: int
	d: int
	entries: dict[tuple[int, int], int] = field(default_factory=dict)
	field_name: str = "QQ"
	metadata: dict = field(default_factory=dict)

	def lam(self, p: int, i: int) -> int:
		return self.entries.get((p, i), 0)

	@classmethod
	def trivial(cls, n: int, d: int, field_name: str = "QQ") -> "LyubeznikTable":
		return cls(n, d, {(d, d): 1}, field_name)

	def cleaned(self) -> dict[tuple[int, int], int]:
		return {key: v for key, v in sorted(self.entries.items()) if v}

	def violations(self) -> list[str]:
		found = []
		d = self.d
		entries = self.cleaned()
		for (p, i), v in entries.items():
			if v < 0:
				found.append(f"lambda_{p},{i} is negative")
			if not 0 <= p <= i <= d:
				found.append(f"lambda_{p},{i} = {v} lies outside 0 <= p <= i <= {d}")
		if self.lam(d, d) == 0:
			found.append(f"lambda_{d},{d} vanishes")
		euler = sum((-1) ** (i - p) * v for (p, i), v in entries.items())
		if euler != 1:
			found.append(f"Euler characteristic is {euler}, expected 1")
		if d >= 1 and self.lam(0, d):
			found.append(f"lambda_0,{d} is nonzero with d >= 1")
		if d >= 2 and self.lam(1, d):
			found.append(f"lambda_1,{d} is nonzero with d >= 2")
		if d >= 1 and self.lam(1, 1) != (1 if d == 1 else 0):
			found.append(f"lambda_1,1 = {self.lam(1, 1)} with d = {d}")
		if self.lam(0, 0) != (1 if d == 0 else 0):
			found.append(f"lambda_0,0 = {self.lam(0, 0)} with d = {d}")
		return found

	def to_frame(self) -> pd.DataFrame:
		"""(d+1) x (d+1) matrix indexed by p (rows) and i (columns); below the diagonal is None."""
		size = range(self.d + 1)
		frame = pd.DataFrame([[self.lam(p, i) if i >= p else None for i in size] for p in size], index=list(size), columns=list(size), dtype=object)
		frame.index.name = "p"
		frame.attrs["d"] = self.d
		return frame

	def __eq__(self, other) -> bool:
		if not isinstance(other, LyubeznikTable):
			return NotImplemented
		return self.d == other.d and self.cleaned() == other.cleaned()


def table_from_matrix(rows: Sequence[Sequence[int | None]], n: int = 0, field_name: str = "QQ") -> LyubeznikTable:
	"""Read a printed square table (row p, column i); entries below the diagonal must be blank or 0."""
	d = len(rows) - 1
	entries = {}
	for p, row in enumerate(rows):
		if len(row) != d + 1:
			raise InvalidInput("a Lyubeznik table must be square")
		for i, value in enumerate(row):
			if value is None or value == 0:
				continue
			if i < p:
				raise InvalidInput(f"entry ({p}, {i}) is below the diagonal")
			entries[(p, i)] = int(value)
	return LyubeznikTable(n or d, d, entries, field_name)


def lyubeznik_table(
	ideal: MonomialIdeal,
	k: FieldSpec,
	rank_mode: str = "exact",
	seed: int | None = 0,
	trials: int = 3,
	budgets: Budgets = DEFAULT_BUDGETS,
	validate: bool = True,
) -> LyubeznikTable:
	"""lambda_{p,i}(R/I) = nu_{i-p, n-p}(I^dual), with d the largest facet size of the complex of I."""
	metadata = {}
	if not ideal.is_squarefree:
		logger.warning("%s is not squarefree; using its radical", ideal)
		ideal = radical(ideal)
		metadata["radical"] = str(ideal)
	ideal.require_proper()
	n = ideal.n
	delta = to_complex(ideal)
	d = dimension(delta) + 1
	nu = nu_table(dual_ideal(ideal), k, rank_mode, seed, trials, budgets, validate)
	entries = {}
	for (a, b), value in nu.cleaned().items():
		p = n - b
		entries[(p, a + p)] = value
	metadata.update({"rank_mode": rank_mode, **{key: v for key, v in nu.metadata.items() if key != "field"}})
	table = LyubeznikTable(n, d, entries, str(k), metadata)
	if validate:
		problems = table.violations()
		if problems:
			raise PropertyViolation("Lyubeznik table", problems)
	return table


def complex_lyubeznik_table(delta: SimplicialComplex, k: FieldSpec, subdivide: int = 0, budgets: Budgets = DEFAULT_BUDGETS, **kwargs) -> LyubeznikTable:
	"""Table of the Stanley-Reisner ring of delta, after `subdivide` barycentric subdivisions."""
	for _ in range(subdivide):
		delta = barycentric_subdivision(delta, budgets)
	if subdivide and delta.is_full_simplex:
		# a subdivided point: k[x] has the trivial table
		return LyubeznikTable.trivial(delta.n, delta.n, str(k))
	return lyubeznik_table(from_complex(delta), k, budgets=budgets, **kwargs)


@dataclass
class RhoSums:
	sums: list[int]
	trivial: list[bool]

	@property
	def top_trivial(self) -> bool:
		return self.trivial[-1]


def rho_sums(table: LyubeznikTable) -> RhoSums:
	"""rho_j = sum_i lambda_{i,i+j} for j = 0..d."""
	sums = [sum(table.lam(i, i + j) for i in range(table.d - j + 1)) for j in range(table.d + 1)]
	trivial = [value <= 1 if j == 0 else value == 0 for j, value in enumerate(sums)]
	return RhoSums(sums, trivial)


def is_trivial_lyubeznik(table: LyubeznikTable) -> bool:
	return table.cleaned() == {(table.d, table.d): 1}


def check_lambda_consecutiveness(table: LyubeznikTable) -> CheckReport:
	"""Consecutive nontrivial superdiagonals plus the low-dimension identities."""
	report = CheckReport("lambda-consecutiveness")
	d = table.d
	lam = table.lam
	rho = rho_sums(table)
	report.details["rho"] = rho.sums
	nontrivial = [not t for t in rho.trivial]

	def bad(j: int) -> bool:
		return 0 <= j <= d and nontrivial[j]

	for j in range(1, d):
		if bad(j) and not (bad(j - 1) or bad(j + 1)):
			report.fail(f"rho_{j} is nontrivial with trivial neighbours (j={j})")
	if d >= 1 and bad(0) and not bad(1):
		report.fail("rho_0 is nontrivial but rho_1 is trivial (j=0)")
	if not rho.top_trivial:
		report.fail(f"rho_{d} is nontrivial")

	if d == 2:
		if lam(2, 2) - 1 != lam(0, 1):
			report.fail(f"d=2: lambda_2,2 - 1 = {lam(2, 2) - 1} but lambda_0,1 = {lam(0, 1)}")
		others = {key: v for key, v in table.cleaned().items() if key not in {(2, 2), (0, 1)}}
		if others:
			report.fail(f"d=2: unexpected nonzero entries {sorted(others)}")
	if d >= 3:
		if lam(2, d) != lam(0, d - 1):
			report.fail(f"d={d}: lambda_2,{d} = {lam(2, d)} but lambda_0,{d - 1} = {lam(0, d - 1)}")
		x = lam(3, 3) - 1 if d == 3 else lam(3, d)
		chain = [lam(1, d - 1), x, lam(1, d - 1) + lam(0, d - 2), x + lam(2, d - 1)]
		if not chain[0] <= chain[1] <= chain[2] <= chain[3]:
			report.fail(f"d={d}: inequality chain {chain} is not increasing")
		if d == 3 and lam(1, 2) + lam(0, 1) != lam(3, 3) + lam(2, 2) - 1:
			report.fail("d=3: lambda_1,2 + lambda_0,1 != lambda_3,3 + lambda_2,2 - 1")
	return report


def lambda_01_topological(delta: SimplicialComplex) -> int:
	"""c - 1 for c components of the complex without its isolated points, when dim R/I >= 2."""
	if dimension(delta) + 1 < 2:
		return 0
	return connected_components_nonisolated(delta) - 1


def lambda_dd_topological(delta: SimplicialComplex) -> int:
	return codim_one_component_count(delta)


def is_sequentially_cm(ideal: MonomialIdeal, k: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
	"""R/I is sequentially Cohen-Macaulay exactly when the dual ideal is componentwise linear."""
	ideal.require_squarefree().require_proper()
	return is_componentwise_linear(dual_ideal(ideal), k, budgets)
