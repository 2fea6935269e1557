from __future__ import annotations
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, Field

from lyutab.analysis.lyubeznik import LyubeznikTable, lyubeznik_table
from lyutab.analysis.resolution import BettiTable, quotient_betti, resolution_betti
from lyutab.analysis.strands import NuTable, nu_table
from lyutab.combinatorics.monomial import MonomialIdeal, dual_ideal, embed, height, intersect, sum_disjoint
from lyutab.errors import InvalidInput
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)


@dataclass
class ComposedPrediction:
	table: NuTable | LyubeznikTable | BettiTable
	clause: Literal["trivial", "convolution"]
	notes: dict = field(default_factory=dict)


class Mismatch(BaseModel):
	p: int = Field(default=0)
	i: int = Field(default=0)
	expected: int = Field(default=0)
	actual: int = Field(default=0)


class CompositionReport(BaseModel):
	status: Literal["match", "mismatch"] = Field(default="match")
	mode: str = Field(default="")
	clause: str = Field(default="")
	mismatches: list[Mismatch] = Field(default_factory=list)


def predict_nu_sum(nu_i: NuTable, nu_j: NuTable, i1_nonzero: bool, j1_nonzero: bool, l_i: int, l_j: int) -> ComposedPrediction:
	"""nu-table of IT + JT from the factor tables alone."""
	n = nu_i.n + nu_j.n
	if i1_nonzero or j1_nonzero:
		return ComposedPrediction(NuTable.trivial(n, 1), "trivial")
	table: Counter = Counter()
	table.update(nu_i.cleaned())
	table.update(nu_j.cleaned())
	# c + d = i - 1, a + b = j - i + 1
	for (c, ca), x in nu_i.cleaned().items():
		for (d, db), y in nu_j.cleaned().items():
			i = c + d + 1
			j = i + (ca - c) + (db - d) - 1
			table[(i, j)] += x * y
	return ComposedPrediction(NuTable(n, min(l_i, l_j), dict(table)), "convolution")


def predict_lambda_intersection(lam_i: LyubeznikTable, lam_j: LyubeznikTable, ht_i: int, ht_j: int) -> ComposedPrediction:
	"""Lyubeznik table of T/(IT ∩ JT) for I in m variables and J in n others."""
	m, n = lam_i.n, lam_j.n
	d = max(lam_i.d + n, lam_j.d + m)
	name = lam_i.field_name
	if ht_i == 1 or ht_j == 1:
		return ComposedPrediction(LyubeznikTable.trivial(m + n, d, name), "trivial", {"d": d})
	table: Counter = Counter()
	for (p, i), v in lam_i.cleaned().items():
		table[(p + n, i + n)] += v
	for (p, i), v in lam_j.cleaned().items():
		table[(p + m, i + m)] += v
	for (q, j), x in lam_i.cleaned().items():
		for (r, k), y in lam_j.cleaned().items():
			table[(q + r, j + k + 1)] += x * y
	return ComposedPrediction(LyubeznikTable(m + n, d, dict(table), name), "convolution", {"d": d})


def predict_betti_sum(betti_i: BettiTable, betti_j: BettiTable) -> ComposedPrediction:
	"""Multigraded Betti numbers of T/(IT + JT): the tensor product of the two quotient resolutions."""
	qi, qj = quotient_betti(betti_i), quotient_betti(betti_j)
	counts = []
	for (a, deg_a), x in qi.multigraded.items():
		for (b, deg_b), y in qj.multigraded.items():
			counts.append(((a + b, deg_a + deg_b), x * y))
	return ComposedPrediction(BettiTable.from_counts(betti_i.n + betti_j.n, counts), "convolution")


def intersect_disjoint(first: MonomialIdeal, second: MonomialIdeal, check: bool = True) -> MonomialIdeal:
	"""IT ∩ JT for ideals in disjoint variables, as the dual of the sum of the duals."""
	via_duals = dual_ideal(sum_disjoint(dual_ideal(first), dual_ideal(second)))
	if check:
		n = first.n + second.n
		direct = intersect(embed(first, n), embed(second, n, first.n))
		if direct != via_duals:
			raise InvalidInput(f"dual-sum route {via_duals} disagrees with direct intersection {direct}")
	return via_duals


def _diff(expected: dict, actual: dict) -> list[Mismatch]:
	return [
		Mismatch(p=key[0], i=key[1], expected=expected.get(key, 0), actual=actual.get(key, 0))
		for key in sorted(set(expected) | set(actual))
		if expected.get(key, 0) != actual.get(key, 0)
	]


def verify_composition(
	first: MonomialIdeal,
	second: MonomialIdeal,
	k: FieldSpec,
	mode: Literal["sum-nu", "intersection-lambda", "sum-betti"] = "sum-nu",
	rank_mode: str = "exact",
	seed: int | None = 0,
	budgets: Budgets = DEFAULT_BUDGETS,
) -> CompositionReport:
	"""Compare a prediction built from the factors with the table of the composed ideal."""
	if mode == "sum-nu":
		nu_i = nu_table(first, k, rank_mode, seed, budgets=budgets)
		nu_j = nu_table(second, k, rank_mode, seed, budgets=budgets)
		prediction = predict_nu_sum(nu_i, nu_j, first.has_linear_generator, second.has_linear_generator, first.min_degree, second.min_degree)
		actual = nu_table(sum_disjoint(first, second), k, rank_mode, seed, budgets=budgets).cleaned()
		expected = prediction.table.cleaned()
	elif mode == "intersection-lambda":
		lam_i = lyubeznik_table(first, k, rank_mode, seed, budgets=budgets)
		lam_j = lyubeznik_table(second, k, rank_mode, seed, budgets=budgets)
		prediction = predict_lambda_intersection(lam_i, lam_j, height(first), height(second))
		composed = lyubeznik_table(intersect_disjoint(first, second), k, rank_mode, seed, budgets=budgets)
		actual = composed.cleaned()
		expected = prediction.table.cleaned()
	elif mode == "sum-betti":
		prediction = predict_betti_sum(resolution_betti(first, k, budgets), resolution_betti(second, k, budgets))
		actual = quotient_betti(resolution_betti(sum_disjoint(first, second), k, budgets)).graded
		expected = prediction.table.graded
	else:
		raise InvalidInput(f"unknown composition mode {mode!r}")
	mismatches = _diff(expected, actual)
	if mode == "intersection-lambda" and composed.d != prediction.table.d:
		# (-1, -1) carries the dimension d
		mismatches.append(Mismatch(p=-1, i=-1, expected=prediction.table.d, actual=composed.d))
	if mismatches:
		logger.warning("composition %s: %d mismatching entries", mode, len(mismatches))
	return CompositionReport(status="mismatch" if mismatches else "match", mode=mode, clause=prediction.clause, mismatches=mismatches)
