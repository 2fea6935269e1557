from __future__ import annotations
import logging
import re
from dataclasses import dataclass, field, replace
from multiprocessing import Pool

from pydantic import BaseModel, Field

from lyutab.analysis.lyubeznik import (
	LyubeznikTable,
	check_lambda_consecutiveness,
	complex_lyubeznik_table,
	is_sequentially_cm,
	is_trivial_lyubeznik,
	lambda_01_topological,
	lambda_dd_topological,
	lyubeznik_table,
	table_from_matrix,
)
from lyutab.analysis.resolution import hochster_betti, koszul_betti, resolution_betti
from lyutab.analysis.strands import (
	NuTable,
	check_nu_consecutiveness,
	is_componentwise_linear,
	is_trivial_nu,
	nu_column_sums,
	nu_table,
)
from lyutab.combinatorics import corpus as corpora
from lyutab.combinatorics.monomial import MonomialIdeal, dual_ideal, from_complex, squarefree
from lyutab.combinatorics.simplicial import SimplicialComplex, dimension, is_pure
from lyutab.errors import BudgetExceeded, InvalidInput, PropertyViolation
from lyutab.insights.compose import verify_composition
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)

CORPORA = ("paper-examples", "nK-exhaustive", "random-compositions")
_EXHAUSTIVE = re.compile(r"^n(\d)-exhaustive$")


class SuiteReport(BaseModel):
	corpus: str = Field(default="")
	chars: list[int] = Field(default_factory=list)
	rank_modes: list[str] = Field(default_factory=list)
	checked: int = Field(default=0)
	skipped: int = Field(default=0)
	skipped_items: list[str] = Field(default_factory=list)
	violations: list[str] = Field(default_factory=list)

	@property
	def passed(self) -> bool:
		return not self.violations


@dataclass
class Tally:
	checked: int = 0
	skipped: int = 0
	violations: list[str] = field(default_factory=list)
	skipped_items: list[str] = field(default_factory=list)
	fault: bool = False

	def expect(self, ok: bool, message: str) -> None:
		self.checked += 1
		if not ok:
			self.violations.append(message)

	def problems(self, label: str, found: list[str]) -> None:
		self.checked += 1
		self.violations.extend(f"{label}: {p}" for p in found)

	def skip(self, label: str, reason: Exception) -> None:
		self.skipped += 1
		self.skipped_items.append(f"{label}: {reason}")
		logger.info("skipped %s: %s", label, reason)

	def merge(self, other: "Tally") -> None:
		self.checked += other.checked
		self.skipped += other.skipped
		self.skipped_items.extend(other.skipped_items)
		self.violations.extend(other.violations)

	def perturb_nu(self, table: NuTable) -> NuTable:
		if not self.fault:
			return table
		self.fault = False
		entries = dict(table.entries)
		entries[(0, table.l)] = entries.get((0, table.l), 0) + 1
		logger.info("injecting a fault into nu_0,%d", table.l)
		return replace(table, entries=entries)

	def perturb_lambda(self, table: LyubeznikTable) -> LyubeznikTable:
		if not self.fault:
			return table
		self.fault = False
		entries = dict(table.entries)
		entries[(table.d, table.d)] = entries.get((table.d, table.d), 0) + 1
		logger.info("injecting a fault into lambda_%d,%d", table.d, table.d)
		return replace(table, entries=entries)


def _nu_checks(tally: Tally, label: str, ideal: MonomialIdeal, k: FieldSpec, rank_modes: list[str], seed: int, budgets: Budgets) -> NuTable:
	table = nu_table(ideal, k, "exact", seed, budgets=budgets, validate=False)
	table = tally.perturb_nu(table)
	betti = resolution_betti(ideal, k, budgets)
	tally.problems(f"{label} nu-table", table.violations(betti))
	report = check_nu_consecutiveness(table)
	tally.problems(f"{label} nu-consecutiveness", report.violations)
	columns = nu_column_sums(table)
	tally.expect(sum((-1) ** i * s for i, s in enumerate(columns.sums)) == 1, f"{label}: nu column sums {columns.sums} do not alternate to 1")
	if ideal.has_linear_generator:
		tally.expect(is_trivial_nu(table), f"{label}: linear generator but nontrivial nu-table")
	if is_componentwise_linear(ideal, k, budgets):
		tally.expect(is_trivial_nu(table), f"{label}: componentwise linear but nontrivial nu-table")
	for mode in rank_modes:
		if mode != "exact":
			other = nu_table(ideal, k, mode, seed, budgets=budgets, validate=False)
			tally.expect(other == table, f"{label}: {mode} nu-table {other.cleaned()} != exact {table.cleaned()}")
	return table


def _lambda_checks(tally: Tally, label: str, delta: SimplicialComplex, ideal: MonomialIdeal, k: FieldSpec, seed: int, budgets: Budgets) -> LyubeznikTable:
	table = lyubeznik_table(ideal, k, seed=seed, budgets=budgets, validate=False)
	table = tally.perturb_lambda(table)
	tally.problems(f"{label} lambda-table", table.violations())
	tally.problems(f"{label} lambda-consecutiveness", check_lambda_consecutiveness(table).violations)
	if table.d >= 2:
		expected = lambda_01_topological(delta)
		tally.expect(table.lam(0, 1) == expected, f"{label}: lambda_0,1 = {table.lam(0, 1)} but c - 1 = {expected}")
	if is_pure(delta):
		count = lambda_dd_topological(delta)
		tally.expect(table.lam(table.d, table.d) == count, f"{label}: lambda_d,d = {table.lam(table.d, table.d)} but {count} codim-one components")
	if is_sequentially_cm(ideal, k, budgets):
		tally.expect(is_trivial_lyubeznik(table), f"{label}: sequentially CM but nontrivial Lyubeznik table")
	return table


def check_complex_item(delta: SimplicialComplex, chars: list[int], rank_modes: list[str], seed: int, budgets: Budgets, fault: bool = False) -> Tally:
	"""Every property check for one complex, in each characteristic."""
	tally = Tally(fault=fault)
	ideal = from_complex(delta)
	for char in chars:
		k = FieldSpec.from_characteristic(char)
		label = f"{delta.facet_lists()} n={delta.n} char={char}"
		try:
			via_taylor = resolution_betti(ideal, k, budgets)
			tally.expect(via_taylor == hochster_betti(ideal, k), f"{label}: Taylor-prune and Hochster Betti tables differ")
			tally.expect(via_taylor == koszul_betti(ideal, k), f"{label}: Taylor-prune and Koszul Betti tables differ")
			tally.expect(via_taylor.alternating_sum == 1, f"{label}: Betti numbers alternate to {via_taylor.alternating_sum}")
			_nu_checks(tally, label, ideal, k, rank_modes, seed, budgets)
			table = _lambda_checks(tally, label, delta, ideal, k, seed, budgets)
		except BudgetExceeded as exc:
			tally.skip(label, exc)
			continue
		if dimension(delta) <= 2 and not delta.is_empty_complex:
			sd_budgets = replace(budgets, taylor_generators=budgets.subdivision_generators)
			try:
				sd_table = complex_lyubeznik_table(delta, k, 1, sd_budgets, seed=seed, validate=False)
				tally.expect(sd_table == table, f"{label}: subdivision changes the table {table.cleaned()} -> {sd_table.cleaned()}")
			except BudgetExceeded as exc:
				tally.skip(f"{label} subdivided", exc)
	return tally


def _paper_suite(chars: list[int], rank_modes: list[str], seed: int, budgets: Budgets, fault: bool) -> Tally:
	tally = Tally(fault=fault)
	for example in corpora.paper_examples():
		for char in chars:
			if char not in example.lyubeznik:
				continue
			k = FieldSpec.from_characteristic(char)
			label = f"{example.name} char={char}"
			table = tally.perturb_lambda(lyubeznik_table(example.ideal, k, seed=seed, budgets=budgets, validate=False))
			tally.expect(table.cleaned() == example.lyubeznik[char], f"{label}: got {table.cleaned()}, expected {example.lyubeznik[char]}")
			tally.problems(f"{label} lambda-table", table.violations())
			tally.problems(f"{label} lambda-consecutiveness", check_lambda_consecutiveness(table).violations)
			if example.d is not None:
				tally.expect(table.d == example.d, f"{label}: d = {table.d}, expected {example.d}")
			if char in example.sequentially_cm:
				tally.expect(is_sequentially_cm(example.ideal, k, budgets) == example.sequentially_cm[char], f"{label}: sequential CM status is wrong")
			if example.lambda_01 is not None and example.complex is not None:
				tally.expect(lambda_01_topological(example.complex) == example.lambda_01, f"{label}: topological lambda_0,1 is wrong")
			for mode in rank_modes:
				if mode != "exact":
					other = lyubeznik_table(example.ideal, k, mode, seed, budgets=budgets, validate=False)
					tally.expect(other == table, f"{label}: {mode} table differs from exact")
	rp2 = corpora.rp2_ideal()
	for char, expected in ((2, {(0, 3): 1, (1, 4): 1, (2, 6): 1}), (0, {(0, 3): 1})):
		if char in chars:
			got = nu_table(dual_ideal(rp2), FieldSpec.from_characteristic(char), budgets=budgets).cleaned()
			tally.expect(got == expected, f"rp2 dual nu-table char={char}: got {got}, expected {expected}")
	printed = table_from_matrix(corpora.DETERMINANTAL_TABLE, n=6)
	tally.problems("printed determinantal table", check_lambda_consecutiveness(printed).violations)
	x7 = squarefree(1, [[1]])
	two_primes = corpora.prime_intersection(4, [[1, 2], [3, 4]])
	for char in chars:
		k = FieldSpec.from_characteristic(char)
		for name, other in (("rp2 with (x7)", x7), ("rp2 with (x7,x8)(x9,x10)", two_primes)):
			report = verify_composition(rp2, other, k, "intersection-lambda", seed=seed, budgets=budgets)
			tally.expect(report.status == "match", f"{name} char={char}: prediction mismatches {report.mismatches}")
	return tally


def _composition_suite(chars: list[int], rank_modes: list[str], seed: int, budgets: Budgets, count: int = 100) -> Tally:
	tally = Tally()
	pairs = corpora.random_factor_pairs(count, seed) + corpora.degree_one_pairs()
	squarefree_pairs = corpora.random_factor_pairs(max(count // 5, 1), seed + 1, squarefree_only=True)
	for char in chars:
		k = FieldSpec.from_characteristic(char)
		for first, second in pairs:
			for mode in ("sum-nu", "sum-betti"):
				report = verify_composition(first, second, k, mode, seed=seed, budgets=budgets)
				tally.expect(report.status == "match", f"{first} + {second} char={char} {mode}: {report.mismatches}")
		for first, second in squarefree_pairs:
			report = verify_composition(first, second, k, "intersection-lambda", seed=seed, budgets=budgets)
			tally.expect(report.status == "match", f"{first} cap {second} char={char}: {report.mismatches}")
	return tally


def run_suite(
	corpus: str,
	chars: list[int] | tuple[int, ...] = (0, 2),
	rank_modes: list[str] | tuple[str, ...] = ("exact",),
	seed: int = 0,
	inject_fault: bool = False,
	threads: int = 1,
	budgets: Budgets = DEFAULT_BUDGETS,
) -> SuiteReport:
	"""Run the property battery over a named corpus: paper-examples, n<K>-exhaustive or random-compositions."""
	chars, rank_modes = list(chars), list(rank_modes)
	for char in chars:
		FieldSpec.from_characteristic(char)
	total = Tally()
	match = _EXHAUSTIVE.match(corpus)
	if corpus == "paper-examples":
		total.merge(_paper_suite(chars, rank_modes, seed, budgets, inject_fault))
	elif corpus == "random-compositions":
		if inject_fault:
			total.merge(_paper_suite(chars[:1], [], seed, budgets, True))
		total.merge(_composition_suite(chars, rank_modes, seed, budgets))
	elif match:
		if not 1 <= int(match.group(1)) <= 5:
			raise InvalidInput(f"exhaustive corpora run from n1 to n5, got {corpus!r}")
		items = corpora.exhaustive_corpus(int(match.group(1)))
		jobs = [(delta, chars, rank_modes, seed, budgets, inject_fault and pos == 0) for pos, delta in enumerate(items)]
		if threads > 1:
			with Pool(processes=threads) as pool:
				results = pool.starmap(check_complex_item, jobs)
		else:
			results = [check_complex_item(*job) for job in jobs]
		for result in results:
			total.merge(result)
	else:
		raise InvalidInput(f"unknown corpus {corpus!r} (expected paper-examples, n5-exhaustive or random-compositions)")
	logger.info("%s: %d checks, %d skipped, %d violations", corpus, total.checked, total.skipped, len(total.violations))
	return SuiteReport(
		corpus=corpus,
		chars=chars,
		rank_modes=rank_modes,
		checked=total.checked,
		skipped=total.skipped,
		skipped_items=total.skipped_items,
		violations=total.violations,
	)


def raise_on_violations(report: SuiteReport) -> SuiteReport:
	if report.violations:
		raise PropertyViolation(f"corpus {report.corpus}", report.violations)
	return report
