from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import Literal

import pandas as pd

from lyutab.analysis.lyubeznik import (
	check_lambda_consecutiveness,
	complex_lyubeznik_table,
	lambda_01_topological,
	lyubeznik_table,
)
from lyutab.analysis.resolution import BettiTable, hochster_betti, koszul_betti, resolution_betti
from lyutab.analysis.strands import CheckReport, check_nu_consecutiveness, nu_table
from lyutab.combinatorics.monomial import MonomialIdeal, from_complex, radical, to_complex
from lyutab.combinatorics.simplicial import SimplicialComplex
from lyutab.insights.battery import SuiteReport, run_suite
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import Budgets
from lyutab.utils.parse import JobSpec

logger = logging.getLogger(__name__)

Item = SimplicialComplex | MonomialIdeal


@dataclass
class PipelineConfig:
	char: int = 0
	rank_mode: Literal["exact", "randomized"] = "exact"
	seed: int | None = None
	trials: int = 3
	oracle: Literal["hochster", "koszul", "none"] = "none"
	subdivide: int = 0
	threads: int = 1
	check: bool = False
	budgets: Budgets = field(default_factory=Budgets.from_env)

	@classmethod
	def from_job(cls, job: JobSpec, budgets: Budgets | None = None) -> "PipelineConfig":
		return cls(
			char=job.char,
			rank_mode=job.rank_mode,
			seed=job.seed,
			trials=job.trials,
			oracle=job.oracle,
			subdivide=job.subdivide,
			threads=job.threads,
			check=job.check,
			budgets=budgets or Budgets.from_env(),
		)


class LyubeznikPipeline:
	def __init__(self, config: PipelineConfig | None = None):
		self.config = config or PipelineConfig()
		self.field = FieldSpec.from_characteristic(self.config.char)

	def _ideal(self, item: Item) -> MonomialIdeal:
		return from_complex(item) if isinstance(item, SimplicialComplex) else item

	def betti(self, item: Item) -> tuple[BettiTable, list[CheckReport]]:
		ideal = self._ideal(item)
		cfg = self.config
		if cfg.oracle == "hochster":
			table = hochster_betti(ideal, self.field, cfg.threads)
		elif cfg.oracle == "koszul":
			table = koszul_betti(ideal, self.field, cfg.threads)
		else:
			table = resolution_betti(ideal, self.field, cfg.budgets)
		checks = []
		if cfg.check:
			report = CheckReport("betti")
			report.details["alternating_sum"] = table.alternating_sum
			if table.alternating_sum != 1:
				report.fail(f"alternating sum of Betti numbers of R/I is {table.alternating_sum}")
			if cfg.oracle != "none" and table != resolution_betti(ideal, self.field, cfg.budgets):
				report.fail(f"{cfg.oracle} oracle disagrees with the pruned Taylor resolution")
			checks.append(report)
		return table, checks

	def nu(self, item: Item):
		ideal = self._ideal(item)
		cfg = self.config
		table = nu_table(ideal, self.field, cfg.rank_mode, cfg.seed, cfg.trials, cfg.budgets)
		checks = []
		if cfg.check:
			invariants = CheckReport("nu-invariants")
			invariants.details["alternating_sum"] = sum((-1) ** i * v for (i, _), v in table.cleaned().items())
			for problem in table.violations(resolution_betti(ideal, self.field, cfg.budgets)):
				invariants.fail(problem)
			checks.extend([invariants, check_nu_consecutiveness(table)])
		return table, checks

	def lyubeznik(self, item: Item):
		cfg = self.config
		options = dict(rank_mode=cfg.rank_mode, seed=cfg.seed, trials=cfg.trials)
		if cfg.subdivide:
			delta = item if isinstance(item, SimplicialComplex) else to_complex(radical(item))
			table = complex_lyubeznik_table(delta, self.field, cfg.subdivide, cfg.budgets, **options)
		else:
			table = lyubeznik_table(self._ideal(item), self.field, budgets=cfg.budgets, **options)
		checks = []
		if cfg.check:
			invariants = CheckReport("lambda-invariants")
			for problem in table.violations():
				invariants.fail(problem)
			checks.extend([invariants, check_lambda_consecutiveness(table)])
			if table.d >= 2:
				delta = item if isinstance(item, SimplicialComplex) else to_complex(radical(item))
				topological = CheckReport("lambda-0,1-topological", details={"components_minus_one": lambda_01_topological(delta)})
				if topological.details["components_minus_one"] != table.lam(0, 1):
					topological.fail(f"lambda_0,1 = {table.lam(0, 1)} but the complex has {lambda_01_topological(delta) + 1} components")
				checks.append(topological)
		return table, checks

	def run(self, command: Literal["betti", "nu", "lyubeznik"], item: Item) -> pd.DataFrame:
		"""Compute one table; the grid comes back with the table and its check reports in attrs."""
		logger.info("%s over %s (%s rank)", command, self.field, self.config.rank_mode)
		table, checks = getattr(self, command)(item)
		df = table.to_frame()
		df.attrs["table"] = table
		df.attrs["checks"] = checks
		return df

	def verify(self, corpus: str, chars: list[int] | None = None, inject_fault: bool = False) -> SuiteReport:
		cfg = self.config
		modes = ["exact"] if cfg.rank_mode == "exact" else ["exact", "randomized"]
		return run_suite(corpus, chars or [cfg.char], modes, cfg.seed or 0, inject_fault, cfg.threads, cfg.budgets)
