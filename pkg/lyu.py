from __future__ import annotations
import argparse
import json
import logging
import sys

from lyutab.errors import BudgetExceeded, InvalidInput, PropertyViolation, ResolutionInconsistency
from lyutab.insights.battery import CORPORA
from lyutab.utils.config import Budgets
from lyutab.utils.parse import job_spec, load_input
from lyutab.utils.render import render, render_checks, render_report
from pipeline import LyubeznikPipeline, PipelineConfig

logger = logging.getLogger("lyu")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_VIOLATION = 3


class _Parser(argparse.ArgumentParser):
	def error(self, message: str):
		self.print_usage(sys.stderr)
		self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
	common = argparse.ArgumentParser(add_help=False)
	common.add_argument("--char", type=int, action="append", help="0 for QQ or a prime p for GF(p); verify accepts it repeatedly")
	common.add_argument("--rank-mode", choices=["exact", "randomized"], default="exact")
	common.add_argument("--seed", type=int, default=None)
	common.add_argument("--trials", type=int, default=3)
	common.add_argument("--format", choices=["text", "json", "csv"], default="text")
	common.add_argument("--threads", type=int, default=1, help="worker processes for betti --oracle and for verify; other commands run serially")
	common.add_argument("-v", "--verbose", action="count", default=0)

	parser = _Parser(prog="lyu", description="Betti tables, nu-tables and Lyubeznik tables of monomial ideals.")
	sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
	for name, help_text in (("betti", "graded Betti table of I"), ("nu", "nu-table of I"), ("lyubeznik", "Lyubeznik table of R/I")):
		cmd = sub.add_parser(name, parents=[common], help=help_text)
		cmd.add_argument("input", help="inline JSON, a .json file, or facet / monomial lines")
		cmd.add_argument("--check", action="store_true", help="append invariant and consecutiveness reports")
		if name == "betti":
			cmd.add_argument("--oracle", choices=["hochster", "koszul", "none"], default="none")
		if name == "lyubeznik":
			cmd.add_argument("--subdivide", type=int, default=0, metavar="K")
	verify = sub.add_parser("verify", parents=[common], help="run the property battery over a corpus")
	verify.add_argument("corpus", help=f"one of {', '.join(CORPORA)} (nK-exhaustive for K <= 5)")
	verify.add_argument("--inject-fault", action="store_true", help="perturb one table entry; the run must then fail")
	return parser


def _configure_logging(verbosity: int) -> None:
	level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
	logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _dispatch(args: argparse.Namespace) -> int:
	chars = args.char or [0]
	job = job_spec(
		command=args.command,
		source=args.corpus if args.command == "verify" else args.input,
		char=chars[-1],
		rank_mode=args.rank_mode,
		seed=args.seed,
		trials=args.trials,
		format=args.format,
		check=getattr(args, "check", False),
		oracle=getattr(args, "oracle", "none"),
		subdivide=getattr(args, "subdivide", 0),
		threads=args.threads,
	)
	pipeline = LyubeznikPipeline(PipelineConfig.from_job(job, Budgets.from_env()))
	if job.command == "verify":
		for char in chars:
			job_spec(char=char)
		report = pipeline.verify(job.source, chars, args.inject_fault)
		print(render_report(report, job.format))
		return EXIT_OK if report.passed else EXIT_VIOLATION
	df = pipeline.run(job.command, load_input(job.source))
	checks = df.attrs["checks"]
	if job.format == "json" and checks:
		combined = {"table": json.loads(render(df.attrs["table"], "json")), "checks": json.loads(render_checks(checks, "json"))}
		print(json.dumps(combined, indent=2))
	else:
		print(render(df.attrs["table"], job.format))
		if checks:
			print(render_checks(checks, job.format))
	return EXIT_OK if all(c.passed for c in checks) else EXIT_VIOLATION


def main(argv: list[str] | None = None) -> int:
	args = build_parser().parse_args(argv)
	_configure_logging(args.verbose)
	try:
		return _dispatch(args)
	except InvalidInput as exc:
		logger.error("%s", exc)
		return EXIT_USAGE
	except BudgetExceeded as exc:
		logger.error("%s", exc)
		return EXIT_BUDGET
	except (PropertyViolation, ResolutionInconsistency) as exc:
		logger.error("%s", exc)
		return EXIT_VIOLATION


if __name__ == "__main__":
	sys.exit(main())
