from __future__ import annotations
import json
import logging
import re
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from lyutab.analysis.lyubeznik import LyubeznikTable
from lyutab.analysis.resolution import BettiTable
from lyutab.analysis.strands import NuTable
from lyutab.combinatorics.monomial import Monomial, MonomialIdeal, parse_monomial
from lyutab.combinatorics.simplicial import SimplicialComplex
from lyutab.errors import InvalidInput
from lyutab.linalg.fields import FieldSpec

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^n\s*[=:]?\s*(\d+)$")
_VARIABLE = re.compile(r"x(\d+)")


class ComplexModel(BaseModel):
	n: int = Field(default=0, ge=0)
	facets: list[list[int]] = Field(default_factory=list)

	@field_validator("facets")
	@classmethod
	def _positive(cls, facets: list[list[int]]) -> list[list[int]]:
		for facet in facets:
			if any(v < 1 for v in facet):
				raise ValueError(f"vertices are 1-based, got facet {facet}")
		return facets

	def to_complex(self) -> SimplicialComplex:
		return SimplicialComplex.from_facets(self.n, self.facets)

	@classmethod
	def of(cls, delta: SimplicialComplex) -> "ComplexModel":
		return cls(**delta.to_dict())


class IdealModel(BaseModel):
	n: int = Field(default=0, ge=0)
	# exponent vectors, or "x1*x2^2" strings
	gens: list[list[int] | str] = Field(default_factory=list)

	def to_ideal(self) -> MonomialIdeal:
		gens = [parse_monomial(g, self.n) if isinstance(g, str) else Monomial(tuple(g)) for g in self.gens]
		return MonomialIdeal.from_generators(self.n, gens)

	@classmethod
	def of(cls, ideal: MonomialIdeal) -> "IdealModel":
		return cls(**ideal.to_dict())


class BettiEntry(BaseModel):
	i: int
	j: int
	beta: int


class MultigradedEntry(BaseModel):
	i: int
	degree: list[int]
	beta: int


class BettiTableModel(BaseModel):
	kind: Literal["betti"] = "betti"
	n: int = Field(default=0)
	entries: list[BettiEntry] = Field(default_factory=list)
	multigraded: list[MultigradedEntry] = Field(default_factory=list)

	@classmethod
	def of(cls, table: BettiTable) -> "BettiTableModel":
		return cls(
			n=table.n,
			entries=[BettiEntry(i=i, j=j, beta=v) for (i, j), v in table.graded.items()],
			multigraded=[MultigradedEntry(i=i, degree=list(deg), beta=v) for (i, deg), v in sorted(table.multigraded.items())],
		)

	def to_table(self) -> BettiTable:
		return BettiTable.from_counts(self.n, [((e.i, tuple(e.degree)), e.beta) for e in self.multigraded])


class NuEntry(BaseModel):
	i: int
	j: int
	nu: int


class NuTableModel(BaseModel):
	kind: Literal["nu"] = "nu"
	n: int = Field(default=0)
	l: int = Field(default=0)
	entries: list[NuEntry] = Field(default_factory=list)
	metadata: dict = Field(default_factory=dict)

	@classmethod
	def of(cls, table: NuTable) -> "NuTableModel":
		return cls(n=table.n, l=table.l, entries=[NuEntry(i=i, j=j, nu=v) for (i, j), v in table.cleaned().items()], metadata=table.metadata)

	def to_table(self) -> NuTable:
		return NuTable(self.n, self.l, {(e.i, e.j): e.nu for e in self.entries if e.nu}, dict(self.metadata))


class LambdaEntry(BaseModel):
	p: int
	i: int
	value: int


class LyubeznikTableModel(BaseModel):
	kind: Literal["lyubeznik"] = "lyubeznik"
	n: int = Field(default=0)
	d: int = Field(default=0)
	field: str = Field(default="QQ")
	# upper triangle only: entry (p, i) with p <= i
	entries: list[LambdaEntry] = Field(default_factory=list)
	metadata: dict = Field(default_factory=dict)

	@classmethod
	def of(cls, table: LyubeznikTable) -> "LyubeznikTableModel":
		return cls(
			n=table.n,
			d=table.d,
			field=table.field_name,
			entries=[LambdaEntry(p=p, i=i, value=v) for (p, i), v in table.cleaned().items()],
			metadata=table.metadata,
		)

	def to_table(self) -> LyubeznikTable:
		for e in self.entries:
			if e.p > e.i:
				raise InvalidInput(f"entry ({e.p}, {e.i}) is below the diagonal")
		return LyubeznikTable(self.n, self.d, {(e.p, e.i): e.value for e in self.entries if e.value}, self.field, dict(self.metadata))


TABLE_MODELS = {"betti": BettiTableModel, "nu": NuTableModel, "lyubeznik": LyubeznikTableModel}


def table_model(table: BettiTable | NuTable | LyubeznikTable) -> BaseModel:
	if isinstance(table, BettiTable):
		return BettiTableModel.of(table)
	if isinstance(table, NuTable):
		return NuTableModel.of(table)
	if isinstance(table, LyubeznikTable):
		return LyubeznikTableModel.of(table)
	raise InvalidInput(f"no JSON model for {type(table).__name__}")


def parse_table(text: str) -> BettiTable | NuTable | LyubeznikTable:
	"""Read a table back from its JSON rendering (dispatch on "kind")."""
	try:
		raw = json.loads(text)
		model = TABLE_MODELS[raw.get("kind", "")]
		return model.model_validate(raw).to_table()
	except (json.JSONDecodeError, KeyError, AttributeError) as exc:
		raise InvalidInput(f"not a rendered table: {exc}") from exc
	except ValidationError as exc:
		raise InvalidInput(str(exc)) from exc


class JobSpec(BaseModel):
	command: Literal["betti", "nu", "lyubeznik", "verify"] = "lyubeznik"
	source: str = Field(default="")
	char: int = Field(default=0)
	rank_mode: Literal["exact", "randomized"] = "exact"
	seed: int | None = Field(default=None, ge=0, lt=2**64)
	trials: int = Field(default=3, ge=1)
	format: Literal["text", "json", "csv"] = "text"
	check: bool = False
	oracle: Literal["hochster", "koszul", "none"] = "none"
	subdivide: int = Field(default=0, ge=0)
	threads: int = Field(default=1, ge=1)

	@field_validator("char")
	@classmethod
	def _field_char(cls, char: int) -> int:
		FieldSpec.from_characteristic(char)
		return char

	@model_validator(mode="after")
	def _seed_matches_mode(self) -> "JobSpec":
		if self.rank_mode == "randomized" and self.seed is None:
			raise ValueError("--rank-mode randomized needs --seed")
		if self.rank_mode == "exact" and self.seed is not None and self.command != "verify":
			logger.info("exact rank mode ignores --seed %d", self.seed)
			self.seed = None
		return self

	@property
	def field(self) -> FieldSpec:
		return FieldSpec.from_characteristic(self.char)


def job_spec(**values) -> JobSpec:
	try:
		return JobSpec(**values)
	except ValidationError as exc:
		raise InvalidInput("; ".join(f"{'.'.join(map(str, e['loc'])) or 'job'}: {e['msg']}" for e in exc.errors())) from exc


def _from_json(raw: dict) -> SimplicialComplex | MonomialIdeal:
	try:
		if "facets" in raw:
			return ComplexModel.model_validate(raw).to_complex()
		if "gens" in raw:
			return IdealModel.model_validate(raw).to_ideal()
	except ValidationError as exc:
		raise InvalidInput(str(exc)) from exc
	raise InvalidInput('JSON input needs a "facets" or a "gens" key')


def _from_lines(lines: list[str]) -> SimplicialComplex | MonomialIdeal:
	n = None
	body = []
	for line in lines:
		line = line.split("#", 1)[0].strip()
		if not line:
			continue
		header = _HEADER.match(line)
		if header:
			n = int(header.group(1))
			continue
		body.append(line)
	if not body:
		raise InvalidInput("no facets or monomials in the input")
	if "x" in body[0]:
		top = max((int(v) for line in body for v in _VARIABLE.findall(line)), default=0)
		n = top if n is None else n
		return MonomialIdeal.parse(n, body)
	try:
		facets = [[int(v) for v in line.replace(",", " ").split()] for line in body]
	except ValueError as exc:
		raise InvalidInput(f"cannot read facet line: {exc}") from exc
	if any(v < 1 for f in facets for v in f):
		raise InvalidInput("vertices are 1-based")
	top = max((v for f in facets for v in f), default=0)
	return SimplicialComplex.from_facets(top if n is None else n, facets)


def load_input(source: str) -> SimplicialComplex | MonomialIdeal:
	"""Inline JSON, a .json file, or a text file of facet lines (`1 2 3`) or monomial lines (`x1*x2`)."""
	text = source.strip()
	if text.startswith("{"):
		try:
			return _from_json(json.loads(text))
		except json.JSONDecodeError as exc:
			raise InvalidInput(f"inline JSON: {exc}") from exc
	path = Path(source)
	if not path.is_file():
		raise InvalidInput(f"no such input file: {source}")
	content = path.read_text(encoding="utf-8")
	first = next((line.strip() for line in content.splitlines() if line.strip()), "")
	if path.suffix.lower() == ".json" or first.startswith("{"):
		try:
			return _from_json(json.loads(content))
		except json.JSONDecodeError as exc:
			raise InvalidInput(f"{source}: {exc}") from exc
	return _from_lines(content.splitlines())
