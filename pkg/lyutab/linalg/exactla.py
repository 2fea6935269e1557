from __future__ import annotations
import json
import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Mapping

import numpy as np
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from lyutab.errors import InvalidInput
from lyutab.linalg.fields import FieldSpec

try:
	import galois  # needed only for randomized rank over F_p
	_galois_available = True
except Exception:
	galois = None  # type: ignore
	_galois_available = False

logger = logging.getLogger(__name__)

RATIONAL_SAMPLE_BOUND = 2 ** 31
# evaluation fields over F_p have at least this many elements
MIN_SAMPLE_ORDER = 2 ** 12

# Irreducible polynomials used for small extension fields F_{p^k}; pairs not
# listed fall back to the Conway polynomial galois picks by default.
EXTENSION_POLYNOMIALS: dict[tuple[int, int], str] = {
	(2, 2): "x^2 + x + 1",
	(2, 3): "x^3 + x + 1",
	(2, 4): "x^4 + x + 1",
	(2, 5): "x^5 + x^2 + 1",
	(2, 6): "x^6 + x + 1",
	(2, 7): "x^7 + x + 1",
	(2, 8): "x^8 + x^4 + x^3 + x + 1",
	(2, 10): "x^10 + x^3 + 1",
	(2, 12): "x^12 + x^6 + x^4 + x + 1",
	(3, 2): "x^2 + 1",
}


def _exponents(monomial) -> tuple[int, ...]:
	return tuple(int(e) for e in getattr(monomial, "exponents", monomial))


@dataclass(frozen=True)
class ScalarMatrix:
	"""Sparse matrix over a field; zero entries are never stored."""

	rows: int
	cols: int
	field: FieldSpec
	entries: Mapping[tuple[int, int], Any] = dc_field(default_factory=dict)

	@classmethod
	def from_rows(cls, rows: Iterable[Iterable[Any]], k: FieldSpec, cols: int | None = None) -> "ScalarMatrix":
		dense = [list(row) for row in rows]
		width = cols if cols is not None else (len(dense[0]) if dense else 0)
		entries = {}
		for r, row in enumerate(dense):
			if len(row) != width:
				raise InvalidInput("ragged matrix rows")
			for c, value in enumerate(row):
				element = k.element(value)
				if element:
					entries[(r, c)] = element
		return cls(len(dense), width, k, entries)

	def over(self, k: FieldSpec) -> "ScalarMatrix":
		if k == self.field:
			return self
		moved = {pos: k.convert_from(v, self.field) for pos, v in self.entries.items()}
		return ScalarMatrix(self.rows, self.cols, k, {pos: v for pos, v in moved.items() if v})

	def transpose(self) -> "ScalarMatrix":
		return ScalarMatrix(self.cols, self.rows, self.field, {(c, r): v for (r, c), v in self.entries.items()})

	def to_domain_matrix(self) -> DomainMatrix:
		K = self.field.domain
		nested: dict[int, dict[int, Any]] = {}
		for (r, c), value in self.entries.items():
			nested.setdefault(r, {})[c] = K.convert(value)
		return DomainMatrix(nested, (self.rows, self.cols), K)

	def to_json(self) -> str:
		dense = [[self.field.to_text(self.entries[(r, c)]) if (r, c) in self.entries else "0" for c in range(self.cols)] for r in range(self.rows)]
		return json.dumps({"field": str(self.field), "rows": self.rows, "cols": self.cols, "entries": dense})


@dataclass(frozen=True)
class MonomialMatrix:
	"""Sparse matrix whose entries are coefficient * monomial in `nvars` variables."""

	rows: int
	cols: int
	nvars: int
	field: FieldSpec
	entries: Mapping[tuple[int, int], tuple[Any, tuple[int, ...]]] = dc_field(default_factory=dict)

	@classmethod
	def build(cls, rows: int, cols: int, nvars: int, k: FieldSpec, entries: Mapping) -> "MonomialMatrix":
		clean = {}
		for (r, c), (coef, monomial) in entries.items():
			if not (0 <= r < rows and 0 <= c < cols):
				raise InvalidInput(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
			exps = _exponents(monomial)
			if len(exps) != nvars or min(exps, default=0) < 0:
				raise InvalidInput(f"monomial {exps} does not live in {nvars} variables")
			element = k.element(coef)
			if element:
				clean[(r, c)] = (element, exps)
		return cls(rows, cols, nvars, k, clean)

	def over(self, k: FieldSpec) -> "MonomialMatrix":
		if k == self.field:
			return self
		moved = {pos: (k.convert_from(coef, self.field), exps) for pos, (coef, exps) in self.entries.items()}
		return MonomialMatrix(self.rows, self.cols, self.nvars, k, {pos: e for pos, e in moved.items() if e[0]})

	@property
	def max_degree(self) -> int:
		return max((sum(exps) for _, exps in self.entries.values()), default=0)

	def coefficient_matrix(self) -> ScalarMatrix:
		return ScalarMatrix(self.rows, self.cols, self.field, {pos: coef for pos, (coef, _) in self.entries.items()})

	def evaluate(self, point: Mapping[int, Any] | np.ndarray, field_array=None):
		"""Substitute a point; returns a galois array when `field_array` is given, else a ScalarMatrix."""
		if field_array is not None:
			out = field_array.Zeros((self.rows, self.cols))
			for (r, c), (coef, exps) in self.entries.items():
				value = field_array(self.field.to_int(coef))
				for v, e in enumerate(exps):
					if e:
						value = value * point[v] ** e
				out[r, c] = value
			return out
		K = self.field.domain
		entries = {}
		for (r, c), (coef, exps) in self.entries.items():
			value = K.convert(coef)
			for v, e in enumerate(exps):
				if e:
					value = value * K.convert(point[v]) ** e
			if value:
				entries[(r, c)] = value
		return ScalarMatrix(self.rows, self.cols, self.field, entries)

	def to_json(self) -> str:
		dense = []
		for r in range(self.rows):
			row = []
			for c in range(self.cols):
				if (r, c) in self.entries:
					coef, exps = self.entries[(r, c)]
					row.append({"coef": self.field.to_text(coef), "exponents": list(exps)})
				else:
					row.append(None)
			dense.append(row)
		return json.dumps({"field": str(self.field), "rows": self.rows, "cols": self.cols, "nvars": self.nvars, "entries": dense})


@dataclass(frozen=True)
class RankResult:
	rank: int
	mode: str
	trials: int = 0
	field_order: int = 0
	sample_size: int = 0
	failure_bound: float = 0.0

	def as_dict(self) -> dict:
		return {
			"rank": self.rank,
			"mode": self.mode,
			"trials": self.trials,
			"field_order": self.field_order,
			"sample_size": self.sample_size,
			"failure_bound": self.failure_bound,
		}


def rank(M: ScalarMatrix, k: FieldSpec | None = None) -> int:
	"""Exact rank over k (defaults to the matrix's own field)."""
	if k is not None:
		M = M.over(k)
	if not M.entries:
		return 0
	return int(M.to_domain_matrix().rank())


def _poly_ring(nvars: int, k: FieldSpec) -> PolyRing:
	return PolyRing([f"x{i + 1}" for i in range(nvars)], k.domain, lex)


def _total_degree(poly) -> int:
	return max(sum(m) for m in poly.monoms())


def generic_rank_exact(M: MonomialMatrix, k: FieldSpec | None = None) -> int:
	"""Rank over Frac(k[x1..xn]) by fraction-free (Bareiss) elimination.

	Full pivoting: at each step the pivot is the nonzero entry of the remaining
	block with the smallest total degree, ties broken by (row, column). Every
	entry of step t is then a (t+1)-minor, so the divisions by the previous
	pivot are exact.
	"""
	k = k or M.field
	M = M.over(k)
	if not M.entries:
		return 0
	if M.nvars == 0:
		return rank(M.coefficient_matrix())
	R = _poly_ring(M.nvars, k)
	a = [[R.zero for _ in range(M.cols)] for _ in range(M.rows)]
	for (r, c), (coef, exps) in M.entries.items():
		a[r][c] = R({exps: coef})
	rows, cols = M.rows, M.cols
	prev = R.one
	step = 0
	while step < min(rows, cols):
		best = None
		for i in range(step, rows):
			for j in range(step, cols):
				if a[i][j]:
					key = (_total_degree(a[i][j]), i, j)
					if best is None or key < best:
						best = key
		if best is None:
			break
		_, pi, pj = best
		a[step], a[pi] = a[pi], a[step]
		for row in a:
			row[step], row[pj] = row[pj], row[step]
		pivot = a[step][step]
		for i in range(step + 1, rows):
			for j in range(step + 1, cols):
				num = a[i][j] * pivot - a[i][step] * a[step][j]
				a[i][j] = num.exquo(prev) if num else R.zero
			a[i][step] = R.zero
		prev = pivot
		step += 1
	return step


def _sampling_field(k: FieldSpec, needed: int):
	"""Smallest F_{p^e} (e >= 1) with more than `needed` elements."""
	p = k.characteristic
	degree = 1
	while p ** degree <= needed:
		degree += 1
	if degree == 1:
		return galois.GF(p), p
	poly = EXTENSION_POLYNOMIALS.get((p, degree))
	logger.debug("randomized rank: extending GF(%d) to degree %d", p, degree)
	if poly is not None:
		return galois.GF(p ** degree, irreducible_poly=poly), p ** degree
	return galois.GF(p ** degree), p ** degree


def generic_rank_randomized(M: MonomialMatrix, k: FieldSpec | None = None, seed: int | np.random.Generator | None = 0, trials: int = 3) -> RankResult:
	"""Max rank over `trials` random evaluations; a lower bound on the generic rank."""
	k = k or M.field
	M = M.over(k)
	if trials < 1:
		raise InvalidInput("trials must be at least 1")
	size = min(M.rows, M.cols)
	maxdeg = M.max_degree
	if not M.entries:
		return RankResult(0, "randomized", trials)
	rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
	best = 0
	if k.is_rationals:
		sample = RATIONAL_SAMPLE_BOUND - 1
		for _ in range(trials):
			point = [int(v) for v in rng.integers(1, RATIONAL_SAMPLE_BOUND, size=M.nvars)]
			best = max(best, rank(M.evaluate(point), k))
			if best == size:
				break
		order = 0
	else:
		if not _galois_available:
			raise InvalidInput("randomized rank over a prime field needs the 'galois' package")
		GF, order = _sampling_field(k, max(2 * size * maxdeg, MIN_SAMPLE_ORDER - 1))
		sample = order
		for _ in range(trials):
			point = GF.Random(M.nvars, seed=rng) if M.nvars else GF.Zeros(0)
			best = max(best, int(np.linalg.matrix_rank(M.evaluate(point, field_array=GF))))
			if best == size:
				break
	bound = size * maxdeg / sample
	return RankResult(best, "randomized", trials, order, sample, bound)


def generic_rank(M: MonomialMatrix, k: FieldSpec | None = None, mode: str = "exact", seed: int | np.random.Generator | None = 0, trials: int = 3) -> RankResult:
	if mode == "exact":
		return RankResult(generic_rank_exact(M, k), "exact")
	if mode == "randomized":
		return generic_rank_randomized(M, k, seed=seed, trials=trials)
	raise InvalidInput(f"unknown rank mode {mode!r} (expected exact or randomized)")
