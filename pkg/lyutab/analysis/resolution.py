from __future__ import annotations
import itertools as it
import logging
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, Literal

import pandas as pd

from lyutab.combinatorics.monomial import Monomial, MonomialIdeal, to_complex
from lyutab.combinatorics.simplicial import (
	SimplicialComplex,
	maximal_masks,
	mask_of,
	popcount,
	reduced_homology_dims,
	restriction,
)
from lyutab.errors import BudgetExceeded, InvalidInput, ResolutionInconsistency
from lyutab.linalg.exactla import MonomialMatrix
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)

Multidegree = tuple[int, ...]
# source index -> {target index: coefficient}
Columns = dict[int, dict[int, object]]


def _sub(a: Multidegree, b: Multidegree) -> Multidegree:
	return tuple(x - y for x, y in zip(a, b))


def _lcm(a: Multidegree, b: Multidegree) -> Multidegree:
	return tuple(max(x, y) for x, y in zip(a, b))


@dataclass
class BettiTable:
	"""Multigraded Betti numbers, keyed by (i, multidegree); graded numbers are derived."""

	n: int
	multigraded: dict[tuple[int, Multidegree], int] = field(default_factory=dict)

	@classmethod
	def from_counts(cls, n: int, counts: Iterable[tuple[tuple[int, Multidegree], int]]) -> "BettiTable":
		table: Counter = Counter()
		for key, value in counts:
			if value:
				table[key] += value
		return cls(n, dict(table))

	@property
	def graded(self) -> dict[tuple[int, int], int]:
		out: Counter = Counter()
		for (i, deg), value in self.multigraded.items():
			out[(i, sum(deg))] += value
		return dict(sorted(out.items()))

	def beta(self, i: int, j: int) -> int:
		return self.graded.get((i, j), 0)

	@property
	def totals(self) -> list[int]:
		if not self.multigraded:
			return []
		out = [0] * (self.projective_dimension + 1)
		for (i, _), value in self.multigraded.items():
			out[i] += value
		return out

	@property
	def alternating_sum(self) -> int:
		return sum((-1) ** i * b for i, b in enumerate(self.totals))

	@property
	def projective_dimension(self) -> int:
		return max((i for i, _ in self.multigraded), default=-1)

	@property
	def regularity(self) -> int:
		return max((j - i for i, j in self.graded), default=0)

	def strand_offsets(self) -> list[int]:
		return sorted({j - i for i, j in self.graded})

	def to_frame(self) -> pd.DataFrame:
		"""Grid with rows j - i and columns i, zeros shown as 0."""
		graded = self.graded
		if not graded:
			return pd.DataFrame()
		rows = range(min(j - i for i, j in graded), self.regularity + 1)
		cols = range(self.projective_dimension + 1)
		frame = pd.DataFrame([[graded.get((i, i + r), 0) for i in cols] for r in rows], index=list(rows), columns=list(cols))
		frame.index.name = "r"
		frame.attrs["totals"] = self.totals
		return frame

	def __eq__(self, other) -> bool:
		if not isinstance(other, BettiTable):
			return NotImplemented
		return self.n == other.n and self.multigraded == other.multigraded


def quotient_betti(betti: BettiTable) -> BettiTable:
	"""Betti numbers of R/I from those of I: shift by one and add beta_{0,0} = 1."""
	counts = [((i + 1, deg), v) for (i, deg), v in betti.multigraded.items()]
	counts.append(((0, (0,) * betti.n), 1))
	return BettiTable.from_counts(betti.n, counts)


def regularity(betti: BettiTable) -> int:
	return betti.regularity


@dataclass
class MultigradedFreeComplex:
	"""Free complex L_0 <- L_1 <- ... with multidegree-labelled generators.

	`differentials[i]` (i >= 1) stores d_i column-wise: for each generator of
	L_i the nonzero coefficients of its image in L_{i-1}. The monomial of an
	entry is implied: source multidegree minus target multidegree.
	"""

	n: int
	field: FieldSpec
	terms: list[list[Multidegree]]
	differentials: list[Columns]

	@property
	def length(self) -> int:
		return len(self.terms) - 1

	@property
	def ranks(self) -> list[int]:
		return [len(t) for t in self.terms]

	def term_monomials(self, i: int) -> list[Monomial]:
		return [Monomial(d) for d in self.terms[i]]

	def differential(self, i: int) -> MonomialMatrix:
		"""d_i as a (rank L_{i-1}) x (rank L_i) monomial matrix."""
		src, tgt = self.terms[i], self.terms[i - 1]
		entries = {}
		for s, column in self.differentials[i].items():
			for t, coef in column.items():
				entries[(t, s)] = (coef, _sub(src[s], tgt[t]))
		return MonomialMatrix(len(tgt), len(src), self.n, self.field, entries)

	@property
	def is_minimal(self) -> bool:
		for i in range(1, len(self.terms)):
			src, tgt = self.terms[i], self.terms[i - 1]
			for s, column in self.differentials[i].items():
				if any(src[s] == tgt[t] for t in column):
					return False
		return True


def taylor_complex(ideal: MonomialIdeal, k: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> MultigradedFreeComplex:
	"""Taylor resolution: term i is spanned by the (i+1)-subsets of generators, labelled by their lcm."""
	ideal.require_proper()
	gens = [g.exponents for g in ideal.gens]
	g = len(gens)
	if g > budgets.taylor_generators:
		raise BudgetExceeded("Taylor generator", g, budgets.taylor_generators)
	one, minus_one = k.element(1), k.element(-1)
	terms: list[list[Multidegree]] = []
	differentials: list[Columns] = [{}]
	previous_index: dict[tuple[int, ...], int] = {}
	for size in range(1, g + 1):
		subsets = list(it.combinations(range(g), size))
		degrees = []
		for subset in subsets:
			deg = gens[subset[0]]
			for j in subset[1:]:
				deg = _lcm(deg, gens[j])
			degrees.append(deg)
		terms.append(degrees)
		if size > 1:
			columns: Columns = {}
			for s, subset in enumerate(subsets):
				columns[s] = {previous_index[subset[:pos] + subset[pos + 1:]]: one if pos % 2 == 0 else minus_one for pos in range(size)}
			differentials.append(columns)
		previous_index = {subset: idx for idx, subset in enumerate(subsets)}
	logger.debug("Taylor complex with ranks %s", [len(t) for t in terms])
	return MultigradedFreeComplex(ideal.n, k, terms, differentials)


def _composition_defects(lower: Columns, upper: Columns, domain) -> list[tuple[int, int]]:
	defects = []
	for c, column in upper.items():
		image: dict[int, object] = {}
		for s, b in column.items():
			for t, a in lower.get(s, {}).items():
				image[t] = image.get(t, domain.zero) + a * b
		defects.extend((t, c) for t, v in image.items() if v)
	return defects


def check_complex(C: MultigradedFreeComplex) -> list[str]:
	"""Problems found: nonzero d_i d_{i+1} entries and entries with negative implied exponents."""
	problems = []
	K = C.field.domain
	for i in range(1, len(C.terms)):
		src, tgt = C.terms[i], C.terms[i - 1]
		for s, column in C.differentials[i].items():
			for t in column:
				if any(e < 0 for e in _sub(src[s], tgt[t])):
					problems.append(f"d_{i} entry ({t}, {s}) is not multihomogeneous")
	for i in range(1, len(C.terms) - 1):
		for t, c in _composition_defects(C.differentials[i], C.differentials[i + 1], K):
			problems.append(f"d_{i} d_{i + 1} is nonzero at ({t}, {c})")
	return problems


class _Pruner:
	"""Working copy of a complex, with each differential held both by columns and by rows."""

	def __init__(self, C: MultigradedFreeComplex, debug: bool):
		self.C = C
		self.K = C.field.domain
		self.debug = debug
		self.cols: list[Columns] = [dict() for _ in C.terms]
		self.rows: list[Columns] = [dict() for _ in C.terms]
		for i in range(1, len(C.terms)):
			for s, column in C.differentials[i].items():
				self.cols[i][s] = dict(column)
				for t, coef in column.items():
					self.rows[i].setdefault(t, {})[s] = coef
		self.alive = [set(range(len(t))) for t in C.terms]
		self.cancellations = 0

	def _set(self, i: int, t: int, s: int, value) -> None:
		if value:
			self.cols[i].setdefault(s, {})[t] = value
			self.rows[i].setdefault(t, {})[s] = value
		else:
			self.cols[i].get(s, {}).pop(t, None)
			self.rows[i].get(t, {}).pop(s, None)

	def _drop_source(self, i: int, s: int) -> None:
		if i >= len(self.cols):
			return
		for t in self.cols[i].pop(s, {}):
			self.rows[i][t].pop(s, None)

	def _drop_target(self, i: int, t: int) -> None:
		if i >= len(self.rows):
			return
		for s in self.rows[i].pop(t, {}):
			self.cols[i][s].pop(t, None)

	def cancel(self, i: int, t: int, s: int) -> None:
		"""Split off the unit entry d_i[t, s] and correct the rest of d_i."""
		u = self.cols[i][s][t]
		column = {r: a for r, a in self.cols[i][s].items() if r != t}
		row = {c: b for c, b in self.rows[i][t].items() if c != s}
		for r, a in column.items():
			for c, b in row.items():
				current = self.cols[i].get(c, {}).get(r, self.K.zero)
				self._set(i, r, c, current - a * b / u)
		self._drop_source(i, s)
		self._drop_target(i, t)
		self._drop_target(i + 1, s)
		self._drop_source(i - 1, t)
		self.alive[i].discard(s)
		self.alive[i - 1].discard(t)
		self.cancellations += 1
		if self.debug:
			self._check_around(i)

	def _check_around(self, i: int) -> None:
		for lo in (i - 1, i):
			if lo >= 1 and lo + 1 < len(self.cols):
				defects = _composition_defects(self.cols[lo], self.cols[lo + 1], self.K)
				if defects:
					raise ResolutionInconsistency(f"d_{lo} d_{lo + 1} != 0 at {defects[:3]} after cancellation {self.cancellations}")

	def prune_degree(self, i: int, order: str) -> None:
		src, tgt = self.C.terms[i], self.C.terms[i - 1]
		groups: dict[Multidegree, list[int]] = {}
		for t in sorted(self.alive[i - 1]):
			groups.setdefault(tgt[t], []).append(t)
		if not any(src[s] in groups for s in self.alive[i]):
			return
		reverse = order == "reverse"
		ordered = sorted(groups.items(), key=lambda item: item[1][0], reverse=reverse)
		for degree, targets in ordered:
			targets = targets[::-1] if reverse else targets
			while True:
				found = None
				for t in targets:
					if t not in self.alive[i - 1]:
						continue
					units = [s for s in self.rows[i].get(t, {}) if src[s] == degree]
					if units:
						found = (t, max(units) if reverse else min(units))
						break
				if found is None:
					break
				self.cancel(i, *found)

	def result(self) -> MultigradedFreeComplex:
		C = self.C
		new_index = [{old: new for new, old in enumerate(sorted(alive))} for alive in self.alive]
		terms = [[C.terms[i][old] for old in sorted(self.alive[i])] for i in range(len(C.terms))]
		differentials: list[Columns] = [{}]
		for i in range(1, len(C.terms)):
			differentials.append({
				new_index[i][s]: {new_index[i - 1][t]: v for t, v in column.items()}
				for s, column in self.cols[i].items()
				if s in self.alive[i] and column
			})
		while len(terms) > 1 and not terms[-1]:
			terms.pop()
			differentials.pop()
		return MultigradedFreeComplex(C.n, C.field, terms, differentials)


def prune_to_minimal(
	C: MultigradedFreeComplex,
	order: Literal["row-major", "reverse"] = "row-major",
	debug: bool | None = None,
) -> MultigradedFreeComplex:
	"""Cancel unit entries until none are left, lowest homological degree first.

	Units only ever appear between generators of equal multidegree, and each
	correction d[r, c] -= d[r, s] d[t, c] / u keeps both ends in the same
	multidegree class, so cancellation is done class by class.
	"""
	if order not in ("row-major", "reverse"):
		raise InvalidInput(f"unknown pruning order {order!r}")
	if debug is None:
		debug = Budgets.from_env().debug_checks
	pruner = _Pruner(C, debug)
	for i in range(1, len(C.terms)):
		pruner.prune_degree(i, order)
	minimal = pruner.result()
	logger.debug("pruned %d unit pairs, ranks %s -> %s", pruner.cancellations, C.ranks, minimal.ranks)
	if debug:
		problems = check_complex(minimal)
		if problems:
			raise ResolutionInconsistency("; ".join(problems[:5]))
	return minimal


def minimal_resolution(ideal: MonomialIdeal, k: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS, order: str = "row-major") -> MultigradedFreeComplex:
	return prune_to_minimal(taylor_complex(ideal, k, budgets), order=order, debug=budgets.debug_checks)


def betti_table(C: MultigradedFreeComplex) -> BettiTable:
	if not C.is_minimal:
		raise InvalidInput("betti_table needs a minimal complex (run prune_to_minimal first)")
	return BettiTable.from_counts(C.n, (((i, deg), 1) for i, term in enumerate(C.terms) for deg in term))


def lcm_lattice(ideal: MonomialIdeal) -> list[Multidegree]:
	"""All lcms of nonempty generator subsets."""
	closure: set[Multidegree] = set()
	for g in ideal.gens:
		closure |= {_lcm(m, g.exponents) for m in closure}
		closure.add(g.exponents)
	return sorted(closure, key=lambda d: (sum(d), d))


def _hochster_at(delta: SimplicialComplex, sigma: int, k: FieldSpec) -> list[tuple[int, int]]:
	size = popcount(sigma)
	dims = reduced_homology_dims(restriction(delta, sigma), k)
	# dims[j + 1] = H̃_j, contributing to beta_{i, sigma} with i = |sigma| - j - 2
	return [(size - j - 2, dims[j + 1]) for j in range(-1, len(dims) - 1) if dims[j + 1] and size - j - 2 >= 0]


def _koszul_at(degree: Multidegree, gens: list[Multidegree], k: FieldSpec) -> list[tuple[int, int]]:
	support = [v for v, e in enumerate(degree) if e]
	faces = []
	for size in range(len(support) + 1):
		for F in it.combinations(range(len(support)), size):
			lowered = list(degree)
			for pos in F:
				lowered[support[pos]] -= 1
			if any(all(a <= b for a, b in zip(g, lowered)) for g in gens):
				faces.append(mask_of(pos + 1 for pos in F))
	upper = SimplicialComplex(len(support), maximal_masks(faces))
	dims = reduced_homology_dims(upper, k)
	# beta_{i, b} = H̃_{i-1}(K^b)
	return [(j + 1, dims[j + 1]) for j in range(-1, len(dims) - 1) if dims[j + 1]]


def _run(worker, jobs: list[tuple], threads: int) -> list:
	if threads > 1 and len(jobs) > 1:
		with Pool(processes=threads) as pool:
			return pool.starmap(worker, jobs)
	return [worker(*job) for job in jobs]


def hochster_betti(ideal: MonomialIdeal, k: FieldSpec, threads: int = 1) -> BettiTable:
	"""beta_{i, sigma}(I_Δ) = dim H̃_{|sigma|-i-2}(Δ|sigma; k), over the lcm lattice only."""
	ideal.require_squarefree().require_proper()
	delta = to_complex(ideal)
	sigmas = [Monomial(d).support for d in lcm_lattice(ideal)]
	results = _run(_hochster_at, [(delta, sigma, k) for sigma in sigmas], threads)
	counts = []
	for sigma, found in zip(sigmas, results):
		deg = Monomial.from_mask(ideal.n, sigma).exponents
		counts.extend(((i, deg), value) for i, value in found)
	return BettiTable.from_counts(ideal.n, counts)


def koszul_betti(ideal: MonomialIdeal, k: FieldSpec, threads: int = 1) -> BettiTable:
	"""beta_{i, b}(I) = dim H̃_{i-1}(K^b(I)) with K^b = {F ⊆ supp b : x^(b-F) in I}."""
	ideal.require_proper()
	gens = [g.exponents for g in ideal.gens]
	degrees = lcm_lattice(ideal)
	results = _run(_koszul_at, [(deg, gens, k) for deg in degrees], threads)
	counts = []
	for deg, found in zip(degrees, results):
		counts.extend(((i, deg), value) for i, value in found)
	return BettiTable.from_counts(ideal.n, counts)


def resolution_betti(ideal: MonomialIdeal, k: FieldSpec, budgets: Budgets = DEFAULT_BUDGETS) -> BettiTable:
	return betti_table(minimal_resolution(ideal, k, budgets))
