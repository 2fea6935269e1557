from __future__ import annotations
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from lyutab.combinatorics.monomial import Monomial, MonomialIdeal, from_complex, intersect, squarefree
from lyutab.combinatorics.simplicial import SimplicialComplex, canonical_form, popcount
from lyutab.errors import InvalidInput

logger = logging.getLogger(__name__)

RP2_GENERATORS = [
	[1, 2, 3], [1, 2, 4], [1, 3, 5], [2, 4, 5], [3, 4, 5],
	[2, 3, 6], [1, 4, 6], [3, 4, 6], [1, 5, 6], [2, 5, 6],
]
RP2_FACETS = [
	[1, 2, 5], [1, 2, 6], [1, 3, 4], [1, 3, 6], [1, 4, 5],
	[2, 3, 4], [2, 3, 5], [2, 4, 6], [3, 5, 6], [4, 5, 6],
]
FIGURE_ONE_FACETS = [[1], [2, 3], [4, 5], [6, 7]]
FIVE_VARIABLE_PRIMES = [[1, 2], [3, 4], [1, 5], [2, 5], [3, 5], [4, 5]]
# rows p = 0..4, columns i = 0..4; blank below the diagonal
DETERMINANTAL_TABLE = [
	[0, 0, 0, 1, 0],
	[None, 0, 0, 0, 0],
	[None, None, 0, 0, 1],
	[None, None, None, 0, 0],
	[None, None, None, None, 1],
]


def prime_intersection(n: int, primes: list[list[int]]) -> MonomialIdeal:
	"""Intersection of monomial primes (x_a, x_b, ...) given by their variable lists."""
	ideal = None
	for prime in primes:
		component = squarefree(n, [[v] for v in prime])
		ideal = component if ideal is None else intersect(ideal, component)
	if ideal is None:
		raise InvalidInput("need at least one prime")
	return ideal


def rp2_ideal() -> MonomialIdeal:
	return squarefree(6, RP2_GENERATORS)


def rp2_complex() -> SimplicialComplex:
	return SimplicialComplex.from_facets(6, RP2_FACETS)


def rp2_cap_variable() -> MonomialIdeal:
	"""ℝP² ideal ∩ (x7) in 7 variables."""
	base = squarefree(7, RP2_GENERATORS)
	return intersect(base, squarefree(7, [[7]]))


def rp2_cap_two_primes() -> MonomialIdeal:
	"""ℝP² ideal ∩ (x7, x8) ∩ (x9, x10) in 10 variables."""
	base = squarefree(10, RP2_GENERATORS)
	return intersect(base, prime_intersection(10, [[7, 8], [9, 10]]))


def five_variable_ideal() -> MonomialIdeal:
	return prime_intersection(5, FIVE_VARIABLE_PRIMES)


def figure_one_complex() -> SimplicialComplex:
	return SimplicialComplex.from_facets(7, FIGURE_ONE_FACETS)


@dataclass
class PaperExample:
	name: str
	ideal: MonomialIdeal
	# expected Lyubeznik tables by characteristic, as {(p, i): value}
	lyubeznik: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)
	d: int | None = None
	sequentially_cm: dict[int, bool] = field(default_factory=dict)
	lambda_01: int | None = None
	complex: SimplicialComplex | None = None


def paper_examples() -> list[PaperExample]:
	rp2_f2 = {(0, 2): 1, (2, 3): 1, (3, 3): 1}
	return [
		PaperExample("rp2", rp2_ideal(), {0: {(3, 3): 1}, 2: rp2_f2, 3: {(3, 3): 1}}, 3, {0: True, 2: False}, complex=rp2_complex()),
		PaperExample("rp2-cap-x7", rp2_cap_variable(), {0: {(6, 6): 1}, 2: {(6, 6): 1}}, 6),
		PaperExample(
			"rp2-cap-two-primes",
			rp2_cap_two_primes(),
			{
				0: {(3, 5): 1, (5, 6): 2, (6, 7): 1, (7, 7): 1, (8, 8): 2},
				2: {(0, 4): 1, (2, 5): 3, (3, 5): 1, (4, 6): 3, (5, 6): 2, (6, 7): 2, (7, 7): 1, (8, 8): 2},
			},
			8,
		),
		PaperExample("five-variable", five_variable_ideal(), {0: {(3, 3): 1}, 2: {(3, 3): 1}}, 3, {0: False, 2: False}),
		PaperExample(
			"figure-one",
			from_complex(figure_one_complex()),
			{0: {(0, 1): 2, (2, 2): 3}, 2: {(0, 1): 2, (2, 2): 3}},
			2,
			lambda_01=2,
			complex=figure_one_complex(),
		),
	]


def _antichains(n: int) -> list[tuple[int, ...]]:
	masks = sorted(range(1 << n), key=lambda m: (-popcount(m), m))
	found: list[tuple[int, ...]] = []

	def extend(start: int, chosen: list[int]) -> None:
		found.append(tuple(sorted(chosen)))
		for pos in range(start, len(masks)):
			m = masks[pos]
			if all((m & c) != m and (m & c) != c for c in chosen):
				chosen.append(m)
				extend(pos + 1, chosen)
				chosen.pop()

	extend(0, [])
	return found


@lru_cache(maxsize=None)
def complexes_up_to_isomorphism(n: int) -> tuple[SimplicialComplex, ...]:
	"""One complex per isomorphism class on {1..n}, skipping the void complex and the full simplex."""
	if not 1 <= n <= 5:
		raise InvalidInput("exhaustive enumeration is limited to 1 <= n <= 5")
	seen = {}
	full = (1 << n) - 1
	for facets in _antichains(n):
		if not facets or facets == (full,):
			continue
		delta = SimplicialComplex(n, facets)
		key = canonical_form(delta)
		if key not in seen:
			seen[key] = SimplicialComplex(n, key)
	logger.debug("%d complexes on %d vertices up to isomorphism", len(seen), n)
	return tuple(seen[key] for key in sorted(seen, key=lambda k: (len(k), k)))


def exhaustive_corpus(max_n: int) -> list[SimplicialComplex]:
	out = []
	for n in range(1, max_n + 1):
		out.extend(complexes_up_to_isomorphism(n))
	return out


def random_ideal(rng: np.random.Generator, max_vars: int = 4, max_gens: int = 4, max_exponent: int = 2, squarefree_only: bool = False) -> MonomialIdeal:
	n = int(rng.integers(1, max_vars + 1))
	count = int(rng.integers(1, max_gens + 1))
	top = 1 if squarefree_only else max_exponent
	gens = []
	while len(gens) < count:
		exps = tuple(int(e) for e in rng.integers(0, top + 1, size=n))
		if sum(exps):
			gens.append(Monomial(exps))
	return MonomialIdeal.from_generators(n, gens)


def random_factor_pairs(count: int, seed: int = 0, squarefree_only: bool = False) -> list[tuple[MonomialIdeal, MonomialIdeal]]:
	"""Pairs of ideals with at most 4 generators in at most 4 variables each."""
	rng = np.random.default_rng(seed)
	return [(random_ideal(rng, squarefree_only=squarefree_only), random_ideal(rng, squarefree_only=squarefree_only)) for _ in range(count)]


def degree_one_pairs() -> list[tuple[MonomialIdeal, MonomialIdeal]]:
	"""Pairs where a factor has a linear generator."""
	return [
		(squarefree(1, [[1]]), squarefree(2, [[1, 2]])),
		(squarefree(3, [[1], [2, 3]]), squarefree(3, [[1, 2], [1, 3], [2, 3]])),
		(MonomialIdeal.from_generators(2, [(2, 0), (1, 1)]), squarefree(2, [[1], [2]])),
	]
