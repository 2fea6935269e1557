from __future__ import annotations
import itertools as it
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import more_itertools as mit
import networkx as nx

from lyutab.errors import BudgetExceeded, InvalidInput, NonPureComplex, VoidComplex
from lyutab.linalg.exactla import ScalarMatrix, rank
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)

MAX_VERTICES = 64


def mask_of(vertices: Iterable[int]) -> int:
	"""Bitmask of a set of 1-based vertices."""
	mask = 0
	for v in vertices:
		mask |= 1 << (int(v) - 1)
	return mask


def vertices_of(mask: int) -> list[int]:
	"""Sorted 1-based vertices of a bitmask."""
	out = []
	v = 1
	while mask:
		if mask & 1:
			out.append(v)
		mask >>= 1
		v += 1
	return out


def popcount(mask: int) -> int:
	return bin(mask).count("1")


def maximal_masks(masks: Iterable[int]) -> tuple[int, ...]:
	"""Inclusion-maximal members of a family of bitmasks, sorted."""
	kept: list[int] = []
	for mask in sorted(set(masks), key=lambda m: (-popcount(m), m)):
		if not any(mask & other == mask for other in kept):
			kept.append(mask)
	return tuple(sorted(kept))


def minimal_masks(masks: Iterable[int]) -> tuple[int, ...]:
	kept: list[int] = []
	for mask in sorted(set(masks), key=lambda m: (popcount(m), m)):
		if not any(other & mask == other for other in kept):
			kept.append(mask)
	return tuple(sorted(kept))


def minimal_transversals(edges: Iterable[int]) -> tuple[int, ...]:
	"""Minimal sets meeting every edge (Berge's incremental dualisation)."""
	transversals = [0]
	for edge in edges:
		grown = []
		for t in transversals:
			if t & edge:
				grown.append(t)
			else:
				grown.extend(t | (1 << (v - 1)) for v in vertices_of(edge))
		transversals = list(minimal_masks(grown))
	return tuple(transversals)


@dataclass(frozen=True)
class SimplicialComplex:
	"""Simplicial complex on {1..n} stored by its facets (bitmasks).

	The void complex has no faces at all (`void=True`, no facets); the empty
	complex {∅} has the single facet 0.
	"""

	n: int
	facets: tuple[int, ...]
	void: bool = False

	def __post_init__(self):
		if not 0 <= self.n <= MAX_VERTICES:
			raise InvalidInput(f"vertex count must be between 0 and {MAX_VERTICES}, got {self.n}")
		if self.void and self.facets:
			raise InvalidInput("the void complex has no facets")
		if not self.void and not self.facets:
			raise InvalidInput("a non-void complex needs at least one facet (use [[]] for {∅})")
		full = (1 << self.n) - 1
		for f in self.facets:
			if f & ~full:
				raise InvalidInput(f"facet {vertices_of(f)} uses a vertex outside 1..{self.n}")

	@classmethod
	def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
		masks = [mask_of(f) for f in facets]
		if not masks:
			return cls.void_complex(n)
		kept = maximal_masks(masks)
		if len(kept) != len(masks):
			logger.warning("dropped %d non-maximal or repeated facet(s)", len(masks) - len(kept))
		return cls(n, kept)

	@classmethod
	def void_complex(cls, n: int) -> "SimplicialComplex":
		return cls(n, (), True)

	@classmethod
	def empty_complex(cls, n: int) -> "SimplicialComplex":
		return cls(n, (0,))

	@classmethod
	def simplex(cls, n: int) -> "SimplicialComplex":
		return cls(n, ((1 << n) - 1,))

	@property
	def is_full_simplex(self) -> bool:
		return not self.void and self.facets == ((1 << self.n) - 1,)

	@property
	def is_empty_complex(self) -> bool:
		return self.facets == (0,)

	def __contains__(self, face) -> bool:
		mask = face if isinstance(face, int) else mask_of(face)
		return any(mask & f == mask for f in self.facets)

	def facet_lists(self) -> list[list[int]]:
		return [vertices_of(f) for f in self.facets]

	@cached_property
	def minimal_nonfaces(self) -> tuple[int, ...]:
		full = (1 << self.n) - 1
		return minimal_transversals(full & ~f for f in self.facets)

	def to_dict(self) -> dict:
		return {"n": self.n, "facets": self.facet_lists()}

	def __repr__(self) -> str:
		if self.void:
			return f"SimplicialComplex(n={self.n}, void)"
		return f"SimplicialComplex(n={self.n}, facets={self.facet_lists()})"


def faces(delta: SimplicialComplex) -> Iterator[int]:
	"""Every face once, the empty face included, in increasing (size, mask) order."""
	seen: set[int] = set()
	for f in delta.facets:
		for subset in mit.powerset(vertices_of(f)):
			seen.add(mask_of(subset))
	yield from sorted(seen, key=lambda m: (popcount(m), m))


def dimension(delta: SimplicialComplex) -> int:
	if delta.void:
		raise VoidComplex("the void complex has no dimension")
	return max(popcount(f) for f in delta.facets) - 1


def f_vector(delta: SimplicialComplex) -> tuple[int, ...]:
	"""(f_{-1}, f_0, ..., f_dim)."""
	if delta.void:
		return ()
	counts = [0] * (dimension(delta) + 2)
	for face in faces(delta):
		counts[popcount(face)] += 1
	return tuple(counts)


def is_pure(delta: SimplicialComplex) -> bool:
	return len({popcount(f) for f in delta.facets}) <= 1


def vertices(delta: SimplicialComplex) -> list[int]:
	"""Vertices v with {v} a face."""
	used = 0
	for f in delta.facets:
		used |= f
	return vertices_of(used)


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
	"""Δ∨ = {F : complement of F is not in Δ}; the dual of the full simplex is void."""
	full = (1 << delta.n) - 1
	if delta.is_full_simplex:
		logger.warning("the Alexander dual of the full simplex on %d vertices is the void complex", delta.n)
		return SimplicialComplex.void_complex(delta.n)
	return SimplicialComplex(delta.n, tuple(sorted(full & ~m for m in delta.minimal_nonfaces)))


def restriction(delta: SimplicialComplex, sigma: int | Iterable[int]) -> SimplicialComplex:
	"""Δ|σ re-indexed on σ (the i-th smallest vertex of σ becomes vertex i)."""
	sigma_mask = sigma if isinstance(sigma, int) else mask_of(sigma)
	kept = vertices_of(sigma_mask)
	if delta.void:
		return SimplicialComplex.void_complex(len(kept))
	relabel = {v: i + 1 for i, v in enumerate(kept)}
	pieces = [mask_of(relabel[v] for v in vertices_of(f & sigma_mask)) for f in delta.facets]
	return SimplicialComplex(len(kept), maximal_masks(pieces))


def _faces_by_size(delta: SimplicialComplex) -> dict[int, list[int]]:
	groups: dict[int, list[int]] = {}
	for face in faces(delta):
		groups.setdefault(popcount(face), []).append(face)
	return groups


def boundary_matrix(faces_high: list[int], faces_low: list[int], k: FieldSpec) -> ScalarMatrix:
	"""Boundary from faces of size s to size s-1; removing the vertex at position j has sign (-1)^j."""
	index = {f: i for i, f in enumerate(faces_low)}
	entries = {}
	one, minus_one = k.element(1), k.element(-1)
	for col, face in enumerate(faces_high):
		for pos, v in enumerate(vertices_of(face)):
			entries[(index[face & ~(1 << (v - 1))], col)] = one if pos % 2 == 0 else minus_one
	return ScalarMatrix(len(faces_low), len(faces_high), k, entries)


def reduced_homology_dims(delta: SimplicialComplex, k: FieldSpec) -> list[int]:
	"""dim H̃_i(Δ; k) for i = -1..dim Δ; entry 0 of the list is degree -1."""
	if delta.void:
		raise VoidComplex("void complex has no homology convention here")
	groups = _faces_by_size(delta)
	top = max(groups)
	ranks = {0: 0, top + 1: 0}
	for size in range(1, top + 1):
		ranks[size] = rank(boundary_matrix(groups[size], groups[size - 1], k))
	return [len(groups[size]) - ranks[size] - ranks[size + 1] for size in range(0, top + 1)]


def reduced_homology(delta: SimplicialComplex, k: FieldSpec, degree: int) -> int:
	if degree < -1:
		return 0
	dims = reduced_homology_dims(delta, k)
	return dims[degree + 1] if degree + 1 < len(dims) else 0


def connected_components_nonisolated(delta: SimplicialComplex) -> int:
	"""Components of the subcomplex spanned by facets of dimension >= 1."""
	edges = [edge for f in delta.facets if popcount(f) >= 2 for edge in it.combinations(vertices_of(f), 2)]
	if not edges:
		return 0
	return nx.number_connected_components(nx.from_edgelist(edges))


def codim_one_component_count(delta: SimplicialComplex) -> int:
	"""Components of the facet graph, two facets adjacent when they share a codimension-one face."""
	if delta.void:
		return 0
	if not is_pure(delta):
		raise NonPureComplex("codimension-one components are only defined here for pure complexes")
	size = popcount(delta.facets[0])
	graph = nx.Graph()
	graph.add_nodes_from(delta.facets)
	graph.add_edges_from((f, g) for f, g in it.combinations(delta.facets, 2) if popcount(f & g) == size - 1)
	return nx.number_connected_components(graph)


def barycentric_subdivision(delta: SimplicialComplex, budgets: Budgets = DEFAULT_BUDGETS) -> SimplicialComplex:
	"""Vertices are the nonempty faces, ordered by (size, vertex list); facets are maximal chains."""
	if delta.void or delta.is_empty_complex:
		raise VoidComplex("barycentric subdivision needs a complex with at least one vertex")
	nonempty = sorted((f for f in faces(delta) if f), key=lambda m: (popcount(m), vertices_of(m)))
	if len(nonempty) > budgets.subdivision_vertices:
		raise BudgetExceeded("subdivision vertex", len(nonempty), budgets.subdivision_vertices)
	label = {f: i + 1 for i, f in enumerate(nonempty)}
	chains = []
	for facet in delta.facets:
		for order in it.permutations(vertices_of(facet)):
			chain, current = 0, 0
			for v in order:
				current |= 1 << (v - 1)
				chain |= 1 << (label[current] - 1)
			chains.append(chain)
	return SimplicialComplex(len(nonempty), maximal_masks(chains))


def join(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
	"""Join on n1 + n2 vertices; the second complex's vertices are shifted by n1."""
	if first.void or second.void:
		raise VoidComplex("cannot join with the void complex")
	facets = [f | (g << first.n) for f in first.facets for g in second.facets]
	return SimplicialComplex(first.n + second.n, tuple(sorted(facets)))


def canonical_form(delta: SimplicialComplex) -> tuple[int, ...]:
	"""Smallest sorted facet tuple over all relabelings of the vertices."""
	if delta.void:
		return ()
	best = None
	lists = delta.facet_lists()
	for perm in it.permutations(range(1, delta.n + 1)):
		key = tuple(sorted(mask_of(perm[v - 1] for v in f) for f in lists))
		if best is None or key < best:
			best = key
	return best
