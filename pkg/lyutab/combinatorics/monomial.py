from __future__ import annotations
import itertools as it
import logging
import re
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from lyutab.combinatorics.simplicial import (
	MAX_VERTICES,
	SimplicialComplex,
	mask_of,
	minimal_transversals,
	vertices_of,
)
from lyutab.errors import BudgetExceeded, InvalidIdeal, InvalidInput, NotSquarefree
from lyutab.utils.config import DEFAULT_BUDGETS, Budgets

logger = logging.getLogger(__name__)

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True, order=True)
class Monomial:
	exponents: tuple[int, ...]

	def __post_init__(self):
		if any(e < 0 for e in self.exponents):
			raise InvalidInput(f"negative exponent in {self.exponents}")

	@classmethod
	def one(cls, n: int) -> "Monomial":
		return cls((0,) * n)

	@classmethod
	def from_mask(cls, n: int, mask: int) -> "Monomial":
		return cls(tuple((mask >> v) & 1 for v in range(n)))

	@classmethod
	def variable(cls, n: int, v: int) -> "Monomial":
		"""x_v, 1-based."""
		return cls(tuple(1 if i == v - 1 else 0 for i in range(n)))

	@property
	def n(self) -> int:
		return len(self.exponents)

	@property
	def degree(self) -> int:
		return sum(self.exponents)

	@property
	def support(self) -> int:
		return mask_of(i + 1 for i, e in enumerate(self.exponents) if e)

	@property
	def is_squarefree(self) -> bool:
		return all(e <= 1 for e in self.exponents)

	def divides(self, other: "Monomial") -> bool:
		return all(a <= b for a, b in zip(self.exponents, other.exponents))

	def lcm(self, other: "Monomial") -> "Monomial":
		return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

	def __mul__(self, other: "Monomial") -> "Monomial":
		return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

	def __truediv__(self, other: "Monomial") -> "Monomial":
		if not other.divides(self):
			raise InvalidInput(f"{other} does not divide {self}")
		return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

	def embed(self, n: int, shift: int = 0) -> "Monomial":
		return Monomial((0,) * shift + self.exponents + (0,) * (n - shift - self.n))

	def __str__(self) -> str:
		parts = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(self.exponents) if e]
		return "*".join(parts) or "1"


def parse_monomial(text: str, n: int) -> Monomial:
	"""Read "x1*x2^2" (also "x1x2", "x1 x2", "1") into a monomial in n variables."""
	exps = [0] * n
	body = text.strip()
	if body == "1":
		return Monomial(tuple(exps))
	tokens = [t for t in re.split(r"[*\s]+|(?=x)", body) if t]
	if not tokens:
		raise InvalidInput(f"empty monomial {text!r}")
	for token in tokens:
		match = _FACTOR.match(token)
		if not match:
			raise InvalidInput(f"cannot read monomial factor {token!r} in {text!r}")
		v = int(match.group(1))
		if not 1 <= v <= n:
			raise InvalidInput(f"variable x{v} outside x1..x{n}")
		exps[v - 1] += int(match.group(2) or 1)
	return Monomial(tuple(exps))


def _sort_key(m: Monomial):
	return (m.degree, tuple(-e for e in m.exponents))


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
	kept: list[Monomial] = []
	for g in sorted(set(gens), key=_sort_key):
		if not any(k.divides(g) for k in kept):
			kept.append(g)
	return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
	"""Monomial ideal in n variables, held by its minimal generators.

	`state` marks the zero ideal (no generators) and the unit ideal
	(the single generator 1); everything else is "proper".
	"""

	n: int
	gens: tuple[Monomial, ...]
	state: Literal["proper", "zero", "unit"] = "proper"

	@classmethod
	def from_generators(cls, n: int, gens: Iterable[Monomial | Sequence[int]]) -> "MonomialIdeal":
		if not 0 <= n <= MAX_VERTICES:
			raise InvalidInput(f"variable count must be between 0 and {MAX_VERTICES}, got {n}")
		monos = [g if isinstance(g, Monomial) else Monomial(tuple(int(e) for e in g)) for g in gens]
		for g in monos:
			if g.n != n:
				raise InvalidInput(f"generator {g.exponents} does not have {n} exponents")
		if not monos:
			return cls.zero(n)
		minimal = minimalize(monos)
		if len(minimal) != len(monos):
			logger.warning("dropped %d repeated or non-minimal generator(s)", len(monos) - len(minimal))
		if minimal[0].degree == 0:
			return cls.unit(n)
		return cls(n, minimal)

	@classmethod
	def zero(cls, n: int) -> "MonomialIdeal":
		return cls(n, (), "zero")

	@classmethod
	def unit(cls, n: int) -> "MonomialIdeal":
		return cls(n, (Monomial.one(n),), "unit")

	@classmethod
	def parse(cls, n: int, texts: Iterable[str]) -> "MonomialIdeal":
		return cls.from_generators(n, [parse_monomial(t, n) for t in texts])

	@property
	def is_zero(self) -> bool:
		return self.state == "zero"

	@property
	def is_unit(self) -> bool:
		return self.state == "unit"

	@property
	def is_squarefree(self) -> bool:
		return all(g.is_squarefree for g in self.gens)

	@property
	def min_degree(self) -> int:
		return min((g.degree for g in self.gens), default=0)

	@property
	def max_degree(self) -> int:
		return max((g.degree for g in self.gens), default=0)

	@property
	def has_linear_generator(self) -> bool:
		return any(g.degree == 1 for g in self.gens)

	def require_proper(self) -> "MonomialIdeal":
		if self.is_zero:
			raise InvalidIdeal("the zero ideal has no resolution here")
		if self.is_unit:
			raise InvalidIdeal("the unit ideal has no resolution here")
		return self

	def require_squarefree(self) -> "MonomialIdeal":
		if not self.is_squarefree:
			bad = next(g for g in self.gens if not g.is_squarefree)
			raise NotSquarefree(f"generator {bad} is not squarefree")
		return self

	def contains(self, m: Monomial) -> bool:
		return any(g.divides(m) for g in self.gens)

	def texts(self) -> list[str]:
		return [str(g) for g in self.gens]

	def to_dict(self) -> dict:
		return {"n": self.n, "gens": [list(g.exponents) for g in self.gens]}

	def __str__(self) -> str:
		if self.is_zero:
			return "(0)"
		return "(" + ", ".join(self.texts()) + ")"


def from_complex(delta: SimplicialComplex) -> MonomialIdeal:
	"""Stanley-Reisner ideal: the minimal nonfaces as squarefree monomials."""
	if delta.is_full_simplex:
		raise InvalidIdeal("the full simplex has the zero Stanley-Reisner ideal")
	return MonomialIdeal.from_generators(delta.n, [Monomial.from_mask(delta.n, m) for m in delta.minimal_nonfaces])


def to_complex(ideal: MonomialIdeal) -> SimplicialComplex:
	"""The complex Δ with I_Δ = I; faces are the sets containing no generator support."""
	ideal.require_squarefree()
	full = (1 << ideal.n) - 1
	covers = minimal_transversals(g.support for g in ideal.gens)
	if not covers:
		return SimplicialComplex.void_complex(ideal.n)
	return SimplicialComplex(ideal.n, tuple(sorted(full & ~c for c in covers)))


def dual_ideal(ideal: MonomialIdeal) -> MonomialIdeal:
	"""Alexander dual ideal: generated by the minimal vertex covers of the generator supports."""
	ideal.require_squarefree().require_proper()
	covers = minimal_transversals(g.support for g in ideal.gens)
	return MonomialIdeal.from_generators(ideal.n, [Monomial.from_mask(ideal.n, c) for c in covers])


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
	if ideal.is_zero or ideal.is_unit or ideal.is_squarefree:
		return ideal
	return MonomialIdeal.from_generators(ideal.n, [Monomial.from_mask(ideal.n, g.support) for g in ideal.gens])


def intersect(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
	if first.n != second.n:
		raise InvalidInput(f"cannot intersect ideals in {first.n} and {second.n} variables")
	if first.is_zero or second.is_zero:
		return MonomialIdeal.zero(first.n)
	if first.is_unit:
		return second
	if second.is_unit:
		return first
	return MonomialIdeal(first.n, minimalize(f.lcm(g) for f in first.gens for g in second.gens))


def embed(ideal: MonomialIdeal, n: int, shift: int = 0) -> MonomialIdeal:
	"""The same generators in n >= ideal.n variables, starting at variable shift+1."""
	if n < ideal.n + shift:
		raise InvalidInput(f"cannot place {ideal.n} variables at offset {shift} in {n}")
	return MonomialIdeal(n, tuple(g.embed(n, shift) for g in ideal.gens), ideal.state)


def sum_disjoint(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
	"""I + J in m + n variables, J's variables shifted past I's."""
	n = first.n + second.n
	if first.is_unit or second.is_unit:
		return MonomialIdeal.unit(n)
	gens = [g.embed(n) for g in first.gens] + [g.embed(n, first.n) for g in second.gens]
	if not gens:
		return MonomialIdeal.zero(n)
	return MonomialIdeal(n, minimalize(gens))


def degree_component(ideal: MonomialIdeal, r: int, budgets: Budgets = DEFAULT_BUDGETS) -> MonomialIdeal:
	"""Ideal generated by the degree-r part of I (the zero ideal when I_r = 0)."""
	if r < 0:
		raise InvalidInput("degree must be nonnegative")
	if r > budgets.component_degree:
		raise BudgetExceeded("component degree", r, budgets.component_degree)
	if ideal.is_zero:
		return ideal
	found = set()
	for g in ideal.gens:
		if g.degree > r:
			continue
		for extra in it.combinations_with_replacement(range(ideal.n), r - g.degree):
			exps = list(g.exponents)
			for v in extra:
				exps[v] += 1
			found.add(Monomial(tuple(exps)))
	if not found:
		return MonomialIdeal.zero(ideal.n)
	if r == 0:
		return MonomialIdeal.unit(ideal.n)
	return MonomialIdeal(ideal.n, minimalize(found))


def height(ideal: MonomialIdeal) -> int:
	"""Smallest vertex cover of the generator supports, i.e. min degree of the dual ideal."""
	return dual_ideal(ideal).min_degree


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> MonomialIdeal:
	return from_complex(SimplicialComplex.from_facets(n, facets))


def squarefree(n: int, supports: Iterable[Iterable[int]]) -> MonomialIdeal:
	"""Squarefree ideal from 1-based variable lists, e.g. [[1, 2], [2, 3]] = (x1x2, x2x3)."""
	return MonomialIdeal.from_generators(n, [Monomial.from_mask(n, mask_of(s)) for s in supports])


def supports(ideal: MonomialIdeal) -> list[list[int]]:
	return [vertices_of(g.support) for g in ideal.gens]
