from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Literal

from sympy import isprime
from sympy.polys.domains import GF, QQ

from lyutab.errors import InvalidInput

MAX_PRIME = 2 ** 31


@dataclass(frozen=True)
class FieldSpec:
	"""Coefficient field: the rationals or a prime field F_p."""

	kind: Literal["rationals", "prime-field"]
	characteristic: int = 0

	def __post_init__(self):
		if self.kind == "rationals":
			if self.characteristic != 0:
				raise InvalidInput("the rationals have characteristic 0")
		elif self.kind == "prime-field":
			if not isprime(self.characteristic):
				raise InvalidInput(f"characteristic {self.characteristic} is not a prime")
			if self.characteristic >= MAX_PRIME:
				raise InvalidInput(f"prime fields are limited to p < 2^31, got {self.characteristic}")
		else:
			raise InvalidInput(f"unknown field kind {self.kind!r}")

	@classmethod
	def rationals(cls) -> "FieldSpec":
		return cls("rationals", 0)

	@classmethod
	def prime(cls, p: int) -> "FieldSpec":
		return cls("prime-field", int(p))

	@classmethod
	def from_characteristic(cls, char: int) -> "FieldSpec":
		return cls.rationals() if int(char) == 0 else cls.prime(int(char))

	@property
	def is_rationals(self) -> bool:
		return self.kind == "rationals"

	@cached_property
	def domain(self):
		"""The sympy domain (QQ or GF(p)) that holds coefficients."""
		return QQ if self.is_rationals else GF(self.characteristic)

	def __getstate__(self) -> dict:
		# the cached sympy domain does not pickle; workers rebuild it
		state = dict(self.__dict__)
		state.pop("domain", None)
		return state

	def element(self, value: Any):
		return self.domain.convert(value)

	def convert_from(self, value, source: "FieldSpec"):
		"""Move an element of `source` into this field (rationals reduce mod p)."""
		if source == self:
			return value
		if source.is_rationals:
			q = source.domain.to_sympy(value)
			if self.is_rationals:
				return self.element(q)
			num, den = int(q.p), int(q.q)
			if den % self.characteristic == 0:
				raise InvalidInput(f"{q} has no image in {self}")
			return self.element(num) / self.element(den)
		return self.element(source.to_int(value))

	def to_int(self, value) -> int:
		"""Least residue of an F_p element (or the integer value of a rational)."""
		if self.is_rationals:
			return int(self.domain.to_sympy(value))
		return int(value) % self.characteristic

	def to_text(self, value) -> str:
		if self.is_rationals:
			return str(self.domain.to_sympy(value))
		return str(self.to_int(value))

	def __str__(self) -> str:
		return "QQ" if self.is_rationals else f"GF({self.characteristic})"
