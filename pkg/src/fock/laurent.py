"""
Laurent polynomials in v with integer coefficients, stored as {exponent: coefficient}.
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


def _trim(coeffs: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((exp, c) for exp, c in coeffs.items() if c != 0))


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged = defaultdict(int)
        for exp, c in self.terms:
            merged[int(exp)] += int(c)
        object.__setattr__(self, "terms", _trim(merged))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(((0, 1),))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls(((exponent, coeff),))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        return cls(tuple((exp, c) for exp, c in pairs))

    @classmethod
    def quantum_integer(cls, k: int) -> "LaurentPoly":
        """[k] = v^(k-1) + v^(k-3) + ... + v^(1-k); [0] = 0 and [-k] = -[k]."""
        if k < 0:
            return -cls.quantum_integer(-k)
        return cls(tuple((k - 1 - 2 * j, 1) for j in range(k)))

    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    def to_pairs(self) -> list[list[int]]:
        return [[exp, c] for exp, c in self.terms]

    def evaluate(self, v: Union[int, float] = 1):
        return sum(c * v ** exp for exp, c in self.terms)

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return self.terms[-1][0]

    @property
    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no valuation")
        return self.terms[0][0]

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.monomial(0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple((exp, -c) for exp, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(tuple(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        ))

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exp, c in reversed(self.terms):
            if exp == 0:
                mono = str(c)
            else:
                power = "v" if exp == 1 else f"v^{exp}"
                mono = power if c == 1 else "-" + power if c == -1 else f"{c}*{power}"
            chunks.append(mono)
        return " + ".join(chunks).replace("+ -", "- ")
