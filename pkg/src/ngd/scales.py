"""The commutative scale group driving dilations.

Two realizations ship: positive rationals under multiplication with
modulus equal to the value, and the integers under addition with modulus
k -> 2^-k (the dyadic grid).  The morphism between them is exercised in
the tests.  Models only ever consume a scale through `.modulus`, so
either realization can drive them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Scale:
    """A positive rational scale; modulus is the value itself."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 0:
            raise ValueError(f"scale must be positive, got {self.value}")

    @property
    def modulus(self) -> Fraction:
        return self.value

    def mul(self, other: "Scale") -> "Scale":
        return Scale(self.value * other.value)

    def inv(self) -> "Scale":
        return Scale(1 / self.value)

    def is_one(self) -> bool:
        return self.value == 1

    @classmethod
    def one(cls) -> "Scale":
        return cls(Fraction(1))

    def __repr__(self):
        return f"Scale({self.value})"


@dataclass(frozen=True)
class IntScale:
    """Integer (additive) realization: k has modulus 2^-k."""

    k: int

    @property
    def modulus(self) -> Fraction:
        return Fraction(1, 2**self.k) if self.k >= 0 else Fraction(2**(-self.k))

    def mul(self, other: "IntScale") -> "IntScale":
        return IntScale(self.k + other.k)

    def inv(self) -> "IntScale":
        return IntScale(-self.k)

    def is_one(self) -> bool:
        return self.k == 0

    @classmethod
    def one(cls) -> "IntScale":
        return cls(0)

    def to_scale(self) -> Scale:
        """The morphism into the rational realization (k -> 2^-k)."""
        return Scale(self.modulus)

    def __repr__(self):
        return f"IntScale({self.k})"


def dyadic_grid(kmax: int = 20, kmin: int = 1) -> list:
    """Scales 2^-k for k = kmin..kmax -- the default evaluation grid."""
    return [Scale(Fraction(1, 2**k)) for k in range(kmin, kmax + 1)]


def as_scale(s) -> Scale:
    """Coerce ints/Fractions/strings (and the integer realization) to a
    rational Scale."""
    if isinstance(s, Scale):
        return s
    if isinstance(s, IntScale):
        return s.to_scale()
    if isinstance(s, float):
        # floats show up from CLI flags; accept exact binary values
        return Scale(Fraction(s))
    return Scale(Fraction(s))
