"""Exact scalar arithmetic over Z_p and Q.

Scalars are plain Python values: ``int`` in ``[0, p-1]`` for a prime field,
``fractions.Fraction`` for the rationals.  Field handles only know how to
normalize and combine them, which keeps the polynomial kernels cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


class NonPrimeModulus(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise NonPrimeModulus(f"modulus {self.p!r} is not a prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"Z_{self.p}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def __call__(self, value) -> int:
        return self.embed(value)

    def embed(self, value) -> int:
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def elements(self) -> range:
        return range(self.p)

    def nonzero(self) -> range:
        return range(1, self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative, handy for printing -1 instead of p-1."""
        return a - self.p if a > self.p // 2 else a

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RationalField:
    @property
    def characteristic(self) -> int:
        return 0

    @property
    def name(self) -> str:
        return "Q"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, value) -> Fraction:
        return self.embed(value)

    def embed(self, value) -> Fraction:
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) * self.inv(b)

    def signed(self, a):
        return a

    def __str__(self) -> str:
        return self.name


CoefficientField = Union[PrimeField, RationalField]

QQ = RationalField()


def field_of(kind) -> CoefficientField:
    """Return a field handle.

    ``kind`` is a prime modulus (int), or one of ``"Q"``/``"rationals"``/``None``
    for the rationals.
    """
    if kind is None or (isinstance(kind, str) and kind.lower() in ("q", "qq", "rationals")):
        return QQ
    if isinstance(kind, str):
        kind = int(kind)
    return PrimeField(kind)


def invert(a: Scalar, field: CoefficientField) -> Scalar:
    return field.inv(field.embed(a))


def embed_integer(n: int, field: CoefficientField) -> Scalar:
    return field.embed(n)
