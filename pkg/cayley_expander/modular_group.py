"""
Modular group
=============

Exact arithmetic in SL(2, Z_n).
"""
import math
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from pydantic import BaseModel, root_validator, validator

from .enums import GeneratorSlot
from .exceptions import ModulusError
from .utils import prime_factors

Entries = Tuple[int, int, int, int]


def _mul(x: Entries, y: Entries, n: int) -> Entries:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


class ModMatrix(BaseModel):
    """A 2x2 matrix ``[[a, b], [c, d]]`` over Z_n with determinant 1.

    Entries must already be reduced; use :meth:`reduce` to build from arbitrary integers.

    Example::

        >>> s1 = ModMatrix(a=1, b=1, c=0, d=1, n=3)
        >>> s1 @ s1
        ModMatrix(a=1, b=2, c=0, d=1, n=3)
    """

    a: int
    b: int
    c: int
    d: int
    n: int

    class Config:
        frozen = True

    @validator("n")
    def check_modulus(cls, value):
        if value < 2:
            raise ValueError("modulus must be at least 2")
        return value

    @root_validator(skip_on_failure=True)
    def check_entries(cls, values):
        n = values["n"]
        entries = [values[k] for k in "abcd"]
        if any(not 0 <= x < n for x in entries):
            raise ValueError(f"entries {entries} are not reduced mod {n}")
        if (values["a"] * values["d"] - values["b"] * values["c"]) % n != 1 % n:
            raise ValueError(f"determinant of {entries} is not 1 mod {n}")
        return values

    @classmethod
    def reduce(cls, a: int, b: int, c: int, d: int, n: int) -> "ModMatrix":
        if n < 2:
            raise ModulusError("modulus must be at least 2")
        return cls(a=a % n, b=b % n, c=c % n, d=d % n, n=n)

    @classmethod
    def _trusted(cls, entries: Entries, n: int) -> "ModMatrix":
        # Skips validation, callers guarantee reduced det-1 entries.
        a, b, c, d = entries
        return cls.construct(a=a, b=b, c=c, d=d, n=n)

    @property
    def entries(self) -> Entries:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        return compose(self, other)


class GeneratorSet(BaseModel):
    """The generating set in canonical slot order ``[s1, s2, s1^-1, s2^-1]``"""

    n: int
    elements: List[ModMatrix]

    @validator("elements")
    def check_length(cls, value):
        if len(value) != len(GeneratorSlot):
            raise ValueError("a generator set has exactly 4 slots")
        return value

    def __getitem__(self, slot: int) -> ModMatrix:
        return self.elements[slot]


def identity(n: int) -> ModMatrix:
    return ModMatrix.reduce(1, 0, 0, 1, n)


def generator_set(n: int) -> GeneratorSet:
    """For ``n = 2`` the inverse slots hold the same matrices as s1 and s2."""
    return GeneratorSet(
        n=n,
        elements=[
            ModMatrix.reduce(1, 1, 0, 1, n),
            ModMatrix.reduce(1, 0, 1, 1, n),
            ModMatrix.reduce(1, -1, 0, 1, n),
            ModMatrix.reduce(1, 0, -1, 1, n),
        ],
    )


def compose(g: ModMatrix, h: ModMatrix) -> ModMatrix:
    if g.n != h.n:
        raise ModulusError(f"cannot compose elements mod {g.n} and mod {h.n}")
    return ModMatrix._trusted(_mul(g.entries, h.entries, g.n), g.n)


def inverse(g: ModMatrix) -> ModMatrix:
    return ModMatrix.reduce(g.d, -g.b, -g.c, g.a, g.n)


def word_to_matrix(word: Sequence[int], n: int) -> ModMatrix:
    """Product of generators along a word of slot indices, left to right"""
    gens = generator_set(n)
    result = identity(n)
    for slot in word:
        result = compose(result, gens[slot])
    return result


def group_order(n: int) -> int:
    """``n^3 * prod(1 - 1/p^2)`` over the primes dividing ``n``, in exact arithmetic.

    Example::

        >>> group_order(3)
        24
    """
    if n < 2:
        raise ModulusError("modulus must be at least 2")
    order = Fraction(n ** 3)
    for p in prime_factors(n):
        order *= 1 - Fraction(1, p * p)
    assert order.denominator == 1
    return int(order)


def enumerate_sl2(n: int) -> List[ModMatrix]:
    """All of SL(2, Z_n) by brute force over the n^4 matrices"""
    if n < 2:
        raise ModulusError("modulus must be at least 2")
    return [
        ModMatrix._trusted((a, b, c, d), n)
        for a, b, c, d in product(range(n), repeat=4)
        if (a * d - b * c) % n == 1
    ]


def operator_norm_generator() -> float:
    """Operator norm of each generator, the golden ratio ``(1 + sqrt(5)) / 2``"""
    return (1 + math.sqrt(5)) / 2
