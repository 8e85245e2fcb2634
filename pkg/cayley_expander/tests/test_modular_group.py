import math
import random

import pytest
from pydantic import ValidationError

from ..exceptions import ModulusError
from ..modular_group import (
    ModMatrix,
    compose,
    enumerate_sl2,
    generator_set,
    group_order,
    identity,
    inverse,
    operator_norm_generator,
    word_to_matrix,
)


def test_mod_matrix_validation():

    # 1. Unreduced entries rejected
    with pytest.raises(ValidationError):
        ModMatrix(a=3, b=0, c=0, d=1, n=3)

    # 2. Determinant other than 1 rejected
    with pytest.raises(ValidationError):
        ModMatrix(a=2, b=0, c=0, d=2, n=5)

    # 3. reduce() brings arbitrary integers into range
    assert ModMatrix.reduce(1, -1, 0, 1, 5).entries == (1, 4, 0, 1)

    # 4. Modulus 1 rejected
    with pytest.raises(ModulusError):
        ModMatrix.reduce(1, 0, 0, 1, 1)


def test_compose():
    s1, s2, _, _ = generator_set(3).elements

    assert compose(identity(3), s1) == s1
    assert compose(generator_set(2)[0], generator_set(2)[0]) == identity(2)
    assert compose(s1, s2).entries == (2, 1, 1, 1)
    assert (s1 @ s2) == compose(s1, s2)

    with pytest.raises(ModulusError):
        compose(s1, generator_set(5)[0])


def test_inverse():
    assert inverse(identity(7)) == identity(7)
    assert inverse(generator_set(5)[0]).entries == (1, 4, 0, 1)

    rng = random.Random(0)
    elements = enumerate_sl2(7)
    for g in rng.sample(elements, 20):
        assert inverse(inverse(g)) == g


def test_inverse_two_sided():
    for n in range(2, 9):
        e = identity(n)
        for g in enumerate_sl2(n):
            assert compose(g, inverse(g)) == e
            assert compose(inverse(g), g) == e


def test_generator_set():
    gens = generator_set(2)
    # inverse slots coincide with s1, s2 mod 2 but stay separate slots
    assert len(gens.elements) == 4
    assert gens[2] == gens[0] and gens[3] == gens[1]

    gens = generator_set(5)
    for slot in range(2):
        assert compose(gens[slot], gens[slot + 2]) == identity(5)


def test_word_to_matrix():
    assert word_to_matrix([], 4) == identity(4)
    assert word_to_matrix([0, 1], 3).entries == (2, 1, 1, 1)


def test_group_order():
    assert group_order(2) == 6
    assert group_order(3) == 24
    assert group_order(4) == 48
    assert group_order(5) == 120
    assert group_order(12) == 1152

    with pytest.raises(ModulusError):
        group_order(1)


def test_group_order_matches_enumeration():
    for n in range(2, 13):
        assert len(enumerate_sl2(n)) == group_order(n)


def test_closure():
    gens = generator_set(6).elements
    for g in enumerate_sl2(6)[:50]:
        for s in gens:
            h = compose(g, s)
            # revalidates entries and determinant
            ModMatrix(**h.dict())


def test_operator_norm_generator():
    phi = operator_norm_generator()
    assert phi == pytest.approx(1.6180339887, abs=1e-10)
    assert phi ** 2 == pytest.approx((3 + math.sqrt(5)) / 2)
    assert phi ** 6 < 17.95
