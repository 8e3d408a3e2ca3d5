import random

import pytest
import sympy

from moonring.greenring import BUILTIN_RINGS, GreenRing, RingMismatchError, adams, builtin_ring
from moonring.homfinder import (
    Character, apply, charpoly, enumerate_characters, integer_roots, is_multiplicative, rational_rank,
)

Z4_TUPLES = {
    (1, 1, 2, 4, 2, 3, 3, 4, 4),
    (1, 1, -2, 0, 2, -1, -1, 0, 0),
    (1, 1, 2, 0, 2, 1, 1, 2, 2),
    (1, -1, 0, 0, 0, 1, -1, 0, 0),
    (1, -1, 0, 0, 0, -1, 1, 0, 0),
    (1, 1, 0, 0, 0, 1, 1, 0, 0),
    (1, 1, 0, 0, 0, -1, -1, 0, 0),
    (1, 1, 0, 0, 0, 1, 1, 2, 2),
}
Z6_TUPLES = {(1, 2, 3, 4, 6), (1, 0, 3, 2, 0), (1, 2, 0, 1, 0), (1, 0, 0, -1, 0), (1, 0, 0, 1, 0)}


def test_charpoly_matches_sympy():
    rng = random.Random(3)
    for n in range(1, 7):
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        x = sympy.symbols("x")
        want = sympy.Poly(sympy.Matrix(m).charpoly(x).as_expr(), x).all_coeffs()
        assert charpoly(m) == [int(c) for c in want]


def test_integer_roots():
    # (x - 2)^2 (x + 3) (x^2 + 1)
    poly = [1, -1, -7, 11, -8, 12]
    roots, rest = integer_roots(poly)
    assert roots == [-3, 2]
    assert rest == [1, 0, 1]
    assert integer_roots([1, 0, 0])[0] == [0]


def test_z4_characters():
    chars = enumerate_characters(builtin_ring("Z4"))
    assert {c.values for c in chars} == Z4_TUPLES
    assert len(chars) == 8


def test_z6_characters():
    chars = enumerate_characters(builtin_ring("Z6_6A"))
    assert {c.values for c in chars} == Z6_TUPLES


def test_small_rings():
    assert len(enumerate_characters(builtin_ring("Z2"))) == 3
    assert len(enumerate_characters(builtin_ring("Z3"))) == 3


def test_unit_ring_has_one_character():
    ring = GreenRing("one", ["A"], "A", [1], {"A,A": {"A": 1}})
    chars = enumerate_characters(ring)
    assert [c.values for c in chars] == [(1,)]


@pytest.mark.parametrize("name", BUILTIN_RINGS)
def test_characters_multiplicative_and_independent(name):
    ring = builtin_ring(name)
    chars = enumerate_characters(ring)
    for c in chars:
        assert c.values[ring.unit] == 1
        assert is_multiplicative(ring, c.values)
    assert rational_rank([c.values for c in chars]) == len(chars)
    assert len(set(chars)) == len(chars)


def test_order_independent():
    ring = builtin_ring("Z4")
    # relabel the basis in reverse order and compare the sets of character tuples
    raw = ring.to_json()
    rev = list(reversed(raw["labels"]))
    perm = GreenRing(
        "Z4rev", rev, raw["unit"], [raw["ranks"][raw["labels"].index(l)] for l in rev],
        raw["products"], raw["exterior"], {},
    )
    got = {tuple(c.values[rev.index(l)] for l in raw["labels"]) for c in enumerate_characters(perm)}
    assert got == Z4_TUPLES


def test_apply_examples():
    z4 = builtin_ring("Z4")
    chars = {c.name: c for c in enumerate_characters(z4)}
    assert apply(chars["rank"], z4.element("D")) == 4
    assert apply(chars["trace-g"], z4.element("CA")) == 1
    for c in chars.values():
        assert c(z4.zero()) == 0


def test_apply_ring_mismatch():
    c = enumerate_characters(builtin_ring("Z4"))[0]
    with pytest.raises(RingMismatchError):
        apply(c, builtin_ring("Z2").one())


def test_identified_characters():
    z4 = builtin_ring("Z4")
    tags = {c.name: c.values for c in enumerate_characters(z4)}
    assert tags["rank"] == (1, 1, 2, 4, 2, 3, 3, 4, 4)
    assert tags["trace-g"] == (1, -1, 0, 0, 0, 1, -1, 0, 0)
    assert tags["trace-g2"] == (1, 1, -2, 0, 2, -1, -1, 0, 0)
    assert tags["tate"] == (1, 1, 2, 0, 2, 1, 1, 2, 2)


def test_adams_character_compatibility():
    """trace of g^p on psi^k x equals trace of g^(pk) on x."""
    z4 = builtin_ring("Z4")
    by_power = {c.power: c for c in enumerate_characters(z4) if c.power is not None}
    by_power[3] = by_power[1]  # g^3 is conjugate to g^-1; integral traces agree
    for p, phi in by_power.items():
        for k in range(1, 9):
            for lab in ("A", "B", "C", "D", "E", "CA", "CB"):
                x = z4.element(lab)
                assert phi(adams(k, x)) == by_power[(p * k) % 4](x), (p, k, lab)


def test_character_json():
    c = enumerate_characters(builtin_ring("Z2"))[0]
    obj = c.to_json()
    assert obj["values"] == list(c.values)
    assert isinstance(c, Character)
