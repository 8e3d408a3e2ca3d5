import json
from itertools import product

import pytest

from moonring import _data
from moonring.greenring import (
    BUILTIN_RINGS, AdamsUnavailable, RingError, RingMismatchError, TableError, adams, builtin_ring,
    exterior_power, load_ring, rank_of, restrict, tensor,
)


@pytest.fixture(scope="module")
def z4():
    return builtin_ring("Z4")


@pytest.fixture(scope="module")
def z6():
    return builtin_ring("Z6_6A")


def test_builtin_shapes():
    assert builtin_ring("Z4").labels == ("A", "B", "C", "D", "E", "CA", "CB", "CE", "CAB")
    assert builtin_ring("Z6_6A").labels == ("G1", "G12", "G13", "G123", "D")
    assert len(builtin_ring("Z2").labels) == 3 and len(builtin_ring("Z3").labels) == 3
    with pytest.raises(RingError):
        builtin_ring("Z5")


def test_tensor_examples(z4, z6):
    assert tensor(z4.element("C"), z4.element("C")) == z4.parse("2E")
    assert tensor(z4.element("CA"), z4.element("CB")) == z4.parse("B + 2D")
    assert tensor(z4.element("D"), z4.element("E")) == z4.parse("2D")
    x = z4.parse("2E - 2A")
    assert tensor(x, x) == z4.parse("4A")
    g = z6.element("G123")
    assert tensor(g, g) == z6.parse("2D + G13 + G1")
    for lab in z4.labels:
        assert tensor(z4.one(), z4.element(lab)) == z4.element(lab)


def test_tensor_ring_mismatch(z4, z6):
    with pytest.raises(RingMismatchError):
        tensor(z4.one(), z6.one())


@pytest.mark.parametrize("name", BUILTIN_RINGS)
def test_ring_axioms_exhaustive(name):
    ring = builtin_ring(name)
    basis = [ring.basis(i) for i in range(ring.dim)]
    for x, y in product(basis, repeat=2):
        assert tensor(x, y) == tensor(y, x)
        assert rank_of(tensor(x, y)) == rank_of(x) * rank_of(y)
        assert all(c >= 0 for c in tensor(x, y).coeffs)
    for x, y, z in product(basis, repeat=3):
        assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))


@pytest.mark.parametrize("name", BUILTIN_RINGS)
def test_restrictions_are_homomorphisms(name):
    ring = builtin_ring(name)
    for target, (tring, _) in ring.restrictions.items():
        assert restrict(ring.one(), tring) == tring.one()
        for i, j in product(range(ring.dim), repeat=2):
            x, y = ring.basis(i), ring.basis(j)
            assert restrict(x * y, tring) == restrict(x, tring) * restrict(y, tring)
            assert rank_of(restrict(x, tring)) == rank_of(x)


def test_restrict_examples(z4):
    z2 = builtin_ring("Z2")
    assert restrict(z4.element("C"), z2) == z2.parse("2I")
    assert restrict(z4.element("D"), z2) == z2.parse("2ZH")
    assert restrict(z4.element("A"), "Z2") == z2.parse("Z")
    with pytest.raises(RingError):
        restrict(z4.element("A"), "Z3")


def test_exterior_examples(z4):
    assert exterior_power(2, z4.element("D")) == z4.parse("C + D")
    assert exterior_power(4, z4.element("D")) == z4.parse("B")
    assert exterior_power(2, z4.parse("2A")) == z4.parse("A")
    assert exterior_power(0, z4.element("C")) == z4.one()
    assert exterior_power(1, z4.element("C")) == z4.element("C")
    assert exterior_power(3, z4.element("C")) == z4.zero()


def test_exterior_ranks_binomial(z4):
    from math import comb
    for lab in ("A", "B", "C", "D", "E", "CA", "CB"):
        x = z4.element(lab)
        for k in range(0, rank_of(x) + 2):
            assert rank_of(exterior_power(k, x)) == comb(rank_of(x), k)


def test_exterior_of_sum_is_convolution(z4):
    c, d = z4.element("C"), z4.element("D")
    lhs = exterior_power(3, c + d)
    rhs = sum((exterior_power(i, c) * exterior_power(3 - i, d) for i in range(4)), z4.zero())
    assert lhs == rhs


def test_exterior_rejects_virtual(z4):
    with pytest.raises(RingError):
        exterior_power(2, z4.parse("E - A"))


def test_adams_examples(z4):
    c, d = z4.element("C"), z4.element("D")
    assert adams(1, d) == d
    assert adams(2, c) == z4.parse("2E - 2A")
    assert adams(4, d) == z4.parse("4E - 4B")
    assert adams(8, d) == z4.parse("4A")


def test_adams_additive(z4):
    x = z4.parse("3C - 2D + CA")
    for k in range(1, 9):
        assert adams(k, x) == 3 * adams(k, z4.element("C")) - 2 * adams(k, z4.element("D")) + adams(k, z4.element("CA"))


def test_adams_period_8(z4):
    for lab in ("A", "B", "C", "D", "E", "CA", "CB"):
        x = z4.element(lab)
        for k in range(1, 17):
            assert adams(k, x) == adams(k + 8, x)


def test_adams_non_closure(z4):
    c = z4.element("C")
    assert adams(2, adams(2, c)) == z4.parse("4E - 4B - 2A")
    assert adams(4, c) == z4.parse("2A")
    assert adams(2, c * c) == z4.parse("4E - 4B")
    assert adams(2, c) * adams(2, c) == z4.parse("4A")


def test_adams_needs_exterior_data(z4, z6):
    with pytest.raises(AdamsUnavailable):
        adams(2, z4.element("CE"))
    assert adams(1, z6.element("G12")) == z6.element("G12")
    with pytest.raises(AdamsUnavailable):
        adams(2, z6.element("G1"))
    with pytest.raises(AdamsUnavailable):
        adams(5, z6.element("G12"))


def test_rank_examples(z4, z6):
    assert rank_of(z4.element("D")) == 4
    assert rank_of(z4.parse("A - B")) == 0
    assert rank_of(z6.element("G123")) == 4


def test_parse_and_str(z4):
    x = z4.parse("2E - 2A")
    assert str(x) == "-2A + 2E"
    assert z4.parse(str(x)) == x
    with pytest.raises(RingError):
        z4.parse("2Q")


def _table(name):
    with open(_data.ring_file(name)) as fh:
        return json.load(fh)


def _write(tmp_path, obj):
    p = tmp_path / "ring.json"
    p.write_text(json.dumps(obj))
    return p


def test_load_ring_roundtrip(tmp_path):
    obj = _table("Z2")
    ring = load_ring(_write(tmp_path, obj))
    assert ring.labels == builtin_ring("Z2").labels


def test_bad_rank_table_rejected(tmp_path):
    obj = _table("Z2")
    obj["products"]["I,I"] = {"ZH": 1}  # rank 1 * 1 != 2
    with pytest.raises(TableError):
        load_ring(_write(tmp_path, obj))


def test_bad_associativity_rejected(tmp_path):
    obj = _table("Z3")
    # ranks still multiply, but (G3 G3) G13 != G3 (G3 G13)
    obj["products"]["G3,G13"] = {"G3": 3}
    with pytest.raises(TableError):
        load_ring(_write(tmp_path, obj))


def test_bad_exterior_rank_rejected(tmp_path):
    obj = _table("Z2")
    obj["exterior"]["2,ZH"] = {"Z": 1, "I": 1}
    with pytest.raises(TableError):
        load_ring(_write(tmp_path, obj))


def test_bad_restriction_rejected(tmp_path):
    obj = _table("Z4")
    obj["restrictions"]["Z2"]["C"] = {"ZH": 1}
    with pytest.raises(TableError):
        load_ring(_write(tmp_path, obj))
