"""Acceptance criteria 1-9.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with `python3 tests/test_acceptance.py`.
"""
import json
import random
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction
from io import StringIO

from moonring import reference as ref
from moonring.cli import main
from moonring.decomp import d_series_4B, decompose_4A, feasibility_6A, multiplicities_6A, series_of
from moonring.exactseries import LaurentSeries, exp_series, log_series
from moonring.greenring import BUILTIN_RINGS, adams, builtin_ring, rank_of, restrict, tensor
from moonring.homfinder import enumerate_characters
from moonring.modfun import formula_series, hauptmodul
from moonring.quasirep import (
    assemble_biexp, check_quasirep, family_for, family_from_power_map, knz_check, required_trunc,
)


def _homs_cli(ring):
    buf = StringIO()
    with redirect_stdout(buf):
        code = main(["ring", "homs", ring, "--format", "json"])
    assert code == 0
    return [tuple(row["values"]) for row in json.loads(buf.getvalue())]


def test_criterion_1_characters():
    start = time.perf_counter()
    z4 = _homs_cli("Z4")
    z6 = _homs_cli("Z6_6A")
    elapsed = time.perf_counter() - start
    assert len(z4) == 8 and set(z4) == ref.Z4_CHARACTERS
    assert len(z6) == 5 and set(z6) == ref.Z6_6A_CHARACTERS
    assert elapsed < 1.0


def test_criterion_2_adams_tables():
    z4 = builtin_ring("Z4")
    rows = {"2k+1": lambda k: 2 * k + 1, "4k+2": lambda k: 4 * k + 2,
            "8k+4": lambda k: 8 * k + 4, "8k": lambda k: 8 * k}
    bad = []
    for row, index in rows.items():
        for k in range(1, 17):
            for lab, printed in ref.ADAMS_Z4[row].items():
                got = adams(index(k), z4.element(lab))
                if got != z4.parse(printed):
                    bad.append(f"psi^{index(k)}({lab}) = {got}, printed {printed}")
    c = z4.element("C")
    iterated, direct = adams(2, adams(2, c)), adams(4, c)
    of_square, squared = adams(2, tensor(c, c)), tensor(adams(2, c), adams(2, c))
    assert (iterated, direct) == (z4.parse("4E - 4B - 2A"), z4.parse("2A"))
    assert (of_square, squared) == (z4.parse("4E - 4B"), z4.parse("4A"))
    assert iterated != direct and of_square != squared
    assert not bad, f"{len(bad)} table entries differ, e.g. {bad[0]}"


def test_criterion_3_hauptmoduln():
    for label, coeffs in ref.HAUPTMODUL_COEFFS.items():
        s = hauptmodul(label, 4)
        assert (s[-1], s[0]) == (1, 0)
        assert (s[1], s[2], s[3]) == coeffs, label
    for label in ("2B", "4A"):
        assert formula_series(label, 101).agrees_with(hauptmodul(label, 101)), label


def test_criterion_4_decomposition_4A():
    start = time.perf_counter()
    dec = decompose_4A(100)
    for m in dec.mults:
        assert all(isinstance(x, int) and x >= 0 for x in m.coeffs)
    chars = {c.name: c for c in enumerate_characters(dec.ring)}
    for phi, label in (("rank", "1A"), ("trace-g2", "2B"), ("trace-g", "4A")):
        traced = series_of(dec, chars[phi])
        want = hauptmodul(label, 100)
        assert all(traced[n] == want[n] for n in range(-1, 100)), label
    assert time.perf_counter() - start < 5.0


def test_criterion_5_d_series():
    s = d_series_4B(4)
    assert (s[1], s[2], s[3]) == ref.D_SERIES_4B


def test_criterion_6_knz():
    start = time.perf_counter()
    assert required_trunc(8, 8) <= 64
    assert knz_check(8, 8)
    fam = family_from_power_map("1A", {1: "1A"}, trunc=required_trunc(8, 8))
    e = assemble_biexp(fam, 8, 8)
    stray = [(a, b) for a in range(9) for b in range(1, 8) if a != 1 and e.coefficient(a, b) != 0]
    assert not stray
    assert time.perf_counter() - start < 30.0


def test_criterion_7_quasirep():
    cases = [("4A", phi, 4) for phi in ("rank", "trace-g", "trace-g2", "tate")]
    cases += [("6A", phi, 6) for phi in ("rank", "trace-g", "trace-g2", "trace-g3")]
    failed = [f"{g}:{phi}" for g, phi, n in cases
              if not check_quasirep(family_for(g, phi, 6, 12), n, 6, 12).passed]
    assert not failed


def test_criterion_8_feasibility_6A():
    t3 = hauptmodul("3A", 60)
    t6 = hauptmodul("6A", 60)
    for n in range(2, 61):
        iv = feasibility_6A(n)
        assert iv.lower <= iv.upper
        x6 = int(t6[n - 1])
        assert x6 in iv and multiplicities_6A(n, x6)[3] == 0
        assert x6 <= iv.lower and iv.upper <= t3[n - 1]


def _random_series(rng, const=0):
    trunc = rng.randint(3, 12)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(trunc)]
    coeffs[0] = Fraction(const)
    return LaurentSeries(0, coeffs, trunc)


def test_criterion_9_properties():
    for name in BUILTIN_RINGS:
        ring = builtin_ring(name)
        basis = [ring.basis(i) for i in range(ring.dim)]
        for x in basis:
            assert tensor(ring.one(), x) == x
            for y in basis:
                assert tensor(x, y) == tensor(y, x)
                assert rank_of(tensor(x, y)) == rank_of(x) * rank_of(y)
                for z in basis:
                    assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))
                for tring, _ in ring.restrictions.values():
                    assert restrict(x * y, tring) == restrict(x, tring) * restrict(y, tring)
    rng = random.Random(2024)
    for _ in range(100):
        x, y, u = _random_series(rng), _random_series(rng), _random_series(rng, 1)
        assert log_series(exp_series(x)).agrees_with(x)
        assert exp_series(log_series(u)).agrees_with(u)
        assert exp_series(x + y).agrees_with(exp_series(x) * exp_series(y))
    z4 = builtin_ring("Z4")
    by_power = {c.power % 4: c for c in enumerate_characters(z4) if c.power is not None}
    by_power.setdefault(3, by_power[1])
    for p, phi in by_power.items():
        for k in range(1, 17):
            for lab in ref.ADAMS_Z4["2k+1"]:
                x = z4.element(lab)
                assert phi(adams(k, x)) == by_power[(p * k) % 4](x), (p, k, lab)


CRITERIA = [
    test_criterion_1_characters, test_criterion_2_adams_tables, test_criterion_3_hauptmoduln,
    test_criterion_4_decomposition_4A, test_criterion_5_d_series, test_criterion_6_knz,
    test_criterion_7_quasirep, test_criterion_8_feasibility_6A, test_criterion_9_properties,
]


if __name__ == "__main__":
    failures = 0
    for n, fn in enumerate(CRITERIA, 1):
        try:
            fn()
            status = "PASS"
        except AssertionError as exc:
            status, failures = f"FAIL ({exc})" if str(exc) else "FAIL", failures + 1
        print(f"Criterion {n}: {status}")
    sys.exit(1 if failures else 0)
