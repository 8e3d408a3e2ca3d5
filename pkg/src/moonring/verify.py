"""Reproduction checks behind ``moonring verify-all``.

Each check returns a :class:`CheckResult`; ``run_checks`` runs a level's
list in order.  ``desk`` finishes in seconds, ``deep`` repeats the series
checks at larger truncations.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import reference as ref
from .decomp import d_series_4B, decompose_4A, feasibility_6A, multiplicities_6A, rank_consistent, trace_check
from .exactseries import LaurentSeries, exp_series, log_series
from .greenring import BUILTIN_RINGS, adams, builtin_ring, restrict, tensor
from .homfinder import enumerate_characters
from .modfun import _load_table, formula_series, hauptmodul
from ._data import series_file
from .quasirep import check_quasirep, family_for, knz_check, knz_high_vanishing

__all__ = ["CheckResult", "LEVELS", "run_checks"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def check_homs() -> tuple[bool, str]:
    got4 = {c.values for c in enumerate_characters(builtin_ring("Z4"))}
    got6 = {c.values for c in enumerate_characters(builtin_ring("Z6_6A"))}
    ok = got4 == ref.Z4_CHARACTERS and got6 == ref.Z6_6A_CHARACTERS
    return ok, f"Z4: {len(got4)} characters, Z6_6A: {len(got6)} characters"


def adams_table_mismatches(kmax: int = 16) -> list[str]:
    z4 = builtin_ring("Z4")
    bad = []
    for k in range(1, 8 * kmax + 1):
        row = ref.adams_row(k)
        for lab, expected in ref.ADAMS_Z4[row].items():
            got = adams(k, z4.element(lab))
            if got != z4.parse(expected):
                bad.append(f"psi^{k}({lab}) = {got}, table ({row}) has {expected}")
    return bad


def check_adams_table() -> tuple[bool, str]:
    bad = adams_table_mismatches()
    if not bad:
        return True, "all rows agree for k <= 128"
    return False, f"{len(bad)} mismatches; first: {bad[0]}"


def check_adams_counterexamples() -> tuple[bool, str]:
    z4 = builtin_ring("Z4")
    c = z4.element("C")
    got = (adams(2, adams(2, c)), adams(4, c), adams(2, tensor(c, c)), tensor(adams(2, c), adams(2, c)))
    want = tuple(z4.parse(s) for s in ref.ADAMS_COUNTEREXAMPLES)
    return got == want and got[0] != got[1] and got[2] != got[3], ", ".join(map(str, got))


def check_hauptmoduln(eta_trunc: int = 101) -> tuple[bool, str]:
    bad = []
    for label, coeffs in ref.HAUPTMODUL_COEFFS.items():
        s = hauptmodul(label, 4)
        if (s[-1], s[0]) != (1, 0) or tuple(s[n] for n in (1, 2, 3)) != coeffs:
            bad.append(label)
    for label in ("2B", "4A"):
        embedded = _load_table(str(series_file(label)))
        if not formula_series(label, eta_trunc).agrees_with(embedded.truncate(eta_trunc)):
            bad.append(f"{label}-eta")
    return not bad, "mismatch: " + ", ".join(bad) if bad else f"7 classes; eta formulas agree to q^{eta_trunc - 1}"


def check_decomp_4A(nmax: int = 100) -> tuple[bool, str]:
    dec = decompose_4A(nmax)
    chars = {c.name: c for c in enumerate_characters(dec.ring)}
    ok = (rank_consistent(dec)
          and trace_check(dec, chars["rank"], "1A")
          and trace_check(dec, chars["trace-g2"], "2B")
          and trace_check(dec, chars["trace-g"], "4A"))
    return ok, f"grades 0..{nmax}"


def check_d_series() -> tuple[bool, str]:
    s = d_series_4B(4)
    got = tuple(int(s[n]) for n in (1, 2, 3))
    return got == ref.D_SERIES_4B, str(got)


def check_knz(pmax: int = 8, qtrunc: int = 8) -> tuple[bool, str]:
    ok = knz_check(pmax, qtrunc)
    extra = knz_high_vanishing(pmax, qtrunc)
    return ok and not extra, f"pmax={pmax}, qtrunc={qtrunc}, stray coefficients: {len(extra)}"


QUASIREP_CASES = (
    ("4A", "rank", 4), ("4A", "trace-g", 4), ("4A", "trace-g2", 4), ("4A", "tate", 4),
    ("6A", "rank", 6), ("6A", "trace-g", 6), ("6A", "trace-g2", 6), ("6A", "trace-g3", 6),
)


def check_quasirep_cases(pmax: int = 6, qtrunc: int = 12) -> tuple[bool, str]:
    failed = []
    for group, phi, n in QUASIREP_CASES:
        report = check_quasirep(family_for(group, phi, pmax, qtrunc), n, pmax, qtrunc)
        if not report.passed:
            failed.append(f"{group}:{phi}")
    return not failed, "failed: " + ", ".join(failed) if failed else f"{len(QUASIREP_CASES)} families"


def check_feasibility_6A(nmax: int = 60) -> tuple[bool, str]:
    t3 = hauptmodul("3A", nmax)
    t6 = hauptmodul("6A", nmax)
    for n in range(2, nmax + 1):
        iv = feasibility_6A(n)
        x6 = int(t6[n - 1])
        if x6 not in iv or multiplicities_6A(n, x6)[3] != 0:
            return False, f"grade {n}: t6A = {x6} not feasible with m123 = 0"
        if iv.lower < x6 or iv.upper > t3[n - 1]:
            return False, f"grade {n}: [{iv.lower}, {iv.upper}] leaves [{x6}, {t3[n - 1]}]"
    return True, f"grades 2..{nmax}"


def check_rings() -> tuple[bool, str]:
    # construction already validated each table; validate() reruns the checks
    rings = [builtin_ring(name) for name in BUILTIN_RINGS]
    for ring in rings:
        ring.validate()
        for target, (tring, _) in ring.restrictions.items():
            for i in range(ring.dim):
                for j in range(ring.dim):
                    x, y = ring.basis(i), ring.basis(j)
                    if restrict(x * y, tring) != restrict(x, tring) * restrict(y, tring):
                        return False, f"{ring.name} -> {target} is not multiplicative"
    return True, ", ".join(r.name for r in rings)


# the lattices with exterior data, i.e. those occurring in the Adams table
ADAMS_BASIS = tuple(ref.ADAMS_Z4["2k+1"])


def check_adams_characters() -> tuple[bool, str]:
    """phi_{g^p}(psi^k x) = phi_{g^(pk)}(x) for the trace characters of Z/4."""
    z4 = builtin_ring("Z4")
    by_power = {}
    for c in enumerate_characters(z4):
        if c.power is not None:
            by_power[c.power % 4] = c
    by_power.setdefault(3, by_power[1])
    for p, phi in by_power.items():
        for k in range(1, 17):
            target = by_power[(p * k) % 4]
            for lab in ADAMS_BASIS:
                x = z4.element(lab)
                if phi(adams(k, x)) != target(x):
                    return False, f"trace of g^{p} on psi^{k}({lab})"
    return True, "powers 0..3, k <= 16"


def check_series_properties(samples: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)

    def rand_series(const=0):
        trunc = rng.randint(3, 12)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(trunc)]
        coeffs[0] = Fraction(const)
        return LaurentSeries(0, coeffs, trunc)

    for _ in range(samples):
        x, y = rand_series(), rand_series()
        if not log_series(exp_series(x)).agrees_with(x):
            return False, "log(exp x) != x"
        if not exp_series(x + y).agrees_with(exp_series(x) * exp_series(y)):
            return False, "exp(x + y) != exp x exp y"
        u = rand_series(1)
        if not exp_series(log_series(u)).agrees_with(u):
            return False, "exp(log u) != u"
    return True, f"{samples} random series"


def _desk():
    return [
        ("ring-homs", check_homs),
        ("adams-table", check_adams_table),
        ("adams-counterexamples", check_adams_counterexamples),
        ("hauptmodul-coefficients", check_hauptmoduln),
        ("decomp-4A", check_decomp_4A),
        ("d-series-4B", check_d_series),
        ("knz", check_knz),
        ("quasirep", check_quasirep_cases),
        ("feasibility-6A", check_feasibility_6A),
        ("ring-tables", check_rings),
        ("adams-characters", check_adams_characters),
        ("series-properties", check_series_properties),
    ]


def _deep():
    return [
        ("ring-homs", check_homs),
        ("adams-table", check_adams_table),
        ("adams-counterexamples", check_adams_counterexamples),
        ("hauptmodul-coefficients", lambda: check_hauptmoduln(201)),
        ("decomp-4A", lambda: check_decomp_4A(200)),
        ("d-series-4B", check_d_series),
        ("knz", lambda: check_knz(12, 12)),
        ("quasirep", lambda: check_quasirep_cases(8, 16)),
        ("feasibility-6A", lambda: check_feasibility_6A(200)),
        ("ring-tables", check_rings),
        ("adams-characters", check_adams_characters),
        ("series-properties", lambda: check_series_properties(1000)),
    ]


LEVELS = {"desk": _desk, "deep": _deep}


def run_checks(level: str = "desk") -> list[CheckResult]:
    out = []
    for name, fn in LEVELS[level]():
        t = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t))
    return out
