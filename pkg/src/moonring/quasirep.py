"""Replicate families, bracket series and the quasi-replicability test.

For a family ``f^(a)`` of replicates the bracket series is

    f^[m] = sum_{ad=m} (1/a) sum_j c_a(j d) q^(a j),

with ``c_a(n)`` the ``q^n`` coefficient of ``f^(a)``.  A family is
quasi-replicable of exponent N when the ``p^a q^b`` coefficient of
``exp(-sum_m p^m f^[m])`` vanishes whenever ``(a-1) b`` is a nonzero integer
coprime to N.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .decomp import Decomposition, decompose_4A
from .exactseries import BiSeries, LaurentSeries, SeriesError, exp_rows
from .greenring import adams
from .homfinder import Character, apply
from .modfun import EMBEDDED_CLASSES, UnknownClassError, embedded_series, hauptmodul, power_map

__all__ = [
    "ReplicateFamily",
    "QuasiRepReport",
    "trace_class_map",
    "family_from_power_map",
    "family_from_adams",
    "required_trunc",
    "bracket_series",
    "assemble_biexp",
    "coprime_predicate",
    "check_quasirep",
    "knz_mismatches",
    "knz_check",
    "recursion_probe_4B",
    "sandwich_violations_4B",
    "tate_family_4A",
    "family_for",
    "knz_high_vanishing",
    "PHI_NAMES",
]


@dataclass(frozen=True)
class ReplicateFamily:
    """f^(k) = members[((k - 1) mod period) + 1]."""

    period: int
    members: Mapping[int, LaurentSeries]
    label: str = ""
    assumptions: tuple[str, ...] = ()

    def __post_init__(self):
        if sorted(self.members) != list(range(1, self.period + 1)):
            raise ValueError(f"family needs members 1..{self.period}, got {sorted(self.members)}")
        for k, s in self.members.items():
            if s.order != -1 or s[-1] != 1:
                raise ValueError(f"replicate f^({k}) must start with q^-1")

    def member(self, k: int) -> LaurentSeries:
        return self.members[(k - 1) % self.period + 1]

    @property
    def trunc(self) -> int:
        return min(s.trunc for s in self.members.values())


@dataclass(frozen=True)
class QuasiRepReport:
    exponent: int
    pmax: int
    qmax: int
    violations: tuple[tuple[int, int, Fraction], ...] = field(default_factory=tuple)
    family: str = ""
    assumptions: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "exponent": self.exponent,
            "pmax": self.pmax,
            "qmax": self.qmax,
            "passed": self.passed,
            "violations": [
                {"a": a, "b": b, "coefficient": f"{c.numerator}/{c.denominator}"}
                for a, b, c in self.violations
            ],
            "assumptions": list(self.assumptions),
        }


def required_trunc(pmax: int, qtrunc: int) -> int:
    """Member truncation that :func:`assemble_biexp` needs."""
    need = 0
    for m in range(1, pmax + 1):
        t = qtrunc + pmax - m
        for a in range(1, m + 1):
            if m % a == 0:
                need = max(need, (m // a) * ((t - 1) // a) + 1)
    return need


def _max_trunc(classes) -> int | None:
    if any(c in EMBEDDED_CLASSES for c in classes):
        return min(embedded_series(c).trunc for c in classes if c in EMBEDDED_CLASSES)
    return None


def trace_class_map(group: str, power: int = 1) -> dict[int, str]:
    """k -> class of g^(power k), the replicates of the trace of g^power."""
    pm = power_map(group)
    return {k: pm.at(power * k) for k in range(1, pm.order + 1)}


def family_from_power_map(group: str, phi_class_map: Mapping[int, str], trunc: int | None = None) -> ReplicateFamily:
    """Family of McKay-Thompson series f^(k) = T_{phi_class_map[k]}."""
    pm = power_map(group)
    if sorted(phi_class_map) != list(range(1, pm.order + 1)):
        raise ValueError(f"class map for {group} must cover k = 1..{pm.order}")
    if trunc is None:
        trunc = _max_trunc(phi_class_map.values()) or 201
    members = {k: hauptmodul(c, trunc) for k, c in phi_class_map.items()}
    notes = []
    for k in range(2, pm.order):
        if gcd(k, pm.order) == 1 and phi_class_map[k] == phi_class_map[1] != "1A":
            notes.append(f"f^({k}) taken equal to f^(1): traces of g^{k} and g agree on integral lattices")
            break
    label = f"{group}:" + ",".join(phi_class_map[k] for k in sorted(phi_class_map))
    return ReplicateFamily(pm.order, members, label, tuple(notes))


def family_from_adams(dec: Decomposition, phi: Character, period: int = 8) -> ReplicateFamily:
    """f^(k) = sum_n phi(psi^k(V_n)) q^(n-1) from a decomposition of the Moonshine module."""
    ring = dec.ring
    used = [i for i in range(ring.dim) if any(m.coeffs[i] for m in dec.mults)]
    vectors = {}
    for k in range(1, 2 * period + 1):
        vectors[k] = {i: apply(phi, adams(k, ring.basis(i))) for i in used}
    for k in range(1, period + 1):
        if vectors[k] != vectors[k + period]:
            raise ValueError(f"phi o psi^k is not periodic with period {period} on {ring.name}")
    members = {}
    for k in range(1, period + 1):
        vec = vectors[k]
        coeffs = [sum(vec[i] * m.coeffs[i] for i in used) for m in dec.mults]
        members[k] = LaurentSeries(-1, coeffs, dec.nmax)
    label = f"{ring.name}:{phi.name or phi.values}"
    return ReplicateFamily(period, members, label, ())


def bracket_series(fam: ReplicateFamily, m: int, qtrunc: int) -> LaurentSeries:
    """f^[m] to O(q^qtrunc)."""
    if m < 1:
        raise ValueError("bracket index m must be positive")
    terms: dict[int, Fraction] = {}
    for a in range(1, m + 1):
        if m % a:
            continue
        d = m // a
        f = fam.member(a)
        jmax = (qtrunc - 1) // a
        if jmax * d >= f.trunc:
            raise SeriesError(
                f"f^[{m}] to O(q^{qtrunc}) needs f^({a}) through q^{jmax * d}; it stops at q^{f.trunc - 1}")
        for j in range(-1 if d == 1 else 0, jmax + 1):
            c = f[j * d]
            if c:
                terms[a * j] = terms.get(a * j, 0) + c / a
    return LaurentSeries.from_dict(terms, qtrunc)


def assemble_biexp(fam: ReplicateFamily, pmax: int, qtrunc: int) -> BiSeries:
    """exp(-sum_{m=1}^{pmax} p^m f^[m]) with every row known to O(q^qtrunc)."""
    if pmax < 1:
        raise ValueError("pmax must be at least 1")
    rows = [LaurentSeries.zero(qtrunc + pmax)]
    for m in range(1, pmax + 1):
        # row m only meets rows of p-degree <= pmax - m, whose q-order is >= m - pmax
        rows.append(-bracket_series(fam, m, qtrunc + pmax - m))
    return BiSeries(exp_rows(rows), trunc=qtrunc)


def coprime_predicate(a: int, b: int, exponent: int) -> bool:
    """True when (a-1) b is nonzero and coprime to the exponent."""
    x = (a - 1) * b
    return x != 0 and gcd(x, exponent) == 1


def check_quasirep(fam: ReplicateFamily, N: int, pmax: int, qtrunc: int) -> QuasiRepReport:
    if pmax < 2:
        raise ValueError("pmax must be at least 2")
    e = assemble_biexp(fam, pmax, qtrunc)
    violations = []
    for a in range(pmax + 1):
        row = e.rows[a]
        for b in range(min(row.valuation, -pmax), qtrunc):
            if coprime_predicate(a, b, N) and row[b]:
                violations.append((a, b, row[b]))
    return QuasiRepReport(N, pmax, qtrunc, tuple(violations), fam.label, fam.assumptions)


def _j_family(pmax: int, qtrunc: int) -> ReplicateFamily:
    return family_from_power_map("1A", {1: "1A"}, trunc=required_trunc(pmax, qtrunc))


def knz_mismatches(pmax: int, qtrunc: int) -> list[tuple[int, int, Fraction, Fraction]]:
    """(a, b, lhs, rhs) where exp(-sum p^m J^[m]) differs from p (J(p) - J(q))."""
    lhs = assemble_biexp(_j_family(pmax, qtrunc), pmax, qtrunc)
    f = hauptmodul("1A", max(qtrunc, pmax))
    out = []
    for a in range(pmax + 1):
        for b in range(-pmax, qtrunc):
            if a == 0:
                rhs = Fraction(1 if b == 0 else 0)
            elif a == 1:
                rhs = -f[b]
            else:
                rhs = f[a - 1] if b == 0 else Fraction(0)
            if lhs.coefficient(a, b) != rhs:
                out.append((a, b, lhs.coefficient(a, b), rhs))
    return out


def knz_high_vanishing(pmax: int, qtrunc: int) -> list[tuple[int, int, Fraction]]:
    """Nonzero p^a q^b coefficients with a != 1 and b >= 1 (there should be none)."""
    lhs = assemble_biexp(_j_family(pmax, qtrunc), pmax, qtrunc)
    return [(a, b, lhs.coefficient(a, b))
            for a in range(pmax + 1) if a != 1
            for b in range(1, qtrunc) if lhs.coefficient(a, b)]


def knz_check(pmax: int, qtrunc: int) -> bool:
    if pmax < 2:
        raise ValueError("pmax must be at least 2")
    return not knz_mismatches(pmax, qtrunc)


def recursion_probe_4B(X: LaurentSeries, kmax: int) -> list[tuple[int, Fraction]]:
    """Residuals of x_{4k+3} = x_{2k+3} + sum_{i=1}^k x_{i+1} x_{2k+2-i}, x_n = [q^(n-1)] X."""
    if X.order != -1:
        raise ValueError("X must have valuation -1")
    if 4 * kmax + 2 >= X.trunc:
        raise SeriesError(f"kmax={kmax} needs X through q^{4 * kmax + 2}")

    def x(n):
        return X[n - 1]

    out = []
    for k in range(1, kmax + 1):
        rhs = x(2 * k + 3) + sum(x(i + 1) * x(2 * k + 2 - i) for i in range(1, k + 1))
        out.append((k, x(4 * k + 3) - rhs))
    return out


def sandwich_violations_4B(X: LaurentSeries) -> list[int]:
    """Exponents where X leaves the band between T_4B and T_2A."""
    lo = hauptmodul("4B", X.trunc)
    hi = hauptmodul("2A", X.trunc)
    return [n for n in range(1, X.trunc) if not lo[n] <= X[n] <= hi[n]]


def tate_family_4A(pmax: int, qtrunc: int) -> ReplicateFamily:
    from .greenring import builtin_ring
    from .homfinder import enumerate_characters

    dec = decompose_4A(required_trunc(pmax, qtrunc))
    tate = next(c for c in enumerate_characters(builtin_ring("Z4")) if c.name == "tate")
    return family_from_adams(dec, tate)


PHI_NAMES = {
    "1A": ("rank",),
    "2A": ("rank", "trace-g"),
    "2B": ("rank", "trace-g"),
    "3A": ("rank", "trace-g"),
    "4A": ("rank", "trace-g", "trace-g2", "tate"),
    "4B": ("rank", "trace-g", "trace-g2"),
    "6A": ("rank", "trace-g", "trace-g2", "trace-g3"),
}


def family_for(group: str, phi: str, pmax: int, qtrunc: int) -> ReplicateFamily:
    """Named family for a group: rank, trace-g, trace-gK or (for 4A) tate."""
    if group not in PHI_NAMES:
        raise UnknownClassError(group)
    if phi not in PHI_NAMES[group]:
        raise ValueError(f"{group} has no family {phi!r}; choose from {', '.join(PHI_NAMES[group])}")
    trunc = required_trunc(pmax, qtrunc)
    if phi == "tate":
        return tate_family_4A(pmax, qtrunc)
    order = power_map(group).order
    if phi == "rank":
        cmap = {k: "1A" for k in range(1, order + 1)}
    else:
        cmap = trace_class_map(group, int(phi[len("trace-g"):] or 1))
    limit = _max_trunc(cmap.values())
    if limit is not None and limit < trunc:
        raise SeriesError(f"pmax={pmax}, qmax={qtrunc} needs series through q^{trunc - 1}; "
                          f"embedded data stops at q^{limit - 1}")
    fam = family_from_power_map(group, cmap, trunc=trunc)
    return ReplicateFamily(fam.period, fam.members, f"{group}:{phi}", fam.assumptions)
