"""q-expansions of eta quotients, j, and the McKay-Thompson series we need.

Catalog entries are normalized Hauptmoduln ``q^-1 + 0 + O(q)``.  The classes
1A, 2A, 2B, 3A and 4A are computed here from eta quotients; 4B and 6A are
read from the embedded coefficient tables (exponents -1..200).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import _data
from .exactseries import LaurentSeries, SeriesError, dilate

__all__ = [
    "CLASSES",
    "UnknownClassError",
    "HauptmodulCatalog",
    "PowerMap",
    "euler_function",
    "eta_quotient",
    "eta_pow24",
    "eisenstein_e4",
    "j_series",
    "hauptmodul",
    "formula_series",
    "embedded_series",
    "catalog",
    "power_map",
]

CLASSES = ("1A", "2A", "2B", "3A", "4A", "4B", "6A")
EMBEDDED_CLASSES = ("4B", "6A")

# g^k lies in POWER_CLASSES[g][gcd(k, order)]
POWER_CLASSES = {
    "1A": {1: "1A"},
    "2A": {1: "2A", 2: "1A"},
    "2B": {1: "2B", 2: "1A"},
    "3A": {1: "3A", 3: "1A"},
    "4A": {1: "4A", 2: "2B", 4: "1A"},
    "4B": {1: "4B", 2: "2A", 4: "1A"},
    "6A": {1: "6A", 2: "3A", 3: "2A", 6: "1A"},
}


class UnknownClassError(KeyError):
    pass


def _check_class(label: str):
    if label not in CLASSES:
        raise UnknownClassError(f"unknown class {label!r}; expected one of {', '.join(CLASSES)}")


def euler_function(trunc: int) -> LaurentSeries:
    """prod_{n>=1} (1 - q^n) via the pentagonal number theorem."""
    terms = {}
    k = 0
    while True:
        hit = False
        for m in ((k, -k) if k else (0,)):
            e = m * (3 * m - 1) // 2
            if e < trunc:
                terms[e] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return LaurentSeries.from_dict(terms, max(trunc, 0)) if trunc > 0 else LaurentSeries.zero(trunc)


def eta_quotient(exponents: dict[int, int], trunc: int) -> LaurentSeries:
    """prod_d eta(d tau)^{r_d}; the total weight sum(d r_d) must be divisible by 24."""
    weight = sum(d * r for d, r in exponents.items())
    if weight % 24:
        raise SeriesError(f"eta quotient {exponents} has fractional q-exponent {weight}/24")
    shift = weight // 24
    n = trunc - shift
    if n <= 0:
        return LaurentSeries.zero(trunc)
    unit = LaurentSeries.constant(1, n)
    for d, r in sorted(exponents.items()):
        if r:
            unit = unit * dilate(euler_function(-(-n // d)), d).truncate(n) ** r
    return LaurentSeries(shift, unit.coeffs, trunc)


def eta_pow24(trunc: int) -> LaurentSeries:
    """Delta = q prod (1 - q^n)^24."""
    if trunc < 2:
        raise SeriesError("eta_pow24 needs trunc >= 2")
    return eta_quotient({1: 24}, trunc)


def eisenstein_e4(trunc: int) -> LaurentSeries:
    sigma3 = [0] * max(trunc, 1)
    for d in range(1, trunc):
        for m in range(d, trunc, d):
            sigma3[m] += d ** 3
    return LaurentSeries(0, [1] + [240 * s for s in sigma3[1:]], trunc)


@lru_cache(maxsize=None)
def _j(trunc: int) -> LaurentSeries:
    # E4^3 needs one more term than j, Delta two more
    j = eisenstein_e4(trunc + 1) ** 3 / eta_pow24(trunc + 2)
    return j.truncate(trunc)


def j_series(trunc: int) -> LaurentSeries:
    """Klein's j = E4^3 / Delta, constant 744 included."""
    if trunc < 0:
        raise SeriesError("j_series needs trunc >= 0")
    return _j(trunc)


def _fricke(exponents: dict[int, int], scale: int, const: int, trunc: int) -> LaurentSeries:
    """A + scale / A + const with A an eta quotient of order -1."""
    a = eta_quotient(exponents, trunc)
    out = a + const
    if scale:
        out = out + eta_quotient({d: -r for d, r in exponents.items()}, trunc) * scale
    return out


_FORMULAS = {
    "1A": lambda t: j_series(t) - 744,
    "2B": lambda t: _fricke({1: 24, 2: -24}, 0, 24, t),
    "4A": lambda t: eta_quotient({2: 48, 1: -24, 4: -24}, t) - 24,
    "2A": lambda t: _fricke({1: 24, 2: -24}, 4096, 24, t),
    "3A": lambda t: _fricke({1: 12, 3: -12}, 729, 12, t),
    # reference routes for the embedded classes, used only to re-validate the tables
    "4B": lambda t: _fricke({2: 12, 4: -12}, 64, 0, t),
    "6A": lambda t: _fricke({1: 6, 3: 6, 2: -6, 6: -6}, 64, 6, t),
}


def formula_series(label: str, trunc: int) -> LaurentSeries:
    """The eta-quotient expression for a class (for 4B/6A: a reference only)."""
    _check_class(label)
    # computed in blocks of 64 so nearby truncations share one expansion
    return _formula_block(label, -(-max(trunc, 1) // 64) * 64).truncate(trunc)


@lru_cache(maxsize=None)
def _formula_block(label: str, trunc: int) -> LaurentSeries:
    return _FORMULAS[label](trunc).truncate(trunc)


def embedded_series(label: str) -> LaurentSeries:
    """Coefficient table shipped with the package, exponents -1..200."""
    _check_class(label)
    return _load_table(str(_data.series_file(label)))


@lru_cache(maxsize=None)
def _load_table(path: str) -> LaurentSeries:
    terms = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            terms[int(row["n"])] = Fraction(int(row["coefficient"]))
    top = max(terms)
    if sorted(terms) != list(range(min(terms), top + 1)):
        raise ValueError(f"{path}: exponents are not contiguous")
    return LaurentSeries.from_dict(terms, top + 1)


def hauptmodul(label: str, trunc: int) -> LaurentSeries:
    """Normalized McKay-Thompson series T_label to O(q^trunc)."""
    _check_class(label)
    if label in EMBEDDED_CLASSES:
        data = embedded_series(label)
        if trunc > data.trunc:
            raise SeriesError(
                f"embedded table for {label} stops at q^{data.trunc - 1}; requested O(q^{trunc})")
        return data.truncate(trunc)
    return formula_series(label, trunc)


@dataclass(frozen=True)
class HauptmodulCatalog:
    trunc: int
    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __getitem__(self, label: str) -> LaurentSeries:
        _check_class(label)
        return self.entries[label]

    def validate(self):
        for label, s in self.entries.items():
            if s.order != -1 or s[-1] != 1 or s[0] != 0:
                raise ValueError(f"catalog entry {label} is not normalized as q^-1 + 0 + O(q)")
            if not s.is_integral():
                raise ValueError(f"catalog entry {label} has non-integer coefficients")
        return self


def catalog(trunc: int) -> HauptmodulCatalog:
    entries = {c: hauptmodul(c, trunc) for c in CLASSES}
    prov = {c: ("embedded-data" if c in EMBEDDED_CLASSES else "eta-formula") for c in CLASSES}
    return HauptmodulCatalog(trunc, entries, prov).validate()


@dataclass(frozen=True)
class PowerMap:
    """Class of g^k for a generator g of a cyclic subgroup."""

    group: str
    order: int
    by_gcd: dict

    def at(self, k: int) -> str:
        return self.by_gcd[gcd(k, self.order)]

    def as_dict(self) -> dict:
        return {k: self.at(k) for k in range(1, self.order + 1)}


def power_map(group: str) -> PowerMap:
    if group not in POWER_CLASSES:
        raise UnknownClassError(f"unsupported group {group!r}")
    table = POWER_CLASSES[group]
    return PowerMap(group, max(table), dict(table))
