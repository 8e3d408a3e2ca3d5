"""Multiplicities of indecomposable lattices in the graded Moonshine module.

Grade ``n`` is the ``q^(n-1)`` coefficient, so ``mults[0]`` is the vacuum
and ``mults[1]`` is always zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactseries import LaurentSeries
from .greenring import GreenRing, RingElement, builtin_ring, rank_of
from .homfinder import Character, apply
from .modfun import hauptmodul

__all__ = [
    "DecompositionError",
    "InfeasibleError",
    "Decomposition",
    "FeasibilityInterval",
    "decompose_4A",
    "d_series_4B",
    "feasibility_6A",
    "solve_parametric",
    "trace_check",
    "series_of",
    "multiplicities_6A",
    "rank_consistent",
]

# rows give (a, d, c) as combinations of (T_1A, T_2B, T_4A)
MATRIX_4A = (
    (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(1, 4), Fraction(-1, 2)),
    (Fraction(0), Fraction(-1, 2), Fraction(1, 2)),
)
BASIS_4A = ("A", "D", "CA")

# rows: rank, tr g^3, tr g^2, tr g, twisted on (G1, G12, G13, G123, D)
SYSTEM_6A = (
    (1, 2, 3, 4, 6),
    (1, 0, 3, 2, 0),
    (1, 2, 0, 1, 0),
    (1, 0, 0, -1, 0),
    (1, 0, 0, 1, 0),
)
BASIS_6A = ("G1", "G12", "G13", "G123", "D")


class DecompositionError(ArithmeticError):
    pass


class InfeasibleError(DecompositionError):
    pass


@dataclass(frozen=True)
class Decomposition:
    ring: GreenRing
    nmax: int
    mults: tuple[RingElement, ...]

    def to_rows(self) -> list[dict]:
        return [{"n": n, "multiplicities": m.as_dict()} for n, m in enumerate(self.mults)]


@dataclass(frozen=True)
class FeasibilityInterval:
    n: int
    lower: int
    upper: int
    stride: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise InfeasibleError(f"empty interval at grade {self.n}")

    def __contains__(self, x: int) -> bool:
        return self.lower <= x <= self.upper and (x - self.lower) % self.stride == 0

    def values(self) -> range:
        return range(self.lower, self.upper + 1, self.stride)

    def to_json(self) -> dict:
        return {"n": self.n, "lower": self.lower, "upper": self.upper, "stride": self.stride}


def _grade_coeff(series: LaurentSeries, n: int) -> int:
    c = series[n - 1]
    if c.denominator != 1:
        raise DecompositionError(f"non-integer coefficient at q^{n - 1}")
    return c.numerator


def decompose_4A(nmax: int) -> Decomposition:
    """V_n = a_n A + d_n D + c_n C^A for a 4A element, grades 0..nmax."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    ring = builtin_ring("Z4")
    ts = [hauptmodul(c, nmax) for c in ("1A", "2B", "4A")]
    idx = [ring.label_index(b) for b in BASIS_4A]
    mults = []
    for n in range(nmax + 1):
        t = [s[n - 1] for s in ts]
        v = [0] * ring.dim
        for row, i, lab in zip(MATRIX_4A, idx, BASIS_4A):
            m = sum(r * x for r, x in zip(row, t))
            if m.denominator != 1 or m < 0:
                raise DecompositionError(f"multiplicity of {lab} at grade {n} is {m}")
            v[i] = m.numerator
        mults.append(RingElement(ring, v))
    return Decomposition(ring, nmax, tuple(mults))


def d_series_4B(nmax: int) -> LaurentSeries:
    """sum d_n q^(n-1): multiplicity of the group ring D for a 4B element."""
    s = (hauptmodul("1A", nmax) - hauptmodul("2A", nmax)) / 4
    if not s.is_integral():
        bad = next(n for n, c in s.items() if c.denominator != 1)
        raise DecompositionError(f"d-series has a non-integer coefficient at q^{bad}")
    return s


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Exact Gauss-Jordan solve of a square nonsingular system."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(x)] for row, x in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise DecompositionError("singular system")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _congruence(a: int, b: int, mod: int):
    """Solutions of a x = b (mod mod) as (residue, modulus), or None."""
    g = gcd(a, mod)
    if b % g:
        return None
    mod2 = mod // g
    if mod2 == 1:
        return 0, 1
    return (b // g) * pow(a // g, -1, mod2) % mod2, mod2


def _crt(r1: int, m1: int, r2: int, m2: int):
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    l = m1 // g * m2
    k = ((r2 - r1) // g) * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % l, l


def solve_parametric(system, known: list[int], n: int = 0) -> tuple[FeasibilityInterval, list, list]:
    """Integer X making system . m = (known..., X) solvable in non-negative integers.

    Returns the interval of feasible X together with the affine solution
    m = u + X v.
    """
    u = _solve(system, list(known) + [0])
    v = [x - y for x, y in zip(_solve(system, list(known) + [1]), u)]
    residue, modulus = 0, 1
    lo, hi = None, None
    for ui, vi in zip(u, v):
        den = ui.denominator * vi.denominator // gcd(ui.denominator, vi.denominator)
        # den*vi X = -den*ui (mod den)
        cong = _congruence(int(vi * den) % den, int(-ui * den) % den, den)
        if cong is None:
            raise InfeasibleError(f"grade {n}: no integer solution")
        merged = _crt(residue, modulus, *cong)
        if merged is None:
            raise InfeasibleError(f"grade {n}: incompatible congruences")
        residue, modulus = merged
        # ui + vi X >= 0
        if vi > 0:
            bound = -ui / vi
            b = -((-bound.numerator) // bound.denominator)  # ceil
            lo = b if lo is None else max(lo, b)
        elif vi < 0:
            bound = -ui / vi
            b = bound.numerator // bound.denominator  # floor
            hi = b if hi is None else min(hi, b)
        elif ui < 0:
            raise InfeasibleError(f"grade {n}: a multiplicity is negative for every X")
    if lo is None or hi is None:
        raise DecompositionError(f"grade {n}: feasible set is unbounded")
    first = lo + (residue - lo) % modulus
    last = hi - (hi - residue) % modulus
    if first > last:
        raise InfeasibleError(f"grade {n}: no feasible value in [{lo}, {hi}]")
    return FeasibilityInterval(n, first, last, modulus), u, v


def feasibility_6A(n: int) -> FeasibilityInterval:
    """Feasible values of the unknown twisted-trace coefficient at grade n."""
    if n < 2:
        raise ValueError("feasibility_6A needs n >= 2")
    known = [_grade_coeff(hauptmodul(c, n), n) for c in ("1A", "2A", "3A", "6A")]
    interval, _, _ = solve_parametric(SYSTEM_6A, known, n)
    return interval


def multiplicities_6A(n: int, x: int) -> tuple[int, ...]:
    """(m_1, m_12, m_13, m_123, m_D) at grade n when the twisted trace equals x."""
    known = [_grade_coeff(hauptmodul(c, n), n) for c in ("1A", "2A", "3A", "6A")]
    sol = _solve(SYSTEM_6A, known + [x])
    if any(s.denominator != 1 or s < 0 for s in sol):
        raise InfeasibleError(f"grade {n}: X = {x} gives multiplicities {sol}")
    return tuple(s.numerator for s in sol)


def series_of(dec: Decomposition, phi: Character) -> LaurentSeries:
    """sum phi(mults[n]) q^(n-1) over the computed grades."""
    return LaurentSeries(-1, [apply(phi, m) for m in dec.mults], dec.nmax)


def trace_check(dec: Decomposition, phi: Character, class_of_phi: str) -> bool:
    target = hauptmodul(class_of_phi, dec.nmax)
    return series_of(dec, phi) == target


def rank_consistent(dec: Decomposition) -> bool:
    t = hauptmodul("1A", dec.nmax)
    return all(rank_of(m) == t[n - 1] for n, m in enumerate(dec.mults))
