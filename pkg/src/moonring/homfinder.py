"""Enumerate the integer-valued ring homomorphisms ``GreenRing -> C``.

phi(e_i) must be an eigenvalue of multiplication by e_i, so the candidates
for each coordinate are the integer roots of the characteristic polynomial
of that multiplication matrix.  A depth-first search over the candidates,
pruned by every structure-constant relation whose variables are already
fixed, yields the complete list.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .greenring import GreenRing, RingElement, RingMismatchError

__all__ = [
    "Character",
    "charpoly",
    "integer_roots",
    "enumerate_characters",
    "apply",
    "is_multiplicative",
    "rational_rank",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Character:
    ring: GreenRing
    values: tuple[int, ...]
    name: str | None = None
    tag: str | None = None
    power: int | None = None  # set when the character is the trace of g^power

    def __call__(self, x: RingElement) -> int:
        return apply(self, x)

    def to_json(self) -> dict:
        out = {"values": list(self.values)}
        if self.name:
            out["name"] = self.name
        if self.tag:
            out["tag"] = self.tag
        if self.power is not None:
            out["power"] = self.power
        return out

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.ring.name == other.ring.name and self.values == other.values

    def __hash__(self):
        return hash((self.ring.name, self.values))


def charpoly(m: list[list[int]]) -> list[int]:
    """Characteristic polynomial det(xI - M), highest degree first.

    Berkowitz's algorithm: division free, so exact over the integers.
    """
    n = len(m)
    if n == 0:
        return [1]
    # c holds the charpoly of the leading r x r block, highest degree first
    c = [1, -m[0][0]]
    for r in range(1, n):
        # Toeplitz column for the block bordered by row/column r
        R = m[r][:r]
        S = [m[i][r] for i in range(r)]
        A = [row[:r] for row in m[:r]]
        a = m[r][r]
        col = [1, -a]
        v = S[:]
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(A[i][j] * v[j] for j in range(r)) for i in range(r)]
        # multiply the lower-triangular Toeplitz matrix (first column col) by c
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * c[j] for j in range(min(i, len(c) - 1) + 1)))
        c = new
    return c


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _eval(poly: list[int], x: int) -> int:
    acc = 0
    for c in poly:
        acc = acc * x + c
    return acc


def _deflate(poly: list[int], root: int) -> list[int]:
    out = [poly[0]]
    for c in poly[1:-1]:
        out.append(c + out[-1] * root)
    return out


def integer_roots(poly: list[int]) -> tuple[list[int], list[int]]:
    """Distinct integer roots of a monic integer polynomial, and the leftover factor."""
    roots = set()
    p = list(poly)
    while len(p) > 1 and p[-1] == 0:
        roots.add(0)
        p = p[:-1]
    changed = True
    while changed and len(p) > 1:
        changed = False
        for d in _divisors(p[-1]):
            for r in (d, -d):
                if _eval(p, r) == 0:
                    roots.add(r)
                    p = _deflate(p, r)
                    changed = True
                    break
            if changed:
                break
    return sorted(roots), p


def is_multiplicative(ring: GreenRing, values) -> bool:
    c = ring.structconst
    if values[ring.unit] != 1:
        return False
    for i in range(ring.dim):
        for j in range(i, ring.dim):
            if values[i] * values[j] != sum(ck * v for ck, v in zip(c[i][j], values)):
                return False
    return True


def _constraints(ring: GreenRing):
    """Each relation phi_i phi_j = sum_k c_ijk phi_k, keyed by the last variable it needs."""
    c = ring.structconst
    by_last = [[] for _ in range(ring.dim)]
    for i in range(ring.dim):
        for j in range(i, ring.dim):
            support = {i, j} | {k for k, v in enumerate(c[i][j]) if v}
            by_last[max(support)].append((i, j, c[i][j]))
    return by_last


def enumerate_characters(ring: GreenRing) -> list[Character]:
    """All integer-valued characters of the ring, in a deterministic order."""
    candidates = []
    for i in range(ring.dim):
        if i == ring.unit:
            candidates.append([1])
            continue
        roots, rest = integer_roots(charpoly(ring.multiplication_matrix(i)))
        if len(rest) > 1:
            log.debug("%s: multiplication by %s has a degree-%d factor without integer roots",
                      ring.name, ring.labels[i], len(rest) - 1)
        candidates.append(roots)
    by_last = _constraints(ring)
    found = []
    values = [0] * ring.dim

    def search(pos: int):
        if pos == ring.dim:
            found.append(tuple(values))
            return
        for v in candidates[pos]:
            values[pos] = v
            if all(values[i] * values[j] == sum(ck * values[k] for k, ck in enumerate(cij) if ck)
                   for i, j, cij in by_last[pos]):
                search(pos + 1)
        values[pos] = 0

    search(0)
    # post-hoc check, independent of the search order
    found = [v for v in found if is_multiplicative(ring, v)]
    known = {tuple(ch["values"]): ch for ch in ring.characters}
    order = {tuple(ch["values"]): n for n, ch in enumerate(ring.characters)}
    found.sort(key=lambda v: (order.get(v, len(order)), [-x for x in v]))
    out = []
    for v in found:
        meta = known.get(v, {})
        out.append(Character(ring, v, meta.get("name"), meta.get("tag"), meta.get("power")))
    return out


def apply(phi: Character, x: RingElement) -> int:
    if phi.ring.name != x.ring.name:
        raise RingMismatchError(f"character of {phi.ring.name} applied to an element of {x.ring.name}")
    return sum(a * b for a, b in zip(phi.values, x.coeffs))


def rational_rank(rows) -> int:
    """Rank over Q of a list of integer vectors (exact elimination)."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank
