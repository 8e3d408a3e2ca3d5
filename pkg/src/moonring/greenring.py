"""Finite-basis Green rings with integer structure constants.

A :class:`GreenRing` is loaded from a JSON table and checked on construction:
commutativity, unit, multiplicativity of rank, associativity on all basis
triples, exterior-power ranks, and that every registered restriction is a
ring homomorphism compatible with exterior powers.

Adams operations are computed from the exterior table by the Newton
recursion and extended additively to virtual elements.
"""
from __future__ import annotations

import json
import re
from functools import lru_cache
from itertools import product
from math import comb, gcd
from pathlib import Path
from typing import Iterable, Mapping

from . import _data

__all__ = [
    "RingError",
    "TableError",
    "RingMismatchError",
    "MissingExteriorData",
    "AdamsUnavailable",
    "GreenRing",
    "RingElement",
    "BUILTIN_RINGS",
    "builtin_ring",
    "load_ring",
    "tensor",
    "exterior_power",
    "adams",
    "restrict",
    "rank_of",
]

BUILTIN_RINGS = ("Z2", "Z3", "Z4", "Z6_6A")


class RingError(ValueError):
    pass


class TableError(RingError):
    """A ring table violates one of the Green-ring invariants."""


class RingMismatchError(RingError):
    pass


class MissingExteriorData(RingError):
    pass


class AdamsUnavailable(RingError):
    pass


class RingElement:
    """Integer combination of the basis of a :class:`GreenRing`."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "GreenRing", coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != ring.dim:
            raise RingError(f"{ring.name} has {ring.dim} basis elements, got {len(coeffs)} coefficients")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _same(self, other: "RingElement"):
        if not isinstance(other, RingElement):
            raise TypeError(f"expected a RingElement, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring.name != self.ring.name:
            raise RingMismatchError(f"elements of {self.ring.name} and {other.ring.name} do not combine")

    def __add__(self, other):
        self._same(other)
        return RingElement(self.ring, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return RingElement(self.ring, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RingElement(self.ring, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ring, (other * a for a in self.coeffs))
        return tensor(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.name == other.ring.name and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.name, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_module(self) -> bool:
        """True for actual (non-virtual) modules."""
        return all(c >= 0 for c in self.coeffs)

    def as_dict(self) -> dict:
        return {lab: c for lab, c in zip(self.ring.labels, self.coeffs) if c}

    def __str__(self):
        parts = []
        for lab, c in zip(self.ring.labels, self.coeffs):
            if not c:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}{lab}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"RingElement({self.ring.name}: {self})"


class GreenRing:
    """Commutative ring on a finite basis of indecomposable lattices."""

    def __init__(
        self,
        name: str,
        labels: list[str],
        unit: str,
        ranks: list[int],
        products: Mapping[str, Mapping[str, int]],
        exterior: Mapping[str, Mapping[str, int]] | None = None,
        restrictions: Mapping[str, Mapping[str, Mapping[str, int]]] | None = None,
        characters: list[dict] | None = None,
        adams_units_mod: int | None = None,
        description: str = "",
        resolver=None,
    ):
        self.name = name
        self.description = description
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise TableError(f"{name}: duplicate basis labels")
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        if unit not in self.index:
            raise TableError(f"{name}: unit {unit!r} is not a basis label")
        self.unit = self.index[unit]
        if len(ranks) != self.dim:
            raise TableError(f"{name}: {len(ranks)} ranks for {self.dim} basis elements")
        self.ranks = tuple(int(r) for r in ranks)
        self.adams_units_mod = adams_units_mod
        self.characters = list(characters or [])
        self._raw = {
            "products": {k: dict(v) for k, v in products.items()},
            "exterior": {k: dict(v) for k, v in (exterior or {}).items()},
            "restrictions": {t: {b: dict(e) for b, e in m.items()} for t, m in (restrictions or {}).items()},
        }
        self.structconst = self._build_products(products)
        self.exterior = self._build_exterior(exterior or {})
        self._adams_cache: dict[int, list[RingElement]] = {}
        self.restrictions: dict[str, tuple[GreenRing, tuple[RingElement, ...]]] = {}
        resolver = resolver or builtin_ring
        for target_name, table in (restrictions or {}).items():
            target = resolver(target_name)
            images = tuple(target.element(table[lab]) if lab in table else None for lab in self.labels)
            if any(im is None for im in images):
                missing = [lab for lab, im in zip(self.labels, images) if im is None]
                raise TableError(f"{name}: restriction to {target_name} misses {missing}")
            self.restrictions[target_name] = (target, images)
        self.validate()

    # table parsing
    def _vec(self, terms: Mapping[str, int]) -> tuple[int, ...]:
        v = [0] * self.dim
        for lab, c in terms.items():
            if lab not in self.index:
                raise TableError(f"{self.name}: unknown label {lab!r} in table")
            v[self.index[lab]] += int(c)
        return tuple(v)

    def _pair(self, key: str) -> tuple[str, str]:
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2:
            raise TableError(f"{self.name}: malformed table key {key!r}")
        return parts[0], parts[1]

    def _build_products(self, products):
        c = [[None] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            e = [0] * self.dim
            e[i] = 1
            c[self.unit][i] = c[i][self.unit] = tuple(e)
        for key, terms in products.items():
            a, b = self._pair(key)
            if a not in self.index or b not in self.index:
                raise TableError(f"{self.name}: unknown label in product key {key!r}")
            i, j = self.index[a], self.index[b]
            v = self._vec(terms)
            for x, y in ((i, j), (j, i)):
                if c[x][y] is not None and c[x][y] != v:
                    raise TableError(f"{self.name}: conflicting entries for {a}*{b}")
                c[x][y] = v
        for i, j in product(range(self.dim), repeat=2):
            if c[i][j] is None:
                raise TableError(f"{self.name}: product {self.labels[i]}*{self.labels[j]} missing")
        return tuple(tuple(row) for row in c)

    def _build_exterior(self, exterior):
        table = {}
        for key, terms in exterior.items():
            k, lab = self._pair(key)
            if lab not in self.index:
                raise TableError(f"{self.name}: unknown label in exterior key {key!r}")
            table[(int(k), self.index[lab])] = self._vec(terms)
        return table

    # validation
    def validate(self):
        d, c, r = self.dim, self.structconst, self.ranks
        for i, j in product(range(d), repeat=2):
            if c[i][j] != c[j][i]:
                raise TableError(f"{self.name}: product table is not symmetric at {self.labels[i]},{self.labels[j]}")
            if r[i] * r[j] != sum(ck * rk for ck, rk in zip(c[i][j], r)):
                raise TableError(f"{self.name}: rank is not multiplicative on {self.labels[i]}*{self.labels[j]}")
            if any(x < 0 for x in c[i][j]):
                raise TableError(f"{self.name}: negative structure constant in {self.labels[i]}*{self.labels[j]}")
        basis = [self.basis(i) for i in range(d)]
        for i, j, k in product(range(d), repeat=3):
            if (basis[i] * basis[j]) * basis[k] != basis[i] * (basis[j] * basis[k]):
                raise TableError(
                    f"{self.name}: product is not associative on "
                    f"({self.labels[i]},{self.labels[j]},{self.labels[k]})")
        for (k, i), v in self.exterior.items():
            if k < 2 or k > r[i]:
                raise TableError(f"{self.name}: exterior entry Lambda^{k}({self.labels[i]}) outside 2..rank")
            if any(x < 0 for x in v):
                raise TableError(f"{self.name}: Lambda^{k}({self.labels[i]}) is not a module")
            if sum(x * y for x, y in zip(v, r)) != comb(r[i], k):
                raise TableError(f"{self.name}: Lambda^{k}({self.labels[i]}) has the wrong rank")
        for target_name, (target, images) in self.restrictions.items():
            if images[self.unit] != target.one():
                raise TableError(f"{self.name}: restriction to {target_name} does not preserve the unit")
            for i in range(d):
                if rank_of(images[i]) != r[i]:
                    raise TableError(f"{self.name}: restriction of {self.labels[i]} changes rank")
            for i, j in product(range(d), repeat=2):
                if self.restrict(basis[i] * basis[j], target) != images[i] * images[j]:
                    raise TableError(
                        f"{self.name}: restriction to {target_name} is not multiplicative on "
                        f"{self.labels[i]}*{self.labels[j]}")
            for (k, i), v in self.exterior.items():
                try:
                    expected = exterior_power(k, images[i])
                except MissingExteriorData:
                    continue
                if self.restrict(RingElement(self, v), target) != expected:
                    raise TableError(
                        f"{self.name}: Lambda^{k}({self.labels[i]}) does not restrict to "
                        f"Lambda^{k} of its restriction in {target_name}")
        return self

    # elements
    def basis(self, i: int | str) -> RingElement:
        if isinstance(i, str):
            i = self.label_index(i)
        v = [0] * self.dim
        v[i] = 1
        return RingElement(self, v)

    def label_index(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise RingError(f"{self.name} has no basis element {label!r}; labels: {', '.join(self.labels)}") from None

    def one(self) -> RingElement:
        return self.basis(self.unit)

    def zero(self) -> RingElement:
        return RingElement(self, [0] * self.dim)

    def element(self, terms: Mapping[str, int] | str | Iterable[int]) -> RingElement:
        if isinstance(terms, str):
            return self.parse(terms)
        if isinstance(terms, Mapping):
            v = [0] * self.dim
            for lab, c in terms.items():
                v[self.label_index(lab)] += int(c)
            return RingElement(self, v)
        return RingElement(self, terms)

    _TERM = re.compile(r"^(\d*)\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)$")

    def parse(self, text: str) -> RingElement:
        """Parse expressions like ``"2E - 2A"`` or ``"C + D"``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return self.zero()
        if s[0] not in "+-":
            s = "+" + s
        out = self.zero()
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = self._TERM.match(body)
            if not m:
                raise RingError(f"cannot parse term {body!r} of {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            out = out + self.basis(m.group(2)) * (c if sign == "+" else -c)
        if "".join(re.findall(r"[+-][^+-]+", s)) != s:
            raise RingError(f"cannot parse {text!r}")
        return out

    def multiplication_matrix(self, i: int) -> list[list[int]]:
        """Integer matrix M with (e_i * x) = M x in the basis coordinates."""
        c = self.structconst
        return [[c[i][j][k] for j in range(self.dim)] for k in range(self.dim)]

    def character(self, name: str) -> dict:
        for ch in self.characters:
            if ch["name"] == name:
                return ch
        raise RingError(f"{self.name} has no character named {name!r}")

    def restrict(self, x: RingElement, target: "GreenRing | str") -> RingElement:
        return restrict(x, target)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "description": self.description,
            "labels": list(self.labels),
            "unit": self.labels[self.unit],
            "ranks": list(self.ranks),
            "products": self._raw["products"],
            "exterior": self._raw["exterior"],
            "restrictions": self._raw["restrictions"],
            "characters": self.characters,
        }
        if self.adams_units_mod:
            out["adams_units_mod"] = self.adams_units_mod
        return out

    def __repr__(self):
        return f"GreenRing({self.name}, basis={list(self.labels)})"


def _ring_from_json(obj: dict, resolver=None) -> GreenRing:
    return GreenRing(
        name=obj["name"],
        labels=obj["labels"],
        unit=obj["unit"],
        ranks=obj["ranks"],
        products=obj.get("products", {}),
        exterior=obj.get("exterior", {}),
        restrictions=obj.get("restrictions", {}),
        characters=obj.get("characters", []),
        adams_units_mod=obj.get("adams_units_mod"),
        description=obj.get("description", ""),
        resolver=resolver,
    )


def load_ring(path: str | Path, resolver=None) -> GreenRing:
    """Load and validate a ring table from a JSON file."""
    with open(path) as fh:
        return _ring_from_json(json.load(fh), resolver)


@lru_cache(maxsize=None)
def _builtin(path: str) -> GreenRing:
    return load_ring(path)


def builtin_ring(name: str) -> GreenRing:
    if name not in BUILTIN_RINGS:
        raise RingError(f"unknown ring {name!r}; built-in rings: {', '.join(BUILTIN_RINGS)}")
    return _builtin(str(_data.ring_file(name)))


def tensor(x: RingElement, y: RingElement) -> RingElement:
    x._same(y)
    ring = x.ring
    c = ring.structconst
    out = [0] * ring.dim
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, b in enumerate(y.coeffs):
            if not b:
                continue
            ab = a * b
            for k, v in enumerate(c[i][j]):
                if v:
                    out[k] += ab * v
    return RingElement(ring, out)


def _basis_exterior(ring: GreenRing, k: int, i: int) -> RingElement:
    if k == 0:
        return ring.one()
    if k == 1:
        return ring.basis(i)
    if k > ring.ranks[i]:
        return ring.zero()
    v = ring.exterior.get((k, i))
    if v is None:
        raise MissingExteriorData(f"{ring.name}: no exterior data for Lambda^{k}({ring.labels[i]})")
    return RingElement(ring, v)


def _poly_mul(a: list[RingElement], b: list[RingElement], deg: int) -> list[RingElement]:
    ring = a[0].ring
    out = [ring.zero() for _ in range(deg + 1)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[: deg + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def exterior_power(k: int, x: RingElement) -> RingElement:
    """Lambda^k of an actual module, via Lambda_t(X + Y) = Lambda_t(X) Lambda_t(Y)."""
    ring = x.ring
    if k < 0:
        raise RingError("exterior power degree must be non-negative")
    if k == 0:
        return ring.one()
    if k == 1:
        return x
    if not x.is_module():
        raise RingError(f"Lambda^{k} is only defined here for actual modules, got {x}")
    result = [ring.one()] + [ring.zero()] * k
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        base = [_basis_exterior(ring, j, i) for j in range(min(k, ring.ranks[i]) + 1)]
        base += [ring.zero()] * (k + 1 - len(base))
        # binary powering of the truncated polynomial Lambda_t(e_i)
        power = [ring.one()] + [ring.zero()] * k
        while c:
            if c & 1:
                power = _poly_mul(power, base, k)
            c >>= 1
            if c:
                base = _poly_mul(base, base, k)
        result = _poly_mul(result, power, k)
    return result[k]


def _adams_basis(ring: GreenRing, i: int, n: int) -> RingElement:
    """psi^n(e_i) from the Newton recursion."""
    seq = ring._adams_cache.setdefault(i, [ring.zero(), ring.basis(i)])
    if n < len(seq):
        return seq[n]
    r = ring.ranks[i]
    try:
        lam = [_basis_exterior(ring, j, i) for j in range(min(n, r) + 1)]
    except MissingExteriorData as exc:
        raise AdamsUnavailable(f"psi^{n}({ring.labels[i]}) needs exterior data: {exc}") from None
    for m in range(len(seq), n + 1):
        acc = ring.zero()
        for j in range(1, min(m - 1, r) + 1):
            term = seq[m - j] * lam[j]
            acc = acc + term if j % 2 else acc - term
        if m <= r:
            acc = acc - lam[m] * ((-1) ** m * m)
        seq.append(acc)
    return seq[n]


def adams(k: int, x: RingElement) -> RingElement:
    """Adams operation psi^k, additive in x."""
    ring = x.ring
    if k < 1:
        raise RingError(f"Adams operations are indexed by k >= 1, got {k}")
    if k > 1 and ring.adams_units_mod and gcd(k, ring.adams_units_mod) != 1:
        raise AdamsUnavailable(
            f"{ring.name}: psi^{k} is only exposed for k coprime to {ring.adams_units_mod}")
    out = ring.zero()
    for i, c in enumerate(x.coeffs):
        if c:
            out = out + _adams_basis(ring, i, k) * c
    return out


def restrict(x: RingElement, target: GreenRing | str) -> RingElement:
    ring = x.ring
    name = target if isinstance(target, str) else target.name
    if name not in ring.restrictions:
        raise RingError(f"no restriction registered from {ring.name} to {name}")
    tgt, images = ring.restrictions[name]
    out = tgt.zero()
    for c, im in zip(x.coeffs, images):
        if c:
            out = out + im * c
    return out


def rank_of(x: RingElement) -> int:
    return sum(c * r for c, r in zip(x.coeffs, x.ring.ranks))
