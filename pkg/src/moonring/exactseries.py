"""Exact truncated Laurent series in q and bivariate series in (p, q).

Every coefficient is a :class:`fractions.Fraction`.  A series carries an
explicit truncation order ``trunc``: the coefficient of ``q**n`` is known
exactly for ``n < trunc`` and unknown from ``trunc`` on.  Operations shrink
the truncation whenever a reported coefficient would otherwise depend on
unknown input, so nothing returned is ever a guess.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "LaurentSeries",
    "BiSeries",
    "SeriesError",
    "add",
    "mul",
    "exp_series",
    "log_series",
    "dilate",
    "bi_exp",
    "exp_rows",
    "format_rational",
    "parse_rational",
]

# Above this many coefficients per factor, integer products go through Karatsuba.
KARATSUBA_THRESHOLD = 48


class SeriesError(ValueError):
    """Raised when an operation is outside the domain of a series function."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"inexact coefficient {x!r}; use int, Fraction or a 'num/den' string")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _school(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _karatsuba(a: list, b: list) -> list:
    n = max(len(a), len(b))
    if min(len(a), len(b)) <= KARATSUBA_THRESHOLD:
        return _school(a, b)
    size = len(a) + len(b) - 1
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    h = n // 2
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    z0 = _karatsuba(a0, b0)
    z2 = _karatsuba(a1, b1)
    mid = _karatsuba([x + y for x, y in zip(a0 + [0] * (len(a1) - h), a1)],
                     [x + y for x, y in zip(b0 + [0] * (len(b1) - h), b1)])
    out = [0] * (2 * n - 1)
    for i, v in enumerate(z0):
        out[i] += v
        mid[i] -= v
    for i, v in enumerate(z2):
        out[i + 2 * h] += v
        mid[i] -= v
    for i, v in enumerate(mid):
        if i + h < len(out):
            out[i + h] += v
    return out[:size]


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], length: int) -> list[Fraction]:
    """First ``length`` coefficients of the product of two coefficient lists."""
    a, b = list(a[:length]), list(b[:length])
    if not a or not b or length <= 0:
        return [Fraction(0)] * max(length, 0)
    if all(x.denominator == 1 for x in a) and all(y.denominator == 1 for y in b):
        prod = _karatsuba([x.numerator for x in a], [y.numerator for y in b])
    else:
        # clear denominators so the inner loop runs on integers
        da = _lcm_den(a)
        db = _lcm_den(b)
        ia = [int(x * da) for x in a]
        ib = [int(y * db) for y in b]
        den = da * db
        prod = [Fraction(v, den) for v in _karatsuba(ia, ib)]
    out = [_frac(v) for v in prod[:length]]
    out += [Fraction(0)] * (length - len(out))
    return out


def _lcm_den(xs: Iterable[Fraction]) -> int:
    from math import lcm

    d = 1
    for x in xs:
        d = lcm(d, x.denominator)
    return d


class LaurentSeries:
    """Truncated Laurent series ``sum c_n q^n`` for ``valuation <= n < trunc``.

    ``coeffs[i]`` is the coefficient of ``q**(valuation + i)``.  Leading zeros
    may be stored; :attr:`order` gives the exponent of the first nonzero
    coefficient.
    """

    __slots__ = ("valuation", "coeffs", "trunc")

    def __init__(self, valuation: int, coeffs: Iterable, trunc: int | None = None):
        coeffs = tuple(_frac(c) for c in coeffs)
        if trunc is None:
            trunc = valuation + len(coeffs)
        if valuation > trunc:
            raise SeriesError(f"valuation {valuation} exceeds truncation {trunc}")
        n = trunc - valuation
        if len(coeffs) > n:
            coeffs = coeffs[:n]
        elif len(coeffs) < n:
            coeffs = coeffs + (Fraction(0),) * (n - len(coeffs))
        object.__setattr__(self, "valuation", int(valuation))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "trunc", int(trunc))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # construction helpers
    @classmethod
    def zero(cls, trunc: int) -> "LaurentSeries":
        return cls(trunc, (), trunc)

    @classmethod
    def constant(cls, c, trunc: int) -> "LaurentSeries":
        if trunc <= 0:
            return cls.zero(trunc)
        return cls(0, [c], trunc)

    @classmethod
    def monomial(cls, c, n: int, trunc: int) -> "LaurentSeries":
        if n >= trunc:
            return cls.zero(trunc)
        return cls(n, [c], trunc)

    @classmethod
    def from_dict(cls, terms: dict, trunc: int) -> "LaurentSeries":
        keys = [k for k, v in terms.items() if v and k < trunc]
        if not keys:
            return cls.zero(trunc)
        v = min(keys)
        return cls(v, [terms.get(n, 0) for n in range(v, trunc)], trunc)

    # access
    @property
    def order(self) -> int:
        """Exponent of the first nonzero coefficient (``trunc`` if none is known)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.valuation + i
        return self.trunc

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.trunc:
            raise SeriesError(f"coefficient of q^{n} is beyond truncation q^{self.trunc}")
        if n < self.valuation:
            return Fraction(0)
        return self.coeffs[n - self.valuation]

    def coefficients(self, start: int, stop: int) -> list[Fraction]:
        return [self[n] for n in range(start, stop)]

    def items(self):
        """(exponent, coefficient) pairs for the nonzero known coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.valuation + i, c

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def normalized(self) -> "LaurentSeries":
        v = self.order
        return LaurentSeries(v, self.coeffs[v - self.valuation:], self.trunc)

    def truncate(self, trunc: int) -> "LaurentSeries":
        if trunc > self.trunc:
            raise SeriesError(f"cannot extend truncation q^{self.trunc} to q^{trunc}")
        if trunc <= self.valuation:
            return LaurentSeries.zero(trunc)
        return LaurentSeries(self.valuation, self.coeffs[: trunc - self.valuation], trunc)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Coefficientwise equality up to the smaller truncation."""
        t = min(self.trunc, other.trunc)
        lo = min(self.valuation, other.valuation)
        return all(self[n] == other[n] for n in range(lo, t))

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other, self.trunc)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.valuation, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other, self.trunc)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return mul(self, other)
        c = _frac(other)
        return LaurentSeries(self.valuation, [c * x for x in self.coeffs], self.trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return mul(self, other.inverse())
        c = _frac(other)
        return LaurentSeries(self.valuation, [x / c for x in self.coeffs], self.trunc)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        if result is None:
            return LaurentSeries.constant(1, self.trunc - self.order)
        return result

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; relative precision is preserved."""
        x = self.normalized()
        v = x.valuation
        if v >= x.trunc:
            raise SeriesError("cannot invert a series with no known nonzero coefficient")
        n = x.trunc - v
        c0 = x.coeffs[0]
        out = [Fraction(0)] * n
        out[0] = 1 / c0
        for k in range(1, n):
            s = sum(x.coeffs[i] * out[k - i] for i in range(1, k + 1))
            out[k] = -s / c0
        return LaurentSeries(-v, out, -v + n)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        a, b = self.normalized(), other.normalized()
        return a.valuation == b.valuation and a.coeffs == b.coeffs

    def __hash__(self):
        a = self.normalized()
        return hash((a.valuation, a.coeffs, a.trunc))

    def __repr__(self):
        terms = []
        for n, c in self.items():
            if len(terms) == 6:
                terms.append("...")
                break
            terms.append(f"{c}*q^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"LaurentSeries({body} + O(q^{self.trunc}))"

    # serialization
    def to_json(self) -> dict:
        return {
            "valuation": self.valuation,
            "trunc": self.trunc,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentSeries":
        return cls(int(obj["valuation"]), [parse_rational(c) for c in obj["coeffs"]], int(obj["trunc"]))


def add(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    trunc = min(x.trunc, y.trunc)
    v = min(x.valuation, y.valuation, trunc)
    return LaurentSeries(v, [x[n] + y[n] for n in range(v, trunc)], trunc)


def mul(x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    """Cauchy product, truncated where the inputs stop determining it."""
    vx, vy = x.order, y.order
    trunc = min(x.trunc + vy, y.trunc + vx)
    v = vx + vy
    if v >= trunc:
        return LaurentSeries.zero(trunc)
    n = trunc - v
    a = x.coeffs[vx - x.valuation:]
    b = y.coeffs[vy - y.valuation:]
    return LaurentSeries(v, _convolve(a, b, n), trunc)


def _require_power_series(x: LaurentSeries, what: str):
    if x.trunc < 1:
        raise SeriesError(f"{what}: constant term of the argument is unknown (truncation q^{x.trunc})")
    if any(c for n, c in x.items() if n < 0):
        raise SeriesError(f"{what}: argument has negative-exponent terms")


def exp_series(x: LaurentSeries) -> LaurentSeries:
    """exp(x) for x with no terms at exponents <= 0."""
    _require_power_series(x, "exp_series")
    if x[0]:
        raise SeriesError("exp_series: argument must have zero constant term")
    n = x.trunc
    xs = [x[k] for k in range(n)]
    e = [Fraction(0)] * n
    e[0] = Fraction(1)
    # (exp x)' = x' exp x, coefficientwise: k e_k = sum_j j x_j e_{k-j}
    for k in range(1, n):
        e[k] = sum((j * xs[j] * e[k - j] for j in range(1, k + 1) if xs[j]), Fraction(0)) / k
    return LaurentSeries(0, e, n)


def log_series(x: LaurentSeries) -> LaurentSeries:
    """Formal logarithm of a power series with constant term 1."""
    _require_power_series(x, "log_series")
    if x[0] != 1:
        raise SeriesError(f"log_series: constant term must be 1, got {x[0]}")
    n = x.trunc
    xs = [x[k] for k in range(n)]
    out = [Fraction(0)] * n
    for k in range(1, n):
        s = k * xs[k] - sum(j * out[j] * xs[k - j] for j in range(1, k))
        out[k] = s / k
    return LaurentSeries(0, out, n)


def dilate(x: LaurentSeries, k: int) -> LaurentSeries:
    """Substitute q -> q^k."""
    if k < 1:
        raise SeriesError(f"dilate: k must be positive, got {k}")
    if k == 1:
        return x
    v = x.valuation * k
    trunc = x.trunc * k
    out = [Fraction(0)] * (trunc - v)
    for n, c in x.items():
        out[k * n - v] = c
    return LaurentSeries(v, out, trunc)


class BiSeries:
    """Series in p up to ``p**pmax`` whose coefficients are Laurent series in q.

    ``rows[m]`` is the coefficient of ``p**m``.  Degrees above ``pmax`` are
    unknown, not zero.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[LaurentSeries], trunc: int | None = None):
        rows = list(rows)
        if not rows:
            raise SeriesError("BiSeries needs at least the p^0 row")
        common = min(r.trunc for r in rows) if trunc is None else trunc
        object.__setattr__(self, "rows", tuple(r.truncate(common) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    @property
    def pmax(self) -> int:
        return len(self.rows) - 1

    @property
    def trunc(self) -> int:
        return self.rows[0].trunc

    def coefficient(self, a: int, b: int) -> Fraction:
        if a > self.pmax:
            raise SeriesError(f"p^{a} is beyond pmax {self.pmax}")
        return self.rows[a][b]

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"BiSeries(pmax={self.pmax}, trunc=q^{self.trunc})"

    def to_json(self) -> dict:
        return {"pmax": self.pmax, "rows": [r.to_json() for r in self.rows]}


def exp_rows(rows: Sequence[LaurentSeries]) -> list[LaurentSeries]:
    """Rows of exp(sum_m rows[m] p^m), with each row's truncation kept separate.

    Row m of the result is as precise as its inputs allow, which lets a caller
    supply the high p-degrees to lower q-precision.
    """
    if any(c for _, c in rows[0].items()):
        raise SeriesError("bi_exp: the p^0 row must be identically zero")
    out = [LaurentSeries.constant(1, max(r.trunc for r in rows))]
    # p d/dp: m E_m = sum_{k=1}^m k X_k E_{m-k}
    for m in range(1, len(rows)):
        acc = None
        for k in range(1, m + 1):
            term = mul(rows[k], out[m - k]) * k
            acc = term if acc is None else acc + term
        out.append(acc / m)
    return out


def bi_exp(x: BiSeries) -> BiSeries:
    """exp(x) in the p-adic sense, for x with vanishing p^0 row."""
    return BiSeries(exp_rows(x.rows))
