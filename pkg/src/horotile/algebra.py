"""Exact scalars: golden integers Z[lam], golden rationals Q(lam), truncated dyadics.

``lam`` is the golden mean (1 + sqrt 5)/2, so lam**2 == lam + 1.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

SQRT5 = math.sqrt(5.0)
LAMBDA_FLOAT = (1.0 + SQRT5) / 2.0

MAX_PRECISION = 64
DEFAULT_PRECISION = 16


def _sign_a_plus_b_sqrt5(a: int, b: int) -> int:
    """Exact sign of a + b*sqrt(5) for integers a, b."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare squares
    lhs, rhs = a * a, 5 * b * b
    if a > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


@total_ordering
class GoldenInt:
    """p + q*lam with integer p, q."""

    __slots__ = ("p", "q")

    def __init__(self, p: int = 0, q: int = 0):
        self.p = int(p)
        self.q = int(q)

    @classmethod
    def coerce(cls, x) -> "GoldenInt":
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to GoldenInt")

    def __repr__(self):
        return f"GoldenInt({self.p}, {self.q})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        return f"{self.p}{self.q:+}λ"

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.q == 0 and self.p == other
        if isinstance(other, GoldenInt):
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __lt__(self, other):
        other = GoldenInt.coerce(other)
        return (self - other).sign() < 0

    def sign(self) -> int:
        # p + q(1+sqrt5)/2 = (2p + q + q sqrt5)/2
        return _sign_a_plus_b_sqrt5(2 * self.p + self.q, self.q)

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __add__(self, other):
        if isinstance(other, int):
            return GoldenInt(self.p + other, self.q)
        if isinstance(other, GoldenInt):
            return GoldenInt(self.p + other.p, self.q + other.q)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GoldenInt(-self.p, -self.q)

    def __sub__(self, other):
        if isinstance(other, (int, GoldenInt)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GoldenInt(self.p * other, self.q * other)
        if isinstance(other, GoldenInt):
            p, q, r, s = self.p, self.q, other.p, other.q
            # (p + q lam)(r + s lam) = pr + (ps + qr) lam + qs (lam + 1)
            return GoldenInt(p * r + q * s, p * s + q * r + q * s)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GoldenInt":
        """Galois conjugate: lam -> 1 - lam."""
        return GoldenInt(self.p + self.q, -self.q)

    def norm(self) -> int:
        return self.p * self.p + self.p * self.q - self.q * self.q

    def is_rational(self) -> bool:
        return self.q == 0

    def __float__(self):
        return self.p + self.q * LAMBDA_FLOAT

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, d: dict) -> "GoldenInt":
        return cls(d["p"], d["q"])


LAMBDA = GoldenInt(0, 1)


def golden_add(u: GoldenInt, v: GoldenInt) -> GoldenInt:
    return u + v


def golden_neg(u: GoldenInt) -> GoldenInt:
    return -u


def golden_mul(u: GoldenInt, v: GoldenInt) -> GoldenInt:
    return u * v


@total_ordering
class GoldenRational:
    """(p + q*lam) / den with den > 0 minimal."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = GoldenInt.coerce(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(math.gcd(num.p, num.q), den)
        if g > 1:
            num = GoldenInt(num.p // g, num.q // g)
            den //= g
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "GoldenRational":
        if isinstance(x, GoldenRational):
            return x
        if isinstance(x, (int, GoldenInt)):
            return cls(x, 1)
        if isinstance(x, Fraction):
            return cls(x.numerator, x.denominator)
        raise TypeError(f"cannot coerce {x!r} to GoldenRational")

    def __repr__(self):
        return f"GoldenRational({self.num.p}, {self.num.q}, {self.den})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/{self.den}"

    def __hash__(self):
        if self.num.q == 0:
            return hash(Fraction(self.num.p, self.den))
        return hash((self.num.p, self.num.q, self.den))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GoldenInt)):
            other = GoldenRational.coerce(other)
        if isinstance(other, GoldenRational):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __lt__(self, other):
        other = GoldenRational.coerce(other)
        return (self - other).sign() < 0

    def sign(self) -> int:
        return self.num.sign()

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        try:
            other = GoldenRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return GoldenRational(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = GoldenRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GoldenRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "GoldenRational":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        n = self.num.norm()
        # 1/(x) = conj(x)/N(x)
        return GoldenRational(self.num.conjugate() * self.den, n)

    def __truediv__(self, other):
        try:
            other = GoldenRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GoldenRational.coerce(other) * self.inverse()

    def is_rational(self) -> bool:
        return self.num.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num.p, self.den)

    def __float__(self):
        return float(self.num) / self.den

    def to_json(self) -> dict:
        return {"goldenP": self.num.p, "goldenQ": self.num.q, "den": self.den}


def to_field(x):
    """Promote an exact scalar to its field of fractions (Fraction or GoldenRational)."""
    if isinstance(x, (GoldenInt, GoldenRational)):
        return GoldenRational.coerce(x)
    return Fraction(x)


def field_div(x, y):
    return to_field(x) / to_field(y)


def is_golden(x) -> bool:
    return isinstance(x, (GoldenInt, GoldenRational))


# -- truncated dyadic integers ------------------------------------------------


def _check_precision(n: int) -> int:
    if not isinstance(n, int) or not 1 <= n <= MAX_PRECISION:
        raise ValueError(f"precision must be an integer in [1, {MAX_PRECISION}], got {n!r}")
    return n


class DyadicRes:
    """A dyadic integer known modulo 2**precision."""

    __slots__ = ("value", "precision")

    def __init__(self, value: int, precision: int = DEFAULT_PRECISION):
        self.precision = _check_precision(precision)
        self.value = int(value) % (1 << precision)

    @property
    def modulus(self) -> int:
        return 1 << self.precision

    def __repr__(self):
        return f"DyadicRes({self.value}, {self.precision})"

    def __str__(self):
        return f"{self.value} mod 2^{self.precision}"

    def __hash__(self):
        return hash((self.value, self.precision))

    def __eq__(self, other):
        if isinstance(other, DyadicRes):
            return self.value == other.value and self.precision == other.precision
        return NotImplemented

    def _other(self, other) -> int:
        if isinstance(other, DyadicRes):
            if other.precision != self.precision:
                raise ValueError(f"precision mismatch: {self.precision} vs {other.precision}")
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"unsupported operand {other!r}")

    def __add__(self, other):
        return DyadicRes(self.value + self._other(other), self.precision)

    __radd__ = __add__

    def __sub__(self, other):
        return DyadicRes(self.value - self._other(other), self.precision)

    def __rsub__(self, other):
        return DyadicRes(self._other(other) - self.value, self.precision)

    def __neg__(self):
        return DyadicRes(-self.value, self.precision)

    def __mul__(self, other):
        return DyadicRes(self.value * self._other(other), self.precision)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.value & 1 == 1

    def truncate(self, precision: int) -> "DyadicRes":
        if precision > self.precision:
            raise ValueError("cannot raise precision of a truncated dyadic")
        return DyadicRes(self.value, precision)

    def signed(self) -> int:
        """Representative in [-2^(N-1), 2^(N-1)); display only."""
        half = 1 << (self.precision - 1)
        return self.value - self.modulus if self.value >= half else self.value

    def bits(self) -> str:
        """Binary digits, least significant first."""
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.precision))

    def to_json(self) -> dict:
        return {"bits": self.bits(), "precision": self.precision}

    @classmethod
    def from_json(cls, d: dict) -> "DyadicRes":
        bits = d["bits"]
        n = int(d["precision"])
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ValueError(f"malformed dyadic bits {bits!r} for precision {n}")
        return cls(sum(1 << i for i, ch in enumerate(bits) if ch == "1"), n)


def dyadic_add(x: DyadicRes, y: DyadicRes) -> DyadicRes:
    return x + y


def dyadic_neg(x: DyadicRes) -> DyadicRes:
    return -x


def dyadic_scale(k: int, x: DyadicRes) -> DyadicRes:
    return DyadicRes(k * x.value, x.precision)


def dyadic_inv_odd(u: DyadicRes) -> DyadicRes:
    if not u.is_unit():
        raise ValueError(f"{u} is even, not a unit")
    return DyadicRes(pow(u.value, -1, u.modulus), u.precision)


def dyadic_div(x: DyadicRes, u: int) -> DyadicRes:
    """x / u for odd integer u."""
    if u % 2 == 0:
        raise ValueError(f"divisor {u} is even")
    return DyadicRes(x.value * pow(u % x.modulus, -1, x.modulus), x.precision)


def _check_m(x: DyadicRes, m: int) -> None:
    if not 0 <= m <= x.precision:
        raise ValueError(f"m={m} outside [0, {x.precision}]")


def pi_m(x: DyadicRes, m: int) -> Fraction:
    """Fractional part of x / 2^m."""
    _check_m(x, m)
    return Fraction(x.value % (1 << m), 1 << m)


def sigma_m(x: DyadicRes, m: int) -> DyadicRes | None:
    """Integer part of x / 2^m, at precision N - m.

    Returns None when m == N (the integer part carries no known digits).
    """
    _check_m(x, m)
    if m == x.precision:
        return None
    return DyadicRes(x.value >> m, x.precision - m)
