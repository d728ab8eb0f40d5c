"""Upper half-plane geometry: PSL(2) isometries, points, horoballs.

Group data is exact (int, Fraction or GoldenInt entries); floats appear only
when evaluating interior points, distances and areas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GoldenInt, GoldenRational, to_field


class _Infinity:
    """The boundary point at infinity."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

KINDS = ("Z", "Q", "G")


def _kind_of(x) -> str:
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return "Z"
    if isinstance(x, Fraction):
        return "Q"
    if isinstance(x, GoldenInt):
        return "G"
    raise TypeError(f"unsupported matrix entry {x!r}")


def _sign(x) -> int:
    if isinstance(x, GoldenInt):
        return x.sign()
    return (x > 0) - (x < 0)


class Isometry:
    """An element of PSL(2) stored as a sign-normalized unimodular matrix.

    The representative satisfies c > 0, or c == 0 and d > 0, so two matrices
    differing by -I construct equal values.
    """

    __slots__ = ("a", "b", "c", "d", "kind")

    def __init__(self, a, b, c, d, kind: str | None = None):
        entries = [a, b, c, d]
        if kind is None:
            kinds = {_kind_of(x) for x in entries}
            kind = "G" if "G" in kinds else ("Q" if "Q" in kinds else "Z")
        if kind == "Z":
            if not all(isinstance(x, int) for x in entries):
                raise TypeError("Z-isometry needs integer entries")
        elif kind == "Q":
            entries = [Fraction(x) for x in entries]
        elif kind == "G":
            entries = [GoldenInt.coerce(x) for x in entries]
        else:
            raise ValueError(f"unknown scalar kind {kind!r}")
        a, b, c, d = entries
        if a * d - b * c != 1:
            raise ValueError(f"determinant of [[{a},{b}],[{c},{d}]] is not 1")
        sc = _sign(c)
        if sc < 0 or (sc == 0 and _sign(d) < 0):
            a, b, c, d = -a, -b, -c, -d
        self.a, self.b, self.c, self.d, self.kind = a, b, c, d, kind

    @classmethod
    def identity(cls, kind: str = "Z") -> "Isometry":
        return cls(1, 0, 0, 1, kind=kind)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.kind == other.kind and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.kind, self.entries()))

    def __repr__(self):
        return f"Isometry([[{self.a}, {self.b}], [{self.c}, {self.d}]], kind={self.kind!r})"

    def __matmul__(self, other):
        return compose(self, other)

    def is_identity(self) -> bool:
        return self.entries() == (1, 0, 0, 1)

    def inverse(self) -> "Isometry":
        return invert(self)

    def as_complex(self) -> tuple[complex, complex, complex, complex]:
        return tuple(complex(float(x)) for x in self.entries())


def compose(g: Isometry, h: Isometry) -> Isometry:
    if g.kind != h.kind:
        raise TypeError(f"scalar kind mismatch: {g.kind} vs {h.kind}")
    a, b, c, d = g.entries()
    e, f, k, l = h.entries()
    return Isometry(a * e + b * k, a * f + b * l, c * e + d * k, c * f + d * l, kind=g.kind)


def invert(g: Isometry) -> Isometry:
    return Isometry(g.d, -g.b, -g.c, g.a, kind=g.kind)


def power(g: Isometry, n: int) -> Isometry:
    if n < 0:
        g, n = invert(g), -n
    out = Isometry.identity(g.kind)
    for _ in range(n):
        out = compose(out, g)
    return out


@dataclass(frozen=True)
class HPoint:
    """Point of the closed upper half-plane; ``boundary_inf`` marks infinity."""

    x: float
    y: float = 0.0
    boundary_inf: bool = False

    def __post_init__(self):
        if not self.boundary_inf and self.y < 0:
            raise ValueError(f"y must be >= 0, got {self.y}")

    @classmethod
    def infinity(cls) -> "HPoint":
        return cls(math.inf, 0.0, True)

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, max(z.imag, 0.0))

    @property
    def is_boundary(self) -> bool:
        return self.boundary_inf or self.y == 0

    def as_complex(self) -> complex:
        if self.boundary_inf:
            raise ValueError("infinity has no complex coordinate")
        return complex(self.x, self.y)


def apply_point(g: Isometry, z: HPoint) -> HPoint:
    a, b, c, d = (float(x) for x in g.entries())
    if z.boundary_inf:
        if c == 0:
            return HPoint.infinity()
        return HPoint(a / c, 0.0)
    w = complex(z.x, z.y)
    den = c * w + d
    if den == 0:
        return HPoint.infinity()
    img = (a * w + b) / den
    if z.y == 0:
        return HPoint(img.real, 0.0)
    return HPoint(img.real, img.imag)


def apply_complex(g: Isometry, z: complex) -> complex:
    a, b, c, d = (float(x) for x in g.entries())
    return (a * z + b) / (c * z + d)


def apply_cusp(g: Isometry, x):
    """Exact image of a boundary point (Fraction, GoldenRational or INF)."""
    a, b, c, d = (to_field(e) for e in g.entries())
    if x is INF:
        if not c:
            return INF
        return _canon(to_field(a) / to_field(c))
    num = a * x + b
    den = c * x + d
    if not den:
        return INF
    return _canon(to_field(num) / to_field(den))


def _canon(x):
    """Rational golden values are stored as Fraction so Q and Q(lam) cusps compare equal."""
    if isinstance(x, GoldenRational) and x.is_rational():
        return x.as_fraction()
    return x


class Horoball:
    """A horoball tangent at a boundary point.

    For tangent == INF the region is {y >= height}; otherwise a Euclidean disk
    tangent to the real axis with the given diameter.
    """

    __slots__ = ("tangent", "size")

    def __init__(self, tangent, size):
        tangent = _canon(tangent) if tangent is not INF else INF
        if isinstance(tangent, int):
            tangent = Fraction(tangent)
        size = _canon(to_field(size))
        if size <= 0:
            raise ValueError("horoball size must be positive")
        self.tangent = tangent
        self.size = size

    @classmethod
    def at_infinity(cls, height=1) -> "Horoball":
        return cls(INF, height)

    @property
    def at_inf(self) -> bool:
        return self.tangent is INF

    @property
    def diameter(self):
        if self.at_inf:
            raise AttributeError("horoball at infinity has a height, not a diameter")
        return self.size

    @property
    def height(self):
        if not self.at_inf:
            raise AttributeError("finite horoball has a diameter, not a height")
        return self.size

    def key(self):
        return (self.tangent, self.size)

    def __eq__(self, other):
        if not isinstance(other, Horoball):
            return NotImplemented
        return self.tangent == other.tangent and self.size == other.size

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.at_inf:
            return f"Horoball(INF, height={self.size})"
        return f"Horoball({self.tangent}, diameter={self.size})"


def apply_horoball(g: Isometry, h: Horoball) -> Horoball:
    a, b, c, d = (to_field(e) for e in g.entries())
    if h.at_inf:
        return _image_of_inf_ball(a, c, to_field(h.size))
    # h = T_x S {y >= 1/D}; g T_x S = [[a x + b, -a], [c x + d, -c]]
    x = h.tangent
    return _image_of_inf_ball(a * x + b, c * x + d, 1 / to_field(h.size))


def _image_of_inf_ball(alpha, gamma, height) -> Horoball:
    """Image of {y >= height} under a matrix with first column (alpha, gamma)."""
    if not gamma:
        return Horoball(INF, height * alpha * alpha)
    return Horoball(alpha / gamma, 1 / (height * gamma * gamma))


def hyp_distance(z1: HPoint, z2: HPoint) -> float:
    if z1.is_boundary or z2.is_boundary:
        raise ValueError("distance is defined between interior points only")
    dx, dy = z1.x - z2.x, z1.y - z2.y
    # arccosh(1 + t) = 2 asinh(sqrt(t/2)) keeps precision near 0
    t = (dx * dx + dy * dy) / (2.0 * z1.y * z2.y)
    return 2.0 * math.asinh(math.sqrt(t / 2.0))


def ball_area(r: float) -> float:
    if r < 0:
        raise ValueError("radius must be non-negative")
    # 2 pi (cosh r - 1) = 4 pi sinh^2(r/2)
    s = math.sinh(r / 2.0)
    return 4.0 * math.pi * s * s


def to_disk(z: HPoint) -> complex:
    """Cayley map (z - i)/(z + i) to the Poincare disk."""
    if z.boundary_inf:
        return 1 + 0j
    w = complex(z.x, z.y)
    return (w - 1j) / (w + 1j)


def from_disk(u: complex) -> complex:
    return 1j * (1 + u) / (1 - u)


def cusp_to_float(x) -> float:
    return math.inf if x is INF else float(x)


def cusp_sort_key(x):
    """Order boundary points along R, with infinity last."""
    return (1, 0) if x is INF else (0, x)


ORIGIN = HPoint(0.0, 1.0)
