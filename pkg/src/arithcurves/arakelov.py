"""Arithmetic over Q and quadratic fields Q(sqrt(d)): rings of integers,
fractional ideals in Hermite normal form, the Minkowski embedding, metrized
line bundles and their arithmetic degree.

Finite-place data is exact (Fractions over the integral basis {1, w}); only
archimedean metrics are floating point, with a global 1e-9 tolerance.  The
arithmetic degree uses the section-based convention

    deg(I, rho) = log(|N(s)| / N(I)) - sum_sigma eps_sigma log(rho_sigma |sigma(s)|)

with eps = 1 at real and 2 at complex places; the product formula makes the
value independent of the chosen section s in I.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArithCurvesError, ZeroIdeal
from .finitefield import factor_pattern, is_prime
from .jsonutil import rat_str


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class NumberField:
    """Q when d = 0, otherwise Q(sqrt(d)) for squarefree d."""

    d: int = 0

    def __post_init__(self):
        if self.d != 0 and (self.d == 1 or not _is_squarefree(self.d)):
            raise ArithCurvesError(f"d = {self.d} must be 0 or squarefree != 1")

    @property
    def degree(self) -> int:
        return 1 if self.d == 0 else 2

    @property
    def signature(self) -> tuple[int, int]:
        if self.d == 0:
            return (1, 0)
        return (2, 0) if self.d > 0 else (0, 1)

    @property
    def omega_poly(self) -> tuple[int, int]:
        """(s, t) with w^2 = s w + t; w = (1+sqrt(d))/2 iff d = 1 mod 4."""
        if self.d % 4 == 1:
            return (1, (self.d - 1) // 4)
        return (0, self.d)

    @property
    def discriminant(self) -> int:
        if self.d == 0:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def name(self) -> str:
        if self.d == 0:
            return "Q"
        if self.d == -1:
            return "Q(i)"
        return f"Q(sqrt({self.d}))"

    def omega_embeddings(self) -> list[complex]:
        """Image of w under each archimedean place (complex places once)."""
        if self.d == 0:
            return [0.0]
        rt = math.sqrt(abs(self.d))
        if self.d > 0:
            vals = [rt, -rt]
        else:
            vals = [complex(0.0, rt)]
        if self.d % 4 == 1:
            vals = [(1 + v) / 2 for v in vals]
        return vals

    @property
    def place_weights(self) -> list[int]:
        r1, r2 = self.signature
        return [1] * r1 + [2] * r2

    def element(self, a, b=0) -> "FieldElement":
        return FieldElement(self, Fraction(a), Fraction(b))

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def omega(self) -> "FieldElement":
        return self.element(0, 1)


def parse_field(name: str) -> NumberField:
    s = name.strip().replace(" ", "")
    if s in ("Q", "QQ"):
        return NumberField(0)
    if s == "Q(i)":
        return NumberField(-1)
    m = re.fullmatch(r"Q\(sqrt\((-?\d+)\)\)", s)
    if not m:
        raise ArithCurvesError(f"cannot parse field {name!r}")
    return NumberField(int(m.group(1)))


@dataclass(frozen=True)
class FieldElement:
    """a + b*w over the integral basis {1, w} of the field."""

    field: NumberField
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if self.field.d == 0 and self.b != 0:
            raise ArithCurvesError("Q has no w component")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ArithCurvesError("field elements from different fields")
            return other
        return FieldElement(self.field, Fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        s, t = self.field.omega_poly
        return FieldElement(self.field,
                            self.a * o.a + self.b * o.b * t,
                            self.a * o.b + self.b * o.a + self.b * o.b * s)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        if self.field.degree == 1:
            return self
        s, _ = self.field.omega_poly
        return FieldElement(self.field, self.a + self.b * s, -self.b)

    def norm(self) -> Fraction:
        if self.field.degree == 1:
            return self.a
        s, t = self.field.omega_poly
        return self.a * self.a + self.a * self.b * s - self.b * self.b * t

    def trace(self) -> Fraction:
        if self.field.degree == 1:
            return self.a
        s, _ = self.field.omega_poly
        return 2 * self.a + self.b * s

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("zero field element")
        if self.field.degree == 1:
            return FieldElement(self.field, 1 / self.a)
        n = self.norm()        # = x * conj(x) in the quadratic case
        c = self.conj()
        return FieldElement(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.b == 0:
            if o.a == 0:
                raise ZeroDivisionError("zero field element")
            return FieldElement(self.field, self.a / o.a, self.b / o.a)
        return self * o.inverse()

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def embeddings(self) -> list[float | complex]:
        out: list[float | complex] = []
        for w in self.field.omega_embeddings():
            if isinstance(w, complex):
                out.append(complex(self.a) + complex(self.b) * w)
            else:
                out.append(float(self.a) + float(self.b) * w)
        return out

    def __str__(self):
        if self.field.d == 0:
            return rat_str(self.a)
        return f"{rat_str(self.a)} + {rat_str(self.b)}*w"


def parse_element(field: NumberField, s: str) -> FieldElement:
    """Accepts forms like "3/2", "w", "-w", "1+2*w", "1/2 - 3/4*w", "i" for Q(i)."""
    text = s.strip().replace(" ", "")
    if field.d == -1:
        text = text.replace("i", "w")
    if not text:
        raise ArithCurvesError("empty field element")
    a = Fraction(0)
    b = Fraction(0)
    for term in re.findall(r"[+-]?[^+-]+", text):
        if term.endswith("w"):
            coeff = term[:-1].rstrip("*")
            if coeff in ("", "+"):
                b += 1
            elif coeff == "-":
                b -= 1
            else:
                b += Fraction(coeff)
        else:
            a += Fraction(term)
    return FieldElement(field, a, b)


# ---------------------------------------------------------------------------
# Fractional ideals

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, u, v = _xgcd(b, a % b)
    return (g, v, u - (a // b) * v)


def _rat_gcd(values: list[Fraction]) -> Fraction:
    den = math.lcm(*(v.denominator for v in values)) if values else 1
    num = math.gcd(*(int(v * den) for v in values)) if values else 0
    return Fraction(num, den)


@dataclass(frozen=True)
class FractionalIdeal:
    """Nonzero fractional ideal, canonical upper-triangular HNF basis.

    Degree 1: rows = ((q,),) for the ideal q Z, q > 0.
    Degree 2: rows = ((a, b), (0, c)) for Z(a + b w) + Z(c w), with a, c > 0
    and 0 <= b < c.
    """

    field: NumberField
    rows: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_elements(cls, field: NumberField, elements) -> "FractionalIdeal":
        elems = [e if isinstance(e, FieldElement) else field.element(e) for e in elements]
        elems = [e for e in elems if e]
        if not elems:
            raise ZeroIdeal("no nonzero generators")
        if field.degree == 1:
            q = _rat_gcd([abs(e.a) for e in elems])
            return cls(field, ((q,),))
        pairs = []
        for e in elems:
            pairs.append((e.a, e.b))
            ew = e * field.omega
            pairs.append((ew.a, ew.b))
        den = math.lcm(*(x.denominator for p in pairs for x in p))
        int_rows = [(int(x * den), int(y * den)) for x, y in pairs]
        a, b, others = 0, 0, []
        for x, y in int_rows:
            if x == 0:
                others.append(y)
                continue
            if a == 0:
                a, b = (x, y) if x > 0 else (-x, -y)
                continue
            g, u, v = _xgcd(a, x)
            others.append((a * y - x * b) // g)
            a, b = g, u * b + v * y
        if a == 0:
            raise ZeroIdeal("generators span a rank-deficient module")
        c = 0
        for y in others:
            c = math.gcd(c, abs(y))
        assert c > 0, "ideal module must have full rank"
        b %= c
        return cls(field, ((Fraction(a, den), Fraction(b, den)),
                           (Fraction(0), Fraction(c, den))))

    @classmethod
    def ring_of_integers(cls, field: NumberField) -> "FractionalIdeal":
        return cls.from_elements(field, [field.one])

    @classmethod
    def principal(cls, x: FieldElement) -> "FractionalIdeal":
        return cls.from_elements(x.field, [x])

    def basis_elements(self) -> list[FieldElement]:
        if self.field.degree == 1:
            return [self.field.element(self.rows[0][0])]
        (a, b), (_, c) = self.rows
        return [self.field.element(a, b), self.field.element(0, c)]

    def norm(self) -> Fraction:
        if self.field.degree == 1:
            return self.rows[0][0]
        return self.rows[0][0] * self.rows[1][1]

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        if self.field != other.field:
            raise ArithCurvesError("ideals over different fields")
        prods = [x * y for x in self.basis_elements() for y in other.basis_elements()]
        return FractionalIdeal.from_elements(self.field, prods)

    def power(self, k: int) -> "FractionalIdeal":
        assert k >= 0
        out = FractionalIdeal.ring_of_integers(self.field)
        for _ in range(k):
            out = out * self
        return out

    def membership_coords(self, x: FieldElement) -> tuple[int, ...] | None:
        """Integer coordinates of x over the HNF basis, or None if x not in it."""
        if self.field.degree == 1:
            q = self.rows[0][0]
            if x.b != 0:
                return None
            m = x.a / q
            return (int(m),) if m.denominator == 1 else None
        (a, b), (_, c) = self.rows
        m = x.a / a
        if m.denominator != 1:
            return None
        n = (x.b - m * b) / c
        if n.denominator != 1:
            return None
        return (int(m), int(n))

    def contains(self, x: FieldElement) -> bool:
        return self.membership_coords(x) is not None

    def hnf_strings(self) -> list[list[str]]:
        return [[rat_str(x) for x in row] for row in self.rows]


def ideal_norm(K: NumberField, I: FractionalIdeal) -> Fraction:
    """Multiplicative ideal norm; N(x O_F) = |N(x)|."""
    return I.norm()


def minkowski_embed(K: NumberField, x: FieldElement) -> list[complex]:
    """sigma(x) over all archimedean places, complex places taken once."""
    return x.embeddings()


# ---------------------------------------------------------------------------
# Metrized line bundles

@dataclass(frozen=True)
class MetrizedLineBundle:
    ideal: FractionalIdeal
    metrics: tuple[float, ...]       # one positive scalar per archimedean place

    def __post_init__(self):
        r1, r2 = self.ideal.field.signature
        if len(self.metrics) != r1 + r2:
            raise ArithCurvesError(f"need {r1 + r2} metric factors, got {len(self.metrics)}")
        if any(m <= 0 for m in self.metrics):
            raise ArithCurvesError("metric factors must be positive")


def trivial_bundle(K: NumberField) -> MetrizedLineBundle:
    r1, r2 = K.signature
    return MetrizedLineBundle(FractionalIdeal.ring_of_integers(K), (1.0,) * (r1 + r2))


def principal_bundle(K: NumberField, x: FieldElement) -> MetrizedLineBundle:
    """(x O_F) with the metric transported from the trivial bundle along x.

    The generator has norm 1 at every place, so the arithmetic degree is zero;
    with the flat rho = 1 metric instead, the degree would be -log|N(x)|.
    """
    return MetrizedLineBundle(FractionalIdeal.principal(x),
                              tuple(1.0 / abs(s) for s in x.embeddings()))


def tensor(L1: MetrizedLineBundle, L2: MetrizedLineBundle) -> MetrizedLineBundle:
    return MetrizedLineBundle(L1.ideal * L2.ideal,
                              tuple(a * b for a, b in zip(L1.metrics, L2.metrics)))


def arithmetic_degree(K: NumberField, L: MetrizedLineBundle,
                      section: FieldElement | None = None) -> float:
    """Arakelov degree; independent of the section by the product formula."""
    s = section if section is not None else L.ideal.basis_elements()[0]
    if not L.ideal.contains(s):
        raise ArithCurvesError("section must lie in the ideal")
    finite = math.log(abs(s.norm()) / L.ideal.norm())
    inf = 0.0
    for eps, rho, sigma in zip(K.place_weights, L.metrics, s.embeddings()):
        inf += eps * math.log(rho * abs(sigma))
    return finite - inf


# ---------------------------------------------------------------------------
# Prime splitting

@dataclass(frozen=True)
class PlaceFactorization:
    prime: int
    splitting: tuple[tuple[int, int], ...]   # (residue degree f, ramification e)

    @property
    def kind(self) -> str:
        if len(self.splitting) == 2:
            return "split"
        f, e = self.splitting[0]
        if e == 2:
            return "ramified"
        return "inert" if f == 2 else "trivial"


def factor_prime(K: NumberField, p: int) -> PlaceFactorization:
    """Splitting of p via the minimal polynomial of w mod p."""
    if not is_prime(p):
        raise ArithCurvesError(f"{p} is not prime")
    if K.degree == 1:
        return PlaceFactorization(p, ((1, 1),))
    s, t = K.omega_poly
    shape = factor_pattern([-t, -s, 1], p)
    splitting = tuple(sorted((d, e) for d, e in shape))
    assert sum(d * e for d, e in splitting) == 2
    return PlaceFactorization(p, splitting)
