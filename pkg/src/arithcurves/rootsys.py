"""Split root systems of types A1-A4, B2-B4, C2-C4, D3-D4 and G2 over exact rationals.

Roots are tuples of Fractions in a rational ambient space; the pairing is the
standard dot product except for family B, where it is twice the dot product so
that short roots have squared length 2 in every supported type.  All values in
a built RootSystem are immutable and every operation here is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DimensionMismatch, NotARoot, ProportionalRoots, UnsupportedType
from .jsonutil import rat_str

Vector = tuple[Fraction, ...]

ROOT_COUNT = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 12, ("A", 4): 20,
    ("B", 2): 8, ("B", 3): 18, ("B", 4): 32,
    ("C", 2): 8, ("C", 3): 18, ("C", 4): 32,
    ("D", 3): 12, ("D", 4): 24,
    ("G", 2): 12,
}

WEYL_ORDER = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120,
    ("B", 2): 8, ("B", 3): 48, ("B", 4): 384,
    ("C", 2): 8, ("C", 3): 48, ("C", 4): 384,
    ("D", 3): 24, ("D", 4): 192,
    ("G", 2): 12,
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if (self.family, self.rank) not in ROOT_COUNT:
            raise UnsupportedType(f"unsupported type {self.family}{self.rank}")

    @classmethod
    def parse(cls, token: str) -> "CartanType":
        token = token.strip()
        if len(token) < 2 or token[0].upper() not in "ABCDG" or not token[1:].isdigit():
            raise UnsupportedType(f"unsupported type {token!r}")
        return cls(token[0].upper(), int(token[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _vec(entries: Iterable[int | Fraction]) -> Vector:
    return tuple(Fraction(e) for e in entries)


def _unit(n: int, i: int, scale: int = 1) -> Vector:
    return _vec(scale if j == i else 0 for j in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vscale(c: Fraction, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _ambient_roots(t: CartanType) -> tuple[list[Vector], list[Vector]]:
    """All roots and the simple roots of the standard ambient realization."""
    f, r = t.family, t.rank
    roots: list[Vector] = []
    if f == "A":
        n = r + 1
        roots = [vsub(_unit(n, i), _unit(n, j)) for i in range(n) for j in range(n) if i != j]
        simple = [vsub(_unit(n, i), _unit(n, i + 1)) for i in range(r)]
    elif f in ("B", "C", "D"):
        for i, j in itertools.combinations(range(r), 2):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(vadd(_unit(r, i, si), _unit(r, j, sj)))
        if f == "B":
            roots += [_unit(r, i, s) for i in range(r) for s in (1, -1)]
        elif f == "C":
            roots += [_unit(r, i, 2 * s) for i in range(r) for s in (1, -1)]
        simple = [vsub(_unit(r, i), _unit(r, i + 1)) for i in range(r - 1)]
        if f == "B":
            simple.append(_unit(r, r - 1))
        elif f == "C":
            simple.append(_unit(r, r - 1, 2))
        else:
            simple.append(vadd(_unit(r, r - 2), _unit(r, r - 1)))
    elif f == "G":
        roots = [vsub(_unit(3, i), _unit(3, j)) for i in range(3) for j in range(3) if i != j]
        for i in range(3):
            j, k = [m for m in range(3) if m != i]
            long = vsub(vsub(_unit(3, i, 2), _unit(3, j)), _unit(3, k))
            roots += [long, vneg(long)]
        simple = [vsub(_unit(3, 0), _unit(3, 1)),
                  _vec((-2, 1, 1))]
    else:  # pragma: no cover - CartanType already validated
        raise UnsupportedType(str(t))
    return roots, simple


def _solve_coeffs(simple: list[Vector], v: Vector) -> tuple[Fraction, ...]:
    """Exact coordinates of v in the basis `simple` of its span."""
    rank, dim = len(simple), len(v)
    # Gaussian elimination on the augmented (dim x rank | v) system.
    rows = [[simple[j][i] for j in range(rank)] + [v[i]] for i in range(dim)]
    piv_cols: list[int] = []
    rr = 0
    for c in range(rank):
        piv = next((k for k in range(rr, dim) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[rr], rows[piv] = rows[piv], rows[rr]
        rows[rr] = [x / rows[rr][c] for x in rows[rr]]
        for k in range(dim):
            if k != rr and rows[k][c] != 0:
                fac = rows[k][c]
                rows[k] = [x - fac * y for x, y in zip(rows[k], rows[rr])]
        piv_cols.append(c)
        rr += 1
    coeffs = [Fraction(0)] * rank
    for k, c in enumerate(piv_cols):
        coeffs[c] = rows[k][rank]
    # Consistency: zero rows must have zero rhs (v lies in the span).
    for k in range(rr, dim):
        if rows[k][rank] != 0:
            raise NotARoot(f"{v} not in the span of the simple roots")
    return tuple(coeffs)


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    simple: tuple[Vector, ...]
    positive: tuple[Vector, ...]          # sorted by (height, colex coefficient tuple)
    roots: tuple[Vector, ...]             # positive followed by their negatives
    ip_scale: Fraction                    # pairing = ip_scale * dot
    index: dict[Vector, int] = field(repr=False, compare=False)
    coeffs: dict[Vector, tuple[int, ...]] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def ambient_dim(self) -> int:
        return len(self.simple[0])

    @property
    def gram(self) -> list[list[Fraction]]:
        return [[inner(self, a, b) for b in self.simple] for a in self.simple]

    def is_root(self, v: Vector) -> bool:
        return tuple(v) in self.index

    def height(self, a: Vector) -> int:
        return sum(self.coeffs[tuple(a)])


def inner(rs: RootSystem, u: Vector, v: Vector) -> Fraction:
    return rs.ip_scale * dot(u, v)


def build_root_system(t: CartanType | str) -> RootSystem:
    """Construct the standard realization of the given type and validate it."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    roots, simple = _ambient_roots(t)
    scale = Fraction(2) if t.family == "B" else Fraction(1)

    coeffs: dict[Vector, tuple[int, ...]] = {}
    for a in roots:
        c = _solve_coeffs(simple, a)
        if any(x.denominator != 1 for x in c):
            raise NotARoot(f"non-integral simple-root coordinates for {a}")
        coeffs[a] = tuple(int(x) for x in c)

    positive = [a for a in roots if all(c >= 0 for c in coeffs[a])]
    positive.sort(key=lambda a: (sum(coeffs[a]), tuple(reversed(coeffs[a]))))
    ordered = tuple(positive) + tuple(vneg(a) for a in positive)
    index = {a: i for i, a in enumerate(ordered)}

    rs = RootSystem(cartan_type=t, simple=tuple(simple), positive=tuple(positive),
                    roots=ordered, ip_scale=scale, index=index, coeffs=coeffs)

    # Build-time sanity: counts, +/- partition, closure under simple reflections.
    assert len(ordered) == ROOT_COUNT[(t.family, t.rank)]
    assert 2 * len(positive) == len(ordered)
    for a in simple:
        for b in ordered:
            if not rs.is_root(reflect(rs, b, a)):
                raise NotARoot(f"root system not closed under reflection in {a}")
    return rs


def cartan_integer(rs: RootSystem, a: Vector, b: Vector) -> int | Fraction:
    """<a, b> = 2 (a,b) / (b,b); an integer whenever a is a root."""
    b = tuple(b)
    if not rs.is_root(b):
        raise NotARoot(f"{b} is not a root")
    q = 2 * inner(rs, tuple(a), b) / inner(rs, b, b)
    return int(q) if q.denominator == 1 else q


def reflect(rs: RootSystem, v: Vector, a: Vector) -> Vector:
    """Reflection of v in the hyperplane orthogonal to the root a."""
    a = tuple(a)
    if not rs.is_root(a):
        raise NotARoot(f"{a} is not a root")
    v = tuple(Fraction(x) for x in v)
    c = 2 * inner(rs, v, a) / inner(rs, a, a)
    return vsub(v, vscale(c, a))


def root_string(rs: RootSystem, a: Vector, b: Vector) -> tuple[int, int]:
    """(l, k) with b - l·a, ..., b + k·a the full a-string of roots through b."""
    a, b = tuple(a), tuple(b)
    if not rs.is_root(a) or not rs.is_root(b):
        raise NotARoot("root-string endpoints must be roots")
    if b == a or b == vneg(a):
        raise ProportionalRoots("no root string through +-a in direction a")
    low = 0
    while rs.is_root(vsub(b, vscale(Fraction(low + 1), a))):
        low += 1
    up = 0
    while rs.is_root(vadd(b, vscale(Fraction(up + 1), a))):
        up += 1
    return low, up


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]                 # indices of simple reflections, leftmost acts last
    perm: tuple[int, ...]                 # image index of each root

    def apply_index(self, i: int) -> int:
        return self.perm[i]


def _simple_reflection_perm(rs: RootSystem, i: int) -> tuple[int, ...]:
    return tuple(rs.index[reflect(rs, a, rs.simple[i])] for a in rs.roots)


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """w1 after w2 as root permutations."""
    return WeylElement(word=w1.word + w2.word,
                       perm=tuple(w1.perm[j] for j in w2.perm))


def weyl_group(rs: RootSystem) -> list[WeylElement]:
    """Full Weyl group by breadth-first closure over the simple reflections."""
    gens = [WeylElement(word=(i,), perm=_simple_reflection_perm(rs, i))
            for i in range(rs.rank)]
    ident = WeylElement(word=(), perm=tuple(range(len(rs.roots))))
    seen = {ident.perm: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                c = compose(g, w)
                if c.perm not in seen:
                    seen[c.perm] = c
                    nxt.append(c)
        frontier = nxt
    elements = sorted(seen.values(), key=lambda w: (len(w.word), w.word))
    assert len(elements) == WEYL_ORDER[(rs.cartan_type.family, rs.rank)]
    return elements


def reflection_matrix(rs: RootSystem, a: Vector) -> list[list[Fraction]]:
    """Ambient matrix of the reflection in root a (columns are images of e_i)."""
    n = rs.ambient_dim
    cols = [reflect(rs, _unit(n, i), a) for i in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def word_matrix(rs: RootSystem, word: tuple[int, ...]) -> list[list[Fraction]]:
    """Ambient matrix of a Weyl word (leftmost reflection applied last)."""
    n = rs.ambient_dim
    mat = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in reversed(word):
        ref = reflection_matrix(rs, rs.simple[i])
        mat = [[sum((ref[r][k] * mat[k][c] for k in range(n)), Fraction(0))
                for c in range(n)] for r in range(n)]
    return mat


def root_system_json(rs: RootSystem) -> dict:
    """Serializable view with exact rationals as "p/q" strings."""
    return {
        "type": str(rs.cartan_type),
        "simple": [[rat_str(x) for x in a] for a in rs.simple],
        "positive": [[rat_str(x) for x in a] for a in rs.positive],
        "gram": [[rat_str(x) for x in row] for row in rs.gram],
    }
