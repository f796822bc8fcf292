"""Sparse multivariate polynomials over exact rationals.

Terms are stored as a map from exponent tuples to nonzero Fractions.  Only the
operations the invariant-theory layer needs are provided: ring arithmetic,
evaluation, and substitution of linear forms for the variables.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {e: Fraction(1)})

    @classmethod
    def monomial(cls, exponents, c=1) -> "Poly":
        e = tuple(int(x) for x in exponents)
        return cls(len(e), {e: Fraction(c)})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def pow(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, point) -> Fraction:
        vals = [Fraction(p) for p in point]
        assert len(vals) == self.nvars
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute_linear(self, matrix) -> "Poly":
        """p(M x): replace variable i by the linear form sum_j M[i][j] x_j."""
        forms = [Poly(self.nvars, {tuple(1 if k == j else 0 for k in range(self.nvars)):
                                   Fraction(matrix[i][j]) for j in range(self.nvars)
                                   if matrix[i][j] != 0})
                 for i in range(self.nvars)]
        out = Poly.zero(self.nvars)
        for e, c in self.terms.items():
            term = Poly.constant(self.nvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * forms[i].pow(k)
            out = out + term
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"t{i + 1}^{k}" if k > 1 else f"t{i + 1}"
                            for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def elementary_symmetric(nvars: int, k: int) -> Poly:
    """e_k(t_1, ..., t_nvars)."""
    terms: dict[tuple[int, ...], Fraction] = {}
    for comb in itertools.combinations(range(nvars), k):
        e = tuple(1 if i in comb else 0 for i in range(nvars))
        terms[e] = Fraction(1)
    return Poly(nvars, terms)
