"""Integral Chevalley bases with integer structure constants.

The basis of [g,g] is {x_a : a in Phi} u {h_i : simple i}; a reductive g adds
an abelian center with a unimodular integer basis.  Signs are resolved by the
extraspecial-pair convention: positive roots are ordered by height then
colexicographically on simple-root coefficients, the minimal decomposition of
each non-simple positive root gets constant +(l+1), and every remaining
constant is forced from those seeds through Jacobi-derived reduction rules.
With this ordering the type-A tables coincide with the elementary-matrix
realization of gl_n, which `gl_realization` exposes for cross-checking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch
from .rootsys import (CartanType, RootSystem, Vector, build_root_system, cartan_integer,
                      inner, root_string, vadd, vneg, vscale, vsub, _solve_coeffs)

Coords = tuple[Fraction, ...]
SparseVec = dict[int, Fraction]


@dataclass(frozen=True)
class BasisVector:
    kind: str        # "x" root vector, "h" simple coroot, "z" central
    index: int       # root index ("x"), simple index ("h"), center index ("z")


@dataclass(frozen=True)
class IntegralLieAlgebra:
    rs: RootSystem
    center_rank: int
    basis: tuple[BasisVector, ...]
    # (i, j) -> ((k, c), ...) meaning [b_i, b_j] = sum c * b_k, all c integers
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = field(repr=False, compare=False)
    center_basis: tuple[tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def label(self, i: int) -> str:
        b = self.basis[i]
        if b.kind == "x":
            cf = self.rs.coeffs[self.rs.roots[b.index]]
            return "x(" + ",".join(str(c) for c in cf) + ")"
        if b.kind == "h":
            return f"h({b.index + 1})"
        return f"z({b.index + 1})"

    def x_index(self, a: Vector) -> int:
        return self.rs.index[tuple(a)]

    def h_index(self, i: int) -> int:
        return len(self.rs.roots) + i

    def z_index(self, j: int) -> int:
        return len(self.rs.roots) + self.rs.rank + j


def coroot_coords(rs: RootSystem, a: Vector) -> tuple[int, ...]:
    """Integer coordinates of the coroot 2a/(a,a) over the simple coroots."""
    covecs = [vscale(2 / inner(rs, s, s), s) for s in rs.simple]
    target = vscale(2 / inner(rs, a, a), tuple(a))
    sol = _solve_coeffs(covecs, target)
    assert all(c.denominator == 1 for c in sol), f"non-integral coroot for {a}"
    return tuple(int(c) for c in sol)


def structure_constants(rs: RootSystem) -> dict[tuple[Vector, Vector], int]:
    """N_{a,b} for every ordered pair of roots with a + b again a root."""
    pos = list(rs.positive)
    pos_set = set(pos)
    order = {a: i for i, a in enumerate(pos)}

    def sq(a: Vector) -> Fraction:
        return inner(rs, a, a)

    def pval(a: Vector, b: Vector) -> int:
        k = 0
        while rs.is_root(vsub(b, vscale(Fraction(k + 1), a))):
            k += 1
        return k

    table: dict[tuple[Vector, Vector], int] = {}

    def put(a: Vector, b: Vector, v: int) -> None:
        table[(a, b)] = v
        table[(b, a)] = -v

    def get(a: Vector, b: Vector) -> int:
        s = vadd(a, b)
        if not rs.is_root(s):
            return 0
        if (a, b) in table:
            return table[(a, b)]
        if a in pos_set and b in pos_set:
            raise AssertionError("positive pair out of processing order")
        if a not in pos_set and b in pos_set:
            v = -get(vneg(a), vneg(b))
        elif a in pos_set and s in pos_set:
            # triple (a, b, -s):  N_{a,b} = (s,s)/(a,a) N_{b,-s} = -(s,s)/(a,a) N_{-b,s}
            v = -Fraction(sq(s), sq(a)) * get(vneg(b), s)
        else:
            v = get(vneg(b), vneg(a))
        assert Fraction(v).denominator == 1
        v = int(v)
        table[(a, b)] = v
        return v

    for g in pos:
        if rs.height(g) < 2:
            continue
        spairs = [(a, vsub(g, a)) for a in pos
                  if vsub(g, a) in pos_set and order[a] < order[vsub(g, a)]]
        spairs.sort(key=lambda p: order[p[0]])
        al, be = spairs[0]
        put(al, be, pval(al, be) + 1)
        for xi, eta in spairs[1:]:
            # Jacobi on (x_al, x_be, x_{-xi}) against the extraspecial seed:
            #   N_{al,be} (eta,eta)/(g,g) N_{xi,eta} = -(T2 + T3)
            d1 = vsub(be, xi)
            d2 = vsub(xi, al)
            t = Fraction(0)
            if rs.is_root(d1):
                t += get(be, vneg(xi)) * get(al, d1)
            if rs.is_root(d2):
                t += get(vneg(xi), al) * get(be, vneg(d2))
            v = -t * Fraction(sq(g), sq(eta)) / table[(al, be)]
            assert v.denominator == 1 and abs(v) == pval(xi, eta) + 1, \
                f"structure constant {v} for {xi}+{eta} fails the string bound"
            put(xi, eta, int(v))

    # Materialize the remaining mixed/negative pairs.
    for a in rs.roots:
        for b in rs.roots:
            if b != vneg(a) and rs.is_root(vadd(a, b)):
                get(a, b)
    return table


def build_chevalley_basis(rs: RootSystem, center_rank: int = 0,
                          center_basis: tuple[tuple[int, ...], ...] | None = None
                          ) -> IntegralLieAlgebra:
    """Chevalley basis of [g,g] extended by an abelian center of the given rank."""
    if center_basis is None:
        center_basis = tuple(tuple(1 if i == j else 0 for j in range(center_rank))
                             for i in range(center_rank))
    else:
        center_basis = tuple(tuple(int(x) for x in row) for row in center_basis)
        det = _int_det(center_basis)
        if abs(det) != 1:
            raise ValueError(f"center basis must be unimodular, det = {det}")

    nroots, rank = len(rs.roots), rs.rank
    basis = tuple([BasisVector("x", i) for i in range(nroots)]
                  + [BasisVector("h", i) for i in range(rank)]
                  + [BasisVector("z", j) for j in range(center_rank)])
    consts = structure_constants(rs)

    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def put(i: int, j: int, entries: list[tuple[int, int]]) -> None:
        entries = [(k, c) for k, c in entries if c != 0]
        if entries:
            table[(i, j)] = tuple(entries)
            table[(j, i)] = tuple((k, -c) for k, c in entries)

    for i, a in enumerate(rs.roots):
        # [x_a, x_b] for b later in the list; (j, i) filled by antisymmetry
        for j in range(i + 1, nroots):
            b = rs.roots[j]
            if b == vneg(a):
                hc = coroot_coords(rs, a)
                put(i, j, [(nroots + k, c) for k, c in enumerate(hc)])
            elif rs.is_root(vadd(a, b)):
                put(i, j, [(rs.index[vadd(a, b)], consts[(a, b)])])
        # [h_k, x_a]
        for k in range(rank):
            c = cartan_integer(rs, a, rs.simple[k])
            put(nroots + k, i, [(i, int(c))])

    # Verify the Chevalley theorem clauses that are cheap at build time:
    # [h,h] = 0 and centrality hold by omission;  magnitudes |N| = l+1 and the
    # opposite-pair sign rule were asserted during construction of `consts`.
    for (a, b), v in consts.items():
        assert v == -consts[(vneg(a), vneg(b))]

    return IntegralLieAlgebra(rs=rs, center_rank=center_rank, basis=basis,
                              table=table, center_basis=center_basis)


def _int_det(m: tuple[tuple[int, ...], ...]) -> int:
    n = len(m)
    if n == 0:
        return 1
    rows = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------------------
# Bracket computation

def _check_coords(L: IntegralLieAlgebra, x) -> Coords:
    x = tuple(Fraction(c) for c in x)
    if len(x) != L.dim:
        raise DimensionMismatch(f"expected {L.dim} coordinates, got {len(x)}")
    return x


def bracket(L: IntegralLieAlgebra, x, y) -> Coords:
    """[x, y] in basis coordinates; integer inputs give integer outputs."""
    x, y = _check_coords(L, x), _check_coords(L, y)
    out = [Fraction(0)] * L.dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            for k, c in L.table.get((i, j), ()):
                out[k] += xi * yj * c
    return tuple(out)


def bracket_sparse(L: IntegralLieAlgebra, x: SparseVec, y: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for i, xi in x.items():
        for j, yj in y.items():
            for k, c in L.table.get((i, j), ()):
                out[k] = out.get(k, Fraction(0)) + xi * yj * c
    return {k: v for k, v in out.items() if v != 0}


def adjoint_matrix(L: IntegralLieAlgebra, x) -> list[list[Fraction]]:
    """Matrix of ad(x); column j holds [x, basis_j]."""
    x = _check_coords(L, x)
    cols = []
    for j in range(L.dim):
        col = [Fraction(0)] * L.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for k, c in L.table.get((i, j), ()):
                col[k] += xi * c
        cols.append(col)
    return [[cols[j][i] for j in range(L.dim)] for i in range(L.dim)]


def basis_element(L: IntegralLieAlgebra, i: int) -> Coords:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(L.dim))


def principal_nilpotent(L: IntegralLieAlgebra) -> Coords:
    """Sum of the simple root vectors; ad of it is nilpotent."""
    simple_idx = {L.rs.index[a] for a in L.rs.simple}
    return tuple(Fraction(1) if i in simple_idx else Fraction(0) for i in range(L.dim))


def verify_sign_constraints(L: IntegralLieAlgebra, c: dict[Vector, Fraction]) -> bool:
    """Whether a rescaling family keeps the basis Chevalley.

    Requires c_a c_{-a} = 1 for every root and c_a c_b = +-c_{a+b} whenever
    a + b is a root.  `c` must be defined on all of Phi, keyed by root tuple.
    """
    rs = L.rs
    cc = {tuple(k): Fraction(v) for k, v in c.items()}
    missing = [a for a in rs.roots if a not in cc]
    assert not missing, f"rescaling undefined on {missing[:3]}"
    for a in rs.positive:
        if cc[a] * cc[vneg(a)] != 1:
            return False
    for a in rs.roots:
        for b in rs.roots:
            s = vadd(a, b)
            if rs.is_root(s) and cc[a] * cc[b] not in (cc[s], -cc[s]):
                return False
    return True


def rescale(L: IntegralLieAlgebra, c: dict[Vector, Fraction]) -> IntegralLieAlgebra:
    """The algebra in the basis x_a -> c_a x_a (table must stay integral)."""
    rs = L.rs
    cc = {tuple(k): Fraction(v) for k, v in c.items()}
    nroots = len(rs.roots)

    def factor(i: int, j: int, k: int) -> Fraction:
        fi = cc[rs.roots[i]] if i < nroots else Fraction(1)
        fj = cc[rs.roots[j]] if j < nroots else Fraction(1)
        fk = cc[rs.roots[k]] if k < nroots else Fraction(1)
        return fi * fj / fk

    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for (i, j), entries in L.table.items():
        new = []
        for k, v in entries:
            w = v * factor(i, j, k)
            if w.denominator != 1:
                raise ValueError("rescaling does not preserve integrality")
            if w != 0:
                new.append((k, int(w)))
        if new:
            table[(i, j)] = tuple(new)
    return IntegralLieAlgebra(rs=rs, center_rank=L.center_rank, basis=L.basis,
                              table=table, center_basis=L.center_basis)


# ---------------------------------------------------------------------------
# Verification report

@dataclass
class ChevalleyReport:
    antisymmetric: bool
    integral: bool
    magnitudes_ok: bool
    cartan_action_ok: bool
    coroot_ok: bool
    opposite_sign_ok: bool            # N_{-a,-b} = -N_{a,b} for all pairs
    literal_paper_sign_count: int     # pairs with N_{-a,-b} = +N_{a,b} (reported only)
    pair_count: int
    string_identity_failures: list    # pairs violating N^2 = k(l+1)(g,g)/(b,b)
    jacobi_ok: bool
    jacobi_triples: int

    @property
    def ok(self) -> bool:
        return (self.antisymmetric and self.integral and self.magnitudes_ok
                and self.cartan_action_ok and self.coroot_ok
                and self.opposite_sign_ok and not self.string_identity_failures
                and self.jacobi_ok)


def verify_chevalley(L: IntegralLieAlgebra, jacobi: str | int = "auto",
                     seed: int = 20260810) -> ChevalleyReport:
    """Check every clause of the integral-basis theorem on the built table.

    `jacobi` is "exhaustive", "auto" (exhaustive for dim <= 25, else 10000
    random triples) or an explicit sample count.
    """
    rs = L.rs
    nroots = len(rs.roots)

    integral = all(isinstance(v, int) for entries in L.table.values() for _, v in entries)

    antisymmetric = True
    for (i, j), entries in L.table.items():
        back = dict(L.table.get((j, i), ()))
        if {k: -v for k, v in entries} != back:
            antisymmetric = False

    magnitudes_ok = True
    opposite_sign_ok = True
    literal = 0
    pairs = 0
    string_failures = []
    for i, a in enumerate(rs.roots):
        for b in rs.roots[i + 1:]:
            s = vadd(a, b)
            if not rs.is_root(s):
                continue
            pairs += 1
            entries = dict(L.table.get((rs.index[a], rs.index[b]), ()))
            n_ab = entries.get(rs.index[s], 0)
            lo, up = root_string(rs, a, b)
            if abs(n_ab) != lo + 1:
                magnitudes_ok = False
            rev = dict(L.table.get((rs.index[vneg(a)], rs.index[vneg(b)]), ()))
            n_opp = rev.get(rs.index[vneg(s)], 0)
            if n_opp != -n_ab:
                opposite_sign_ok = False
            if n_opp == n_ab:
                literal += 1
            # Squared-constant identity through the same root string.
            expect = up * (lo + 1) * inner(rs, s, s) / inner(rs, b, b)
            if Fraction(n_ab) ** 2 != expect:
                string_failures.append((a, b, n_ab, expect))

    cartan_action_ok = True
    for k in range(rs.rank):
        for i, a in enumerate(rs.roots):
            entries = dict(L.table.get((L.h_index(k), i), ()))
            want = int(cartan_integer(rs, a, rs.simple[k]))
            if entries.get(i, 0) != want or len(entries) > 1:
                cartan_action_ok = False

    coroot_ok = True
    for a in rs.positive:
        i, j = rs.index[a], rs.index[vneg(a)]
        entries = dict(L.table.get((i, j), ()))
        want = {L.h_index(k): c for k, c in enumerate(coroot_coords(rs, a)) if c != 0}
        if entries != {k: Fraction(v) for k, v in want.items()} and entries != want:
            coroot_ok = False

    if jacobi == "auto":
        jacobi = "exhaustive" if L.dim <= 25 else 10000
    dim = L.dim
    if jacobi == "exhaustive":
        triples = ((i, j, k) for i in range(dim) for j in range(i + 1, dim)
                   for k in range(j + 1, dim))
        count = dim * (dim - 1) * (dim - 2) // 6
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(dim), rng.randrange(dim), rng.randrange(dim))
                   for _ in range(int(jacobi)))
        count = int(jacobi)

    jacobi_ok = True
    one = Fraction(1)
    for i, j, k in triples:
        ei, ej, ek = {i: one}, {j: one}, {k: one}
        acc: SparseVec = {}
        for u, v, w in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
            for idx, val in bracket_sparse(L, u, bracket_sparse(L, v, w)).items():
                acc[idx] = acc.get(idx, Fraction(0)) + val
        if any(v != 0 for v in acc.values()):
            jacobi_ok = False
            break

    return ChevalleyReport(antisymmetric=antisymmetric, integral=integral,
                           magnitudes_ok=magnitudes_ok, cartan_action_ok=cartan_action_ok,
                           coroot_ok=coroot_ok, opposite_sign_ok=opposite_sign_ok,
                           literal_paper_sign_count=literal, pair_count=pairs,
                           string_identity_failures=string_failures,
                           jacobi_ok=jacobi_ok, jacobi_triples=count)


# ---------------------------------------------------------------------------
# gl_n realization

Matrix = tuple[tuple[Fraction, ...], ...]


def _zero_matrix(n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(n)]


def gl_realization(n: int) -> tuple[IntegralLieAlgebra, list[Matrix]]:
    """gl_n as A_{n-1} plus a rank-1 center, with matching elementary matrices.

    Returns the abstract algebra and one n x n matrix per basis vector:
    x_{e_i - e_j} -> E_ij, h_k -> E_kk - E_{k+1,k+1}, z -> identity.  The
    bracket table agrees with matrix commutators entry for entry.
    """
    rs = build_root_system(CartanType("A", n - 1))
    L = build_chevalley_basis(rs, center_rank=1)
    mats: list[Matrix] = []
    for b in L.basis:
        m = _zero_matrix(n)
        if b.kind == "x":
            a = rs.roots[b.index]
            i = next(k for k, c in enumerate(a) if c == 1)
            j = next(k for k, c in enumerate(a) if c == -1)
            m[i][j] = Fraction(1)
        elif b.kind == "h":
            m[b.index][b.index] = Fraction(1)
            m[b.index + 1][b.index + 1] = Fraction(-1)
        else:
            for i in range(n):
                m[i][i] = Fraction(1)
        mats.append(tuple(tuple(row) for row in m))
    return L, mats
