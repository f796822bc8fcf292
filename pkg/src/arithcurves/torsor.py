"""Arithmetic GL_n-torsors as metrized lattices.

Per archimedean place the Lie algebra gl_n over R or C is flattened to a real
coordinate space (complex places contribute real and imaginary parts).  In
that basis the Cartan involution is X -> -X^T (resp. X -> -conj(X)^T), the
trace form <X,Y> = Tr XY (resp. Re Tr XY) plays the role of H_K, and the
canonical positive form -<X, theta_K Y> becomes exactly the identity matrix.

A compatible metric is stored together with the Gram matrix it induces on the
standard representation; that n x n block is what the determinant line bundle
sees, via the square root of its Gram determinant.  Compatibility of the Lie
algebra block is checked by the four involution/definiteness clauses with
residuals measured in max norm relative to the operand scale, at 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arakelov import (FractionalIdeal, MetrizedLineBundle, NumberField,
                       arithmetic_degree)
from .errors import ArithCurvesError, DimensionMismatch, SingularForm, SingularMatrix

TOL = 1e-9


@dataclass(frozen=True)
class CartanData:
    n: int
    place: str                     # "real" | "complex"
    theta_K: np.ndarray            # involution on the flattened Lie algebra
    H_K: np.ndarray                # trace form as a symmetric matrix
    H_can: np.ndarray              # canonical positive form -H_K theta_K (identity)

    @property
    def dim(self) -> int:
        return self.theta_K.shape[0]


def _transpose_perm(n: int) -> np.ndarray:
    p = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            p[i * n + j, j * n + i] = 1.0
    return p


def canonical_form(n: int, place: str = "real") -> CartanData:
    """theta_K, H_K and the canonical positive form on gl_n at one place."""
    if n < 1:
        raise ArithCurvesError("matrix size must be >= 1")
    if place not in ("real", "complex"):
        raise ArithCurvesError(f"unknown place kind {place!r}")
    p = _transpose_perm(n)
    if place == "real":
        theta = -p
        hk = p.copy()
    else:
        z = np.zeros_like(p)
        theta = np.block([[-p, z], [z, p]])
        hk = np.block([[p, z], [z, -p]])
    hcan = -hk @ theta
    assert np.allclose(hcan, np.eye(theta.shape[0]))
    return CartanData(n=n, place=place, theta_K=theta, H_K=hk, H_can=hcan)


def ad_matrix(cd: CartanData, g: np.ndarray) -> np.ndarray:
    """Matrix of X -> g X g^{-1} on the flattened coordinates."""
    g = np.asarray(g, dtype=complex if cd.place == "complex" else float)
    if g.shape != (cd.n, cd.n):
        raise DimensionMismatch(f"expected {cd.n} x {cd.n} group element")
    det = np.linalg.det(g)
    if abs(det) < 1e-12:
        raise SingularMatrix("group element is not invertible")
    h = np.linalg.inv(g)
    m = np.kron(g, h.T)
    if cd.place == "real":
        return m.real
    return np.block([[m.real, -m.imag], [m.imag, m.real]])


def fine_involution(cd: CartanData, H: np.ndarray) -> np.ndarray:
    """theta_H = -H_K^{-1} H."""
    H = np.asarray(H, dtype=float)
    if H.shape != (cd.dim, cd.dim):
        raise DimensionMismatch(f"form must be {cd.dim} x {cd.dim}")
    try:
        return -np.linalg.solve(cd.H_K, H)
    except np.linalg.LinAlgError as exc:            # pragma: no cover - H_K is unimodular
        raise SingularForm("H_K is singular on this space") from exc


def _rel(defect: np.ndarray, reference: np.ndarray) -> float:
    return float(np.abs(defect).max() / (1.0 + np.abs(reference).max()))


def center_basis(cd: CartanData) -> np.ndarray:
    """Orthonormal basis of the flattened center (scalar matrices)."""
    n = cd.n
    u = np.eye(n).reshape(-1) / math.sqrt(n)
    if cd.place == "real":
        return u[:, None]
    z = np.zeros_like(u)
    return np.stack([np.concatenate([u, z]), np.concatenate([z, u])], axis=1)


def semisimple_basis(cd: CartanData) -> np.ndarray:
    """Orthonormal basis of the trace-zero block (complement of the center)."""
    u = center_basis(cd)
    proj = np.eye(cd.dim) - u @ u.T
    vecs, vals, _ = np.linalg.svd(proj)
    return vecs[:, vals > 0.5]


@dataclass
class CompatibilityReport:
    """Lemma-7 clauses on the trace-zero block plus the center-splitting checks.

    A compatible metric splits as (trace-zero block) + (any positive metric on
    the center); the fine involution is checked on the trace-zero block, where
    the determinant-free part of the group acts, and the center only has to
    stay positive and uncoupled.
    """

    involution_residual: float        # theta_H^2 vs identity on the trace-zero block
    reflection_residual: float        # H_K H^{-1} H_K vs H on the trace-zero block
    plus_max_eig: float               # H_K on the +1 eigenspace (must be < 0)
    minus_min_eig: float              # H_K on the -1 eigenspace (must be > 0)
    cross_residual: float             # H_K-orthogonality of the eigenspaces
    isometry_residual: float          # pullback of H^{-1} along H_K vs H
    block_residual: float             # coupling between trace-zero block and center
    center_min_eig: float             # center block must stay positive definite
    tol: float = TOL

    @property
    def involution_ok(self) -> bool:
        return self.involution_residual < self.tol

    @property
    def reflection_ok(self) -> bool:
        return self.reflection_residual < self.tol

    @property
    def eigenspace_ok(self) -> bool:
        return bool(self.plus_max_eig < -self.tol and self.minus_min_eig > self.tol
                    and self.cross_residual < self.tol)

    @property
    def isometry_ok(self) -> bool:
        return self.isometry_residual < self.tol

    @property
    def splitting_ok(self) -> bool:
        return bool(self.block_residual < self.tol and self.center_min_eig > self.tol)

    @property
    def ok(self) -> bool:
        return (self.involution_ok and self.reflection_ok and self.eigenspace_ok
                and self.isometry_ok and self.splitting_ok)

    def as_dict(self) -> dict:
        return {
            "involution": {"ok": self.involution_ok, "residual": float(self.involution_residual)},
            "reflection": {"ok": self.reflection_ok, "residual": float(self.reflection_residual)},
            "eigenspaces": {"ok": self.eigenspace_ok, "plus_max_eig": float(self.plus_max_eig),
                            "minus_min_eig": float(self.minus_min_eig),
                            "cross_residual": float(self.cross_residual)},
            "isometry": {"ok": self.isometry_ok, "residual": float(self.isometry_residual)},
            "splitting": {"ok": self.splitting_ok, "block_residual": float(self.block_residual),
                          "center_min_eig": float(self.center_min_eig)},
            "ok": self.ok,
        }


def verify_compatibility(cd: CartanData, H: np.ndarray, tol: float = TOL) -> CompatibilityReport:
    """Clause-by-clause compatibility check of an SPD form on the Lie algebra."""
    H = np.asarray(H, dtype=float)
    if H.shape != (cd.dim, cd.dim):
        raise DimensionMismatch(f"form must be {cd.dim} x {cd.dim}")
    u = center_basis(cd)
    vs = semisimple_basis(cd)
    hz = u.T @ H @ u
    center_min = float(np.linalg.eigvalsh((hz + hz.T) / 2).min())
    if vs.shape[1] == 0:
        return CompatibilityReport(0.0, 0.0, -math.inf, math.inf, 0.0, 0.0,
                                   0.0, center_min, tol)
    block = _rel(vs.T @ H @ u, H)

    hss = vs.T @ H @ vs
    hkss = vs.T @ cd.H_K @ vs
    dim_ss = hss.shape[0]
    theta = -np.linalg.solve(hkss, hss)
    eye = np.eye(dim_ss)
    r_inv = _rel(theta @ theta - eye, eye)
    r_refl = _rel(hkss @ np.linalg.solve(hss, hkss) - hss, hss)
    r_iso = _rel(hkss.T @ np.linalg.solve(hss, hkss) - hss, hss)

    def basis(projector: np.ndarray) -> np.ndarray:
        vecs, vals, _ = np.linalg.svd(projector)
        return vecs[:, vals > 0.5]

    vp = basis((eye + theta) / 2.0)
    vm = basis((eye - theta) / 2.0)
    bp = vp.T @ hkss @ vp
    bm = vm.T @ hkss @ vm
    plus_max = float(np.linalg.eigvalsh((bp + bp.T) / 2).max()) if vp.size else -math.inf
    minus_min = float(np.linalg.eigvalsh((bm + bm.T) / 2).min()) if vm.size else math.inf
    cross = float(np.abs(vp.T @ hkss @ vm).max()) if vp.size and vm.size else 0.0

    return CompatibilityReport(involution_residual=r_inv, reflection_residual=r_refl,
                               plus_max_eig=plus_max, minus_min_eig=minus_min,
                               cross_residual=cross / (1.0 + np.abs(hkss).max()),
                               isometry_residual=r_iso, block_residual=block,
                               center_min_eig=center_min, tol=tol)


@dataclass(frozen=True)
class CompatibleMetric:
    """A compatible form on gl_n plus the Gram matrix on the standard rep."""

    cd: CartanData
    H: np.ndarray
    std: np.ndarray                  # n x n SPD (real) or Hermitian PD (complex)
    witness: np.ndarray | None = None

    def verify(self, tol: float = TOL) -> CompatibilityReport:
        return verify_compatibility(self.cd, self.H, tol)


def canonical_metric(cd: CartanData) -> CompatibleMetric:
    eye = np.eye(cd.n, dtype=complex if cd.place == "complex" else float)
    return CompatibleMetric(cd=cd, H=cd.H_can.copy(), std=eye, witness=eye)


def witnessed_metric(cd: CartanData, g: np.ndarray) -> CompatibleMetric:
    """Pullback of the canonical metric along g (orbit of Prop-8 type actions)."""
    g = np.asarray(g, dtype=complex if cd.place == "complex" else float)
    ad = ad_matrix(cd, g)
    h = ad.T @ cd.H_can @ ad
    std = g.conj().T @ g if cd.place == "complex" else g.T @ g
    return CompatibleMetric(cd=cd, H=h, std=std, witness=g)


def act(cd: CartanData, g: np.ndarray, metric):
    """Right action (H, g) -> Ad(g)^T H Ad(g); acts on std and witness too."""
    ad = ad_matrix(cd, g)
    if isinstance(metric, CompatibleMetric):
        g = np.asarray(g, dtype=complex if cd.place == "complex" else float)
        std = g.conj().T @ metric.std @ g if cd.place == "complex" else g.T @ metric.std @ g
        wit = None if metric.witness is None else metric.witness @ g
        return CompatibleMetric(cd=cd, H=ad.T @ metric.H @ ad, std=std, witness=wit)
    H = np.asarray(metric, dtype=float)
    return ad.T @ H @ ad


# ---------------------------------------------------------------------------
# Arithmetic torsors and slopes

@dataclass(frozen=True)
class ArithmeticTorsor:
    """Rank-n pseudo-lattice (one ideal per basis vector) with place metrics."""

    field: NumberField
    rank: int
    ideals: tuple[FractionalIdeal, ...]
    metrics: tuple[CompatibleMetric, ...]    # real places first, then complex

    def __post_init__(self):
        r1, r2 = self.field.signature
        if len(self.ideals) != self.rank:
            raise ArithCurvesError("need one ideal per basis vector")
        if len(self.metrics) != r1 + r2:
            raise ArithCurvesError(f"need {r1 + r2} place metrics")
        kinds = ["real"] * r1 + ["complex"] * r2
        for kind, m in zip(kinds, self.metrics):
            if m.cd.place != kind or m.cd.n != self.rank:
                raise ArithCurvesError("metric place data does not match the field")
            report = m.verify()
            if not report.ok:
                raise ArithCurvesError(f"incompatible metric at a {kind} place: "
                                       f"{report.as_dict()}")


def trivial_torsor(K: NumberField, n: int) -> ArithmeticTorsor:
    r1, r2 = K.signature
    unit = FractionalIdeal.ring_of_integers(K)
    metrics = tuple(canonical_metric(canonical_form(n, "real")) for _ in range(r1)) + \
        tuple(canonical_metric(canonical_form(n, "complex")) for _ in range(r2))
    return ArithmeticTorsor(field=K, rank=n, ideals=(unit,) * n, metrics=metrics)


def determinant_bundle(T: ArithmeticTorsor) -> MetrizedLineBundle:
    """Ideal product with the Gram-determinant metric per place."""
    ideal = T.ideals[0]
    for i in T.ideals[1:]:
        ideal = ideal * i
    rhos = []
    for m in T.metrics:
        d = np.linalg.det(np.asarray(m.std))
        d = float(abs(d.real)) if np.iscomplexobj(m.std) else float(d)
        rhos.append(math.sqrt(d))
    return MetrizedLineBundle(ideal, tuple(rhos))


def slope(T: ArithmeticTorsor, k: int = 1) -> float:
    """<det^k, mu> = k * deg_ar of the determinant line bundle."""
    return k * arithmetic_degree(T.field, determinant_bundle(T))


# ---------------------------------------------------------------------------
# Cocharacter pairing

@dataclass(frozen=True)
class CocharacterLattice:
    rank: int
    pairing_matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = np.array(self.pairing_matrix, dtype=float)
        if m.shape != (self.rank, self.rank):
            raise DimensionMismatch("pairing matrix must be rank x rank")
        if abs(np.linalg.det(m)) < 0.5:
            raise ArithCurvesError("cocharacter pairing must be non-degenerate")


def gl_cocharacter_lattice(n: int) -> CocharacterLattice:
    """Rank-1 lattice of GL_n with <det, central cocharacter> = n."""
    return CocharacterLattice(rank=1, pairing_matrix=((n,),))


def cochar_pairing(L: CocharacterLattice, chi, mu) -> int:
    chi = [int(x) for x in chi]
    mu = [int(x) for x in mu]
    if len(chi) != L.rank or len(mu) != L.rank:
        raise DimensionMismatch("cocharacter vectors must match the lattice rank")
    return sum(chi[i] * L.pairing_matrix[i][j] * mu[j]
               for i in range(L.rank) for j in range(L.rank))
