"""Exact computational algebra for split root systems, Chevalley bases, the
characteristic morphism, metrized lattices over rings of integers, and
spectral/cameral curve analysis."""

from .rootsys import CartanType, RootSystem, build_root_system, weyl_group
from .chevalley import IntegralLieAlgebra, build_chevalley_basis, verify_chevalley
from .charmorph import chi_gl, chi_torus, fundamental_invariants
from .arakelov import NumberField, FractionalIdeal, MetrizedLineBundle, arithmetic_degree
from .curve import HiggsField, spectral_curve, cameral_curve

__all__ = [
    "CartanType", "RootSystem", "build_root_system", "weyl_group",
    "IntegralLieAlgebra", "build_chevalley_basis", "verify_chevalley",
    "chi_gl", "chi_torus", "fundamental_invariants",
    "NumberField", "FractionalIdeal", "MetrizedLineBundle", "arithmetic_degree",
    "HiggsField", "spectral_curve", "cameral_curve",
]
