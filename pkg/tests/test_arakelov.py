import math
import random
from fractions import Fraction

import pytest

from arithcurves.arakelov import (FractionalIdeal, MetrizedLineBundle, NumberField,
                                  arithmetic_degree, factor_prime, ideal_norm,
                                  minkowski_embed, parse_element, parse_field,
                                  principal_bundle, tensor, trivial_bundle)
from arithcurves.errors import ArithCurvesError, ZeroIdeal

QQ = NumberField(0)
Q2 = NumberField(2)
QI = NumberField(-1)
Q5M = NumberField(-5)
FIELDS = [QQ, Q2, QI, Q5M, NumberField(5)]


def minor_gcd_index(rows):
    """Index of the span of integer rows in Z^2: gcd of the 2x2 minors."""
    g = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            (a, b), (c, d) = rows[i], rows[j]
            g = math.gcd(g, abs(a * d - b * c))
    return g


def rand_element(K, rng, span=9):
    while True:
        a = Fraction(rng.randint(-span, span), rng.randint(1, 6))
        b = Fraction(rng.randint(-span, span), rng.randint(1, 6)) if K.degree == 2 else 0
        x = K.element(a, b)
        if x:
            return x


def test_field_construction():
    assert QQ.signature == (1, 0) and QQ.degree == 1
    assert Q2.signature == (2, 0)
    assert QI.signature == (0, 1)
    assert NumberField(5).omega_poly == (1, 1)          # w = (1+sqrt5)/2, w^2 = w + 1
    assert QI.omega_poly == (0, -1)
    assert parse_field("Q(sqrt(-5))") == Q5M
    assert parse_field("Q(i)") == QI
    with pytest.raises(ArithCurvesError):
        NumberField(12)                                  # not squarefree
    with pytest.raises(ArithCurvesError):
        parse_field("Q(sqrt(2)/3)")


def test_element_arithmetic_and_parse():
    x = parse_element(Q5M, "1/2 - 3/4*w")
    assert x.a == Fraction(1, 2) and x.b == Fraction(-3, 4)
    assert parse_element(QI, "1+i") == QI.element(1, 1)
    assert parse_element(Q2, "w") == Q2.omega
    y = Q5M.element(2, 3)
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * y == y * x
    w = Q2.omega
    assert w * w == Q2.element(2)                        # sqrt(2)^2 = 2
    assert str(QQ.element(Fraction(3, 2))) == "3/2"


def test_norm_trace_conj():
    x = QI.element(1, 1)                                 # 1 + i
    assert x.norm() == 2 and x.trace() == 2
    assert x * x.conj() == QI.element(x.norm())
    g = NumberField(5).omega                             # golden ratio
    assert g.norm() == -1 and g.trace() == 1


def test_minkowski_examples():
    assert minkowski_embed(QQ, QQ.element(3)) == [3.0]
    em = minkowski_embed(Q2, Q2.omega)
    assert em[0] == pytest.approx(math.sqrt(2)) and em[1] == pytest.approx(-math.sqrt(2))
    (z,) = minkowski_embed(QI, QI.element(1, 1))
    assert z == pytest.approx(1 + 1j)


def test_ideal_norm_examples():
    assert ideal_norm(QQ, FractionalIdeal.from_elements(QQ, [QQ.element(2)])) == 2
    ideal = FractionalIdeal.from_elements(Q5M, [Q5M.element(2), Q5M.element(1, 1)])
    assert ideal_norm(Q5M, ideal) == 2
    # oracle: index of the generated Z-module via gcd of 2x2 minors
    gens = [Q5M.element(2), Q5M.element(2) * Q5M.omega,
            Q5M.element(1, 1), Q5M.element(1, 1) * Q5M.omega]
    rows = [(int(g.a), int(g.b)) for g in gens]
    assert minor_gcd_index(rows) == 2
    assert ideal_norm(QI, FractionalIdeal.principal(QI.element(1, 1))) == 2


def test_ideal_norm_multiplicative():
    rng = random.Random(4)
    for K in [QI, Q5M, Q2]:
        for _ in range(15):
            i1 = FractionalIdeal.principal(rand_element(K, rng))
            i2 = FractionalIdeal.from_elements(K, [rand_element(K, rng),
                                                   rand_element(K, rng)])
            assert (i1 * i2).norm() == i1.norm() * i2.norm()


def test_principal_norm_is_element_norm():
    rng = random.Random(8)
    for K in FIELDS:
        for _ in range(10):
            x = rand_element(K, rng)
            assert FractionalIdeal.principal(x).norm() == abs(x.norm())


def test_hnf_canonical_and_membership():
    i1 = FractionalIdeal.from_elements(Q5M, [Q5M.element(2), Q5M.element(1, 1)])
    i2 = FractionalIdeal.from_elements(Q5M, [Q5M.element(1, 1), Q5M.element(2),
                                             Q5M.element(3, 1)])
    assert i1 == i2
    rng = random.Random(1)
    for _ in range(20):
        m, n = rng.randint(-5, 5), rng.randint(-5, 5)
        b1, b2 = i1.basis_elements()
        x = b1 * m + b2 * n
        assert i1.membership_coords(x) == (m, n)
    assert not i1.contains(Q5M.element(1))
    with pytest.raises(ZeroIdeal):
        FractionalIdeal.from_elements(QQ, [QQ.element(0)])


def test_ideal_power():
    two = FractionalIdeal.from_elements(QQ, [QQ.element(2)])
    assert two.power(3).norm() == 8
    assert two.power(0).norm() == 1


def test_degree_trivial_and_scaled():
    assert arithmetic_degree(QQ, trivial_bundle(QQ)) == 0.0
    unit = FractionalIdeal.ring_of_integers(QQ)
    for t in (0.5, 2.0, 7.25):
        bundle = MetrizedLineBundle(unit, (t,))
        assert arithmetic_degree(QQ, bundle) == pytest.approx(-math.log(t), abs=1e-12)


def test_degree_class_number_example():
    """deg of ((2, 1+sqrt(-5)), standard metric) = -log 2 via two sections."""
    ideal = FractionalIdeal.from_elements(Q5M, [Q5M.element(2), Q5M.element(1, 1)])
    bundle = MetrizedLineBundle(ideal, (1.0,))
    d1 = arithmetic_degree(Q5M, bundle, section=Q5M.element(2))
    d2 = arithmetic_degree(Q5M, bundle, section=Q5M.element(1, 1))
    assert d1 == pytest.approx(-math.log(2), abs=1e-9)
    assert d2 == pytest.approx(-math.log(2), abs=1e-9)


def test_degree_section_independent():
    rng = random.Random(17)
    for K in [QQ, Q2, QI, Q5M]:
        ideal = FractionalIdeal.principal(rand_element(K, rng))
        r1, r2 = K.signature
        bundle = MetrizedLineBundle(ideal, tuple(rng.uniform(0.5, 2.0)
                                                 for _ in range(r1 + r2)))
        base = arithmetic_degree(K, bundle)
        for _ in range(10):
            mult = rand_element(K, rng)
            # any nonzero multiple of a basis element is again a section
            s = ideal.basis_elements()[0] * K.element(rng.randint(1, 5))
            assert arithmetic_degree(K, bundle, section=s) == pytest.approx(base, abs=1e-9)


def test_product_formula():
    rng = random.Random(23)
    for K in FIELDS:
        for _ in range(50):
            x = rand_element(K, rng)
            lhs = math.log(abs(x.norm()))
            rhs = sum(e * math.log(abs(s))
                      for e, s in zip(K.place_weights, x.embeddings()))
            assert lhs == pytest.approx(rhs, abs=1e-9)


def test_degree_additive_under_tensor():
    rng = random.Random(31)
    for K in [QQ, Q5M, Q2]:
        r = sum(K.signature)
        for _ in range(10):
            l1 = MetrizedLineBundle(FractionalIdeal.principal(rand_element(K, rng)),
                                    tuple(rng.uniform(0.5, 2.0) for _ in range(r)))
            l2 = MetrizedLineBundle(FractionalIdeal.from_elements(
                K, [rand_element(K, rng), rand_element(K, rng)]),
                tuple(rng.uniform(0.5, 2.0) for _ in range(r)))
            assert arithmetic_degree(K, tensor(l1, l2)) == pytest.approx(
                arithmetic_degree(K, l1) + arithmetic_degree(K, l2), abs=1e-9)


def test_principal_bundle_degree_zero():
    """Transported metric on x O_F: degree 0 is exactly the product formula."""
    rng = random.Random(37)
    for K in FIELDS:
        for _ in range(10):
            x = rand_element(K, rng)
            assert arithmetic_degree(K, principal_bundle(K, x)) == pytest.approx(
                0.0, abs=1e-9)
            # flat rho = 1 metric instead shifts the degree by -log|N(x)|
            flat = MetrizedLineBundle(FractionalIdeal.principal(x),
                                      (1.0,) * sum(K.signature))
            assert arithmetic_degree(K, flat) == pytest.approx(
                -math.log(abs(x.norm())), abs=1e-9)


def test_factor_prime_examples():
    assert factor_prime(QI, 5).splitting == ((1, 1), (1, 1))
    assert factor_prime(QI, 2).splitting == ((1, 2),)
    assert factor_prime(QQ, 11).splitting == ((1, 1),)
    assert factor_prime(QI, 7).splitting == ((2, 1),)


def test_factor_prime_degree_sum():
    for K in [Q2, QI, Q5M, NumberField(5), NumberField(-3)]:
        for p in (2, 3, 5, 7, 11, 13, 41):
            fac = factor_prime(K, p)
            assert sum(f * e for f, e in fac.splitting) == K.degree
    # ramified exactly at primes dividing the discriminant
    for K in [Q2, QI, Q5M, NumberField(5)]:
        for p in (2, 3, 5, 7, 11, 13):
            ram = any(e > 1 for _, e in factor_prime(K, p).splitting)
            assert ram == (K.discriminant % p == 0)


def test_factor_prime_rejects_composite():
    with pytest.raises(ArithCurvesError):
        factor_prime(QI, 6)
