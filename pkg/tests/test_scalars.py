import random
from fractions import Fraction

import pytest

from quadfourier.scalars import Cyclotomic, Rational, complex_str


def test_zeta3_square():
    z = Cyclotomic.root_power(3, 1)
    assert (z * z).coeffs == (Fraction(-1), Fraction(-1))


def test_additive_identity():
    for p in (2, 3, 5, 7):
        x = Cyclotomic(p, range(1, p))
        assert x + Cyclotomic.zero(p) == x


def test_sum_of_nontrivial_cube_roots():
    z = Cyclotomic.root_power(3, 1)
    assert z + z * z == Cyclotomic.from_rational(3, -1)


def test_mismatched_primes_rejected():
    with pytest.raises(ValueError):
        Cyclotomic.one(3) + Cyclotomic.one(5)


def test_conj_examples():
    # p=3: conj(a + b z) = (a - b) - b z
    a, b = Fraction(5), Fraction(2)
    x = Cyclotomic(3, (a, b))
    assert x.conj() == Cyclotomic(3, (a - b, -b))
    # rationals are fixed
    r = Cyclotomic.from_rational(7, Fraction(3, 4))
    assert r.conj() == r
    # p=5: zeta^2 + zeta^3 is conjugation-symmetric
    x = Cyclotomic.root_power(5, 2) + Cyclotomic.root_power(5, 3)
    assert x.conj() == x


def test_conj_involution_and_ring_hom():
    rng = random.Random(7)
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7])
        x = Cyclotomic(p, [rng.randint(-9, 9) for _ in range(p - 1)])
        y = Cyclotomic(p, [rng.randint(-9, 9) for _ in range(p - 1)])
        assert x.conj().conj() == x
        assert (x * y).conj() == x.conj() * y.conj()
        assert (x + y).conj() == x.conj() + y.conj()


def test_ring_axioms_random_triples():
    rng = random.Random(11)
    for _ in range(1000):
        p = rng.choice([2, 3, 5])
        x, y, z = (
            Cyclotomic(p, [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(p - 1)])
            for _ in range(3)
        )
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z


def test_root_power_reduction():
    for p in (2, 3, 5, 7):
        z = Cyclotomic.root_power(p, 1)
        acc = Cyclotomic.one(p)
        for _ in range(p):
            acc = acc * z
        assert acc == Cyclotomic.one(p)
        assert Cyclotomic.root_power(p, p) == Cyclotomic.one(p)


def test_complex_embedding():
    z = Cyclotomic.root_power(3, 1)
    val = z.to_complex()
    assert abs(val - complex(-0.5, 0.8660254037844386)) < 1e-12
    assert Cyclotomic.from_rational(3, -1).to_complex() == complex(-1.0, 0.0)
    real = (z + z * z).to_complex()
    assert abs(real - complex(-1.0, 0.0)) < 1e-12


def test_complex_embedding_is_ring_hom_and_norm():
    rng = random.Random(3)
    for _ in range(1000):
        p = rng.choice([3, 5, 7])
        x = Cyclotomic(p, [rng.randint(-10**6, 10**6) for _ in range(p - 1)])
        y = Cyclotomic(p, [rng.randint(-100, 100) for _ in range(p - 1)])
        assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9 * (
            1 + abs(x.to_complex()) * abs(y.to_complex())
        )
        norm = (x * x.conj()).to_complex()
        assert abs(abs(x.to_complex()) ** 2 - norm.real) < 1e-9 * (1 + norm.real)
        assert abs(norm.imag) < 1e-9 * (1 + norm.real)


def test_rational_type_is_reduced_fraction():
    assert Rational(4, 8) == Rational(1, 2)
    assert Rational(3, -6).denominator > 0


def test_scale_and_rational_queries():
    x = Cyclotomic(5, (1, 2, 0, 0)).scale(Fraction(1, 3))
    assert x.coeffs[0] == Fraction(1, 3)
    r = Cyclotomic.from_rational(5, Fraction(7, 2))
    assert r.is_rational() and r.as_rational() == Fraction(7, 2)
    with pytest.raises(ValueError):
        Cyclotomic.root_power(5, 1).as_rational()


def test_display_formats():
    x = Cyclotomic(3, (Fraction(1, 2), Fraction(-2)))
    assert str(x) == "1/2 + -2*z"
    assert str(Cyclotomic.zero(3)) == "0"
    assert complex_str(complex(-1, 0)) == "(-1.000000, 0.000000)"


def test_immutability_and_hash():
    x = Cyclotomic.root_power(5, 2)
    with pytest.raises(AttributeError):
        x.prime = 7
    assert hash(x) == hash(Cyclotomic.root_power(5, 2))
