import random
from fractions import Fraction

import numpy as np
import pytest

from quadfourier import quadric as Q
from quadfourier.characters import CharacterContext
from quadfourier.fields import FieldSpec
from quadfourier.funcspace import FunctionOnSet
from quadfourier.scalars import Cyclotomic


@pytest.fixture(scope="module")
def ctx3():
    return CharacterContext(FieldSpec(3))


@pytest.fixture(scope="module")
def q23(ctx3):
    return Q.QuadricSet(2, ctx3)


def test_point_counts_match_bruteforce():
    for d, q in [(1, 2), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        spec = FieldSpec(q)
        assert Q.count_points_bruteforce(d, spec) == Q.point_count_formula(d, q)


def test_enumeration_counts(ctx3):
    assert Q.QuadricSet(2, ctx3).size == 33
    assert Q.QuadricSet(3, ctx3).size == 261
    ctx2 = CharacterContext(FieldSpec(2))
    pts = Q.QuadricSet(1, ctx2).points
    coords = [
        tuple(e.enc for e in p.u) + tuple(e.enc for e in p.u_dual) for p in pts
    ]
    assert coords == [(0, 0), (0, 1), (1, 0)]


def test_budget_rejected():
    ctx = CharacterContext(FieldSpec(5))
    with pytest.raises(ValueError, match="budget"):
        Q.QuadricSet(3, ctx, max_points=100)
    with pytest.raises(ValueError):
        Q.QuadricSet(5, ctx)
    with pytest.raises(ValueError):
        Q.QuadricSet(4, CharacterContext(FieldSpec(7)))


def test_off_quadric_point_rejected(ctx3):
    one = ctx3.field.one()
    with pytest.raises(ValueError):
        Q.QuadricPoint((one, one), (one, one))


def test_kernel_values(ctx3, q23):
    origin = q23.points.decode(0)
    assert origin.is_zero()
    for y in list(q23.points)[:10]:
        assert Q.quadric_kernel(ctx3, origin, y) == Cyclotomic.from_rational(3, -1)
        assert Q.quadric_kernel(ctx3, y, y) == Cyclotomic.from_rational(3, -1)
    f = ctx3.field
    x = Q.QuadricPoint((f.element(1), f.element(0)), (f.element(0), f.element(1)))
    y = Q.QuadricPoint((f.element(0), f.element(1)), (f.element(1), f.element(0)))
    assert Q.pairing_sum(x, y) == f.element(2)
    assert Q.quadric_kernel(ctx3, x, y) == Cyclotomic.from_rational(3, 2)


def test_kernel_symmetry_exhaustive(q23):
    args = q23.kernel_args(np.arange(33), np.arange(33))
    assert (args == args.T).all()


def test_scaling_covariance():
    for q in (3, 5):
        ctx = CharacterContext(FieldSpec(q))
        qs = Q.QuadricSet(2, ctx)
        all_idx = np.arange(qs.size)
        for t in range(q - 1):
            left = qs.kernel_args(qs.scaled_idx[t], all_idx)
            right = qs.kernel_args(all_idx, qs.scaled_idx[t])
            assert (left == right).all()


def test_fast_path_matches_kernel_operator(ctx3, q23):
    op = Q.kernel_operator(q23)
    rng = random.Random(0)
    for i in range(q23.size):
        f = FunctionOnSet.delta(q23.points, 3, q23.points.decode(i))
        assert Q.fourier_raw(q23, f) == op.apply(f)
    for _ in range(3):
        f = FunctionOnSet(
            q23.points,
            3,
            [
                Cyclotomic(3, (Fraction(rng.randint(-4, 4), 2), Fraction(rng.randint(-4, 4))))
                for _ in range(q23.size)
            ],
        )
        assert Q.fourier_raw(q23, f) == op.apply(f)


def test_fast_path_matches_kernel_operator_twisted():
    field = FieldSpec(3)
    ctx = CharacterContext(field, twist=field.element(2))
    qs = Q.QuadricSet(2, ctx)
    op = Q.kernel_operator(qs)
    rng = random.Random(1)
    for i in rng.sample(range(qs.size), 6):
        f = FunctionOnSet.delta(qs.points, 3, qs.points.decode(i))
        assert Q.fourier_raw(qs, f) == op.apply(f)


def test_delta_transform_is_kernel_row(ctx3, q23):
    x = q23.points.decode(5)
    img = Q.fourier_raw(q23, FunctionOnSet.delta(q23.points, 3, x))
    for y in q23.points:
        assert img(y) == Q.quadric_kernel(ctx3, x, y)


def test_constant_transform(ctx3, q23):
    ones = FunctionOnSet.constant(q23.points, Cyclotomic.one(3))
    img = Q.fourier_raw(q23, ones)
    assert img(q23.points.decode(0)) == Cyclotomic.from_rational(3, -33)


def test_project_special(ctx3, q23):
    origin = q23.points.decode(0)
    assert Q.project_special(q23, FunctionOnSet.delta(q23.points, 3, origin)).is_zero()
    const = FunctionOnSet.constant(q23.points, Cyclotomic.one(3))
    assert Q.project_special(q23, const).is_zero()
    x = q23.points.decode(4)
    pf = Q.project_special(q23, FunctionOnSet.delta(q23.points, 3, x))
    expect = FunctionOnSet.delta(q23.points, 3, x)
    orbit = Q.scaling_orbit(x)
    for y in orbit:
        expect = expect - FunctionOnSet.delta(q23.points, 3, y).scale(Fraction(1, len(orbit)))
    assert pf == expect
    assert Q.project_special(q23, pf) == pf
    assert pf(origin).is_zero()
    # zero orbit averages at every point
    for y in q23.points:
        total = Cyclotomic.zero(3)
        for z in Q.scaling_orbit(y):
            total = total + pf(z)
        assert total.is_zero()


def test_generic_projector_agrees(ctx3, q23):
    proj = Q.special_projector(q23)
    rng = random.Random(2)
    for _ in range(3):
        f = FunctionOnSet(
            q23.points,
            3,
            [Cyclotomic(3, (rng.randint(-3, 3), rng.randint(-3, 3))) for _ in range(33)],
        )
        assert proj.apply(f) == Q.project_special(q23, f)


def test_transform_preserves_special(ctx3, q23):
    rng = random.Random(3)
    f = FunctionOnSet(
        q23.points,
        3,
        [Cyclotomic(3, (rng.randint(-3, 3), 0)) for _ in range(33)],
    )
    pf = Q.project_special(q23, f)
    img = Q.fourier_raw(q23, pf)
    assert Q.project_special(q23, img) == img


def test_involution_on_special_generators(ctx3):
    for d, q in [(2, 3), (2, 5)]:
        ctx = CharacterContext(FieldSpec(q))
        qs = Q.QuadricSet(d, ctx)
        gens = qs.special_generator_planes(np.arange(qs.size))
        f2 = qs.raw_transform_planes(qs.raw_transform_planes(gens))
        assert (f2 == q ** (2 * d) * gens).all()


def test_normalized_involution(ctx3, q23):
    x = q23.points.decode(7)
    pf = Q.project_special(q23, FunctionOnSet.delta(q23.points, 3, x))
    assert Q.fourier_normalized(q23, Q.fourier_normalized(q23, pf)) == pf


def test_classify_pairs(ctx3, q23):
    pts = q23.points
    origin = pts.decode(0)
    x = pts.decode(3)
    lam2 = ctx3.field.element(2)
    assert Q.classify_pair(origin, origin) is Q.Stratum.ORIGIN_BOTH
    assert Q.classify_pair(x, x) is Q.Stratum.EQUAL_NONZERO
    assert Q.classify_pair(x, x.scaled(lam2)) is Q.Stratum.PROPORTIONAL_DISTINCT
    assert Q.classify_pair(origin, x) is Q.Stratum.ONE_ZERO
    assert Q.classify_pair(x, origin) is Q.Stratum.ONE_ZERO
    f = ctx3.field
    a = Q.QuadricPoint((f.element(1), f.element(0)), (f.element(0), f.element(1)))
    b = Q.QuadricPoint((f.element(0), f.element(1)), (f.element(1), f.element(0)))
    assert Q.classify_pair(a, b) is Q.Stratum.NON_PROP_GENERIC
    # orthogonal non-proportional pair
    d_ = Q.QuadricPoint((f.element(1), f.element(0)), (f.element(0), f.element(2)))
    assert Q.classify_pair(a, d_) is Q.Stratum.NON_PROP_ORTHOGONAL


def test_case_formula_values():
    assert Q.case_sum_formula(Q.Stratum.ORIGIN_BOTH, 2, 3) == 33
    assert Q.case_sum_formula(Q.Stratum.EQUAL_NONZERO, 2, 3) == 60
    assert Q.case_sum_formula(Q.Stratum.PROPORTIONAL_DISTINCT, 2, 3) == -21
    assert Q.case_sum_formula(Q.Stratum.ONE_ZERO, 2, 3) == 6
    assert Q.case_sum_formula(Q.Stratum.NON_PROP_ORTHOGONAL, 2, 3) == 6
    assert Q.case_sum_formula(Q.Stratum.NON_PROP_GENERIC, 2, 3) == -3


def test_double_kernel_sum_exhaustive_small(ctx3, q23):
    for i in range(q23.size):
        x = q23.points.decode(i)
        for j in range(q23.size):
            z = q23.points.decode(j)
            val = Q.double_kernel_sum(q23, x, z)
            assert val.is_rational()
            expect = Q.case_sum_formula(Q.classify_pair(x, z), 2, 3)
            assert val.as_rational() == expect


def test_unit_scaling_kernel_sum(ctx3, q23):
    rng = random.Random(4)
    for _ in range(30):
        x = q23.points.decode(rng.randrange(q23.size))
        y = q23.points.decode(rng.randrange(q23.size))
        total = Cyclotomic.zero(3)
        for lam in ctx3.field.units():
            total = total + Q.quadric_kernel(ctx3, x, y.scaled(lam))
        expect = 1 if not Q.pairing_sum(x, y).is_zero() else 1 - 3
        assert total == Cyclotomic.from_rational(3, expect)


def test_mismatched_quadrics_rejected(ctx3, q23):
    other = Q.QuadricSet(3, ctx3)
    with pytest.raises(ValueError):
        Q.classify_pair(q23.points.decode(1), other.points.decode(1))
    with pytest.raises(ValueError):
        Q.quadric_kernel(ctx3, q23.points.decode(1), other.points.decode(1))
