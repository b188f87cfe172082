import random
from fractions import Fraction

import pytest

from quadfourier import mirabolic as mira
from quadfourier import sl2
from quadfourier.characters import CharacterContext
from quadfourier.fields import FieldSpec
from quadfourier.funcspace import FunctionOnSet
from quadfourier.matrices import RectMatrix, random_invertible, random_unimodular
from quadfourier.scalars import Cyclotomic


def space_for(q, n):
    ctx = CharacterContext(FieldSpec(q))
    return ctx, mira.MirabolicSpace(ctx, n)


def test_pairing_is_matrix_product():
    field = FieldSpec(3)
    M = RectMatrix(field, 2, 1, [1, 0])
    N = RectMatrix(field, 1, 2, [1, 0])
    assert mira.monoid_pairing(M, N) == RectMatrix(field, 1, 1, [1])
    Z = RectMatrix.zero(field, 2, 1)
    assert mira.monoid_pairing(Z, N).is_zero()
    with pytest.raises(ValueError):
        mira.monoid_pairing(N, M)


def test_pairing_diagonal_is_identity():
    field = FieldSpec(3)
    rng = random.Random(0)
    ident = RectMatrix.identity(field, 2)
    for _ in range(10):
        g = random_unimodular(field, 3, rng)
        assert mira.monoid_pairing(mira.model_of(g), mira.model_op_of(g)) == ident


def test_pairing_bilinearity():
    field = FieldSpec(5)
    rng = random.Random(1)
    g = random_unimodular(field, 3, rng)
    M, N = mira.model_of(g), mira.model_op_of(g)
    for c in field.units():
        assert mira.monoid_pairing(M, N * c) == mira.monoid_pairing(M, N) * c


def test_delta_zero_image():
    for q, n in [(3, 2), (3, 3), (5, 2)]:
        ctx, sp = space_for(q, n)
        p = ctx.prime
        img = mira.mirabolic_fourier(sp, FunctionOnSet.delta(sp.dom, p, sp.dom.decode(0)))
        expect = Cyclotomic.from_rational(p, sp.scale)
        assert all(v == expect for v in img.values)


def test_involution_exhaustive_n2():
    for q in (2, 3, 4, 5, 7):
        ctx, sp = space_for(q, 2)
        p = ctx.prime
        for i in range(sp.dom.size):
            f = FunctionOnSet.delta(sp.dom, p, sp.dom.decode(i))
            assert mira.mirabolic_fourier_op(sp, mira.mirabolic_fourier(sp, f)) == f


def test_involution_sampled_n3():
    ctx, sp = space_for(3, 3)
    rng = random.Random(2)
    for i in rng.sample(range(sp.dom.size), 20):
        f = FunctionOnSet.delta(sp.dom, 3, sp.dom.decode(i))
        assert mira.mirabolic_fourier_op(sp, mira.mirabolic_fourier(sp, f)) == f


def test_matches_kernel_operator():
    ctx, sp = space_for(3, 2)
    rng = random.Random(3)
    f = FunctionOnSet(
        sp.dom, 3, [Cyclotomic(3, (rng.randint(-3, 3), rng.randint(-3, 3))) for _ in sp.dom]
    )
    assert mira.mirabolic_fourier(sp, f) == mira.kernel_operator(sp).apply(f)
    g = FunctionOnSet(
        sp.cod, 3, [Cyclotomic(3, (rng.randint(-3, 3), rng.randint(-3, 3))) for _ in sp.cod]
    )
    assert mira.mirabolic_fourier_op(sp, g) == mira.kernel_operator_op(sp).apply(g)


def test_sl2_agreement_exhaustive():
    ctx, sp = space_for(3, 2)
    plane = sl2.plane_set(ctx.field)
    for i in range(sp.dom.size):
        f = FunctionOnSet.delta(sp.dom, 3, sp.dom.decode(i))
        fp = FunctionOnSet(plane, 3, f.values)  # same lex enumeration
        img = mira.mirabolic_fourier(sp, f)
        img_plane = sl2.sl2_fourier(ctx, fp)
        for j, N in enumerate(sp.cod):
            n1, n2 = N.entries
            # N = (d, -b) corresponds to output coordinates (b, d)
            assert img.values[j] == img_plane(sl2.PlanePoint(-n2, n1))


def test_equivariance():
    ctx, sp = space_for(3, 3)
    rng = random.Random(4)
    f = FunctionOnSet(
        sp.dom, 3, [Cyclotomic.from_rational(3, rng.randint(-2, 2)) for _ in sp.dom]
    )
    for _ in range(10):
        g = random_unimodular(ctx.field, 3, rng)
        m = random_invertible(ctx.field, 2, rng)
        lhs = mira.mirabolic_fourier(sp, mira.mirabolic_action(g, m, f))
        rhs = mira.mirabolic_action_op(g, m, mira.mirabolic_fourier(sp, f))
        assert lhs == rhs


def test_action_rejects_bad_inputs():
    ctx, sp = space_for(3, 2)
    f = FunctionOnSet.zero(sp.dom, 3)
    field = ctx.field
    singular = RectMatrix.zero(field, 1, 1)
    not_unimodular = RectMatrix(field, 2, 2, [2, 0, 0, 1])
    with pytest.raises(ValueError):
        mira.mirabolic_action(not_unimodular, RectMatrix.identity(field, 1), f)
    with pytest.raises(ValueError):
        mira.mirabolic_action(RectMatrix.identity(field, 2), singular, f)


def test_budget_and_n_validation():
    ctx = CharacterContext(FieldSpec(3))
    with pytest.raises(ValueError):
        mira.MirabolicSpace(ctx, 1)
    with pytest.raises(ValueError):
        mira.MirabolicSpace(ctx, 4)  # 3^12 points over budget
