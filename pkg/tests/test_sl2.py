import random
from fractions import Fraction

import pytest

from quadfourier import sl2
from quadfourier.characters import CharacterContext
from quadfourier.fields import FieldSpec
from quadfourier.funcspace import FunctionOnSet
from quadfourier.matrices import RectMatrix, random_unimodular
from quadfourier.scalars import Cyclotomic


def make(q):
    ctx = CharacterContext(FieldSpec(q))
    return ctx, sl2.plane_set(ctx.field)


def mat(field, a, b, c, d):
    return RectMatrix(field, 2, 2, [a, b, c, d])


def test_involution_all_deltas_all_q():
    for q in (2, 3, 5, 7):
        ctx, plane = make(q)
        p = ctx.prime
        for pt in plane:
            f = FunctionOnSet.delta(plane, p, pt)
            assert sl2.sl2_fourier(ctx, sl2.sl2_fourier(ctx, f)) == f


def test_delta_zero_image():
    ctx, plane = make(3)
    f = FunctionOnSet.delta(plane, 3, plane.decode(0))
    img = sl2.sl2_fourier(ctx, f)
    third = Cyclotomic.from_rational(3, Fraction(1, 3))
    assert all(v == third for v in img.values)


def test_constant_image():
    ctx, plane = make(3)
    ones = FunctionOnSet.constant(plane, Cyclotomic.one(3))
    img = sl2.sl2_fourier(ctx, ones)
    assert img == FunctionOnSet.delta(plane, 3, plane.decode(0)).scale(3)


def test_fourier_matches_kernel_operator():
    ctx, plane = make(3)
    op = sl2.kernel_operator(ctx, plane)
    rng = random.Random(0)
    f = FunctionOnSet(
        plane, 3, [Cyclotomic(3, (rng.randint(-3, 3), rng.randint(-3, 3))) for _ in plane]
    )
    assert sl2.sl2_fourier(ctx, f) == op.apply(f)


def test_pairing_values():
    field = FieldSpec(3)
    ident = RectMatrix.identity(field, 2)
    assert sl2.sl2_pairing(ident, ident) == field.one()
    t = field.element(2)
    h = mat(field, t, 0, 0, t.inverse())
    assert sl2.sl2_pairing(ident, h) == t.inverse()
    rng = random.Random(1)
    for _ in range(10):
        g = random_unimodular(field, 2, rng)
        h = random_unimodular(field, 2, rng)
        k = random_unimodular(field, 2, rng)
        assert sl2.sl2_pairing(k @ g, k @ h) == sl2.sl2_pairing(g, h)
    with pytest.raises(ValueError):
        sl2.sl2_pairing(mat(field, 1, 0, 0, 2), ident)


def test_pairing_depends_on_models_only():
    # a d' - c b' only reads column 1 of g and row 1 of h^-1
    field = FieldSpec(5)
    rng = random.Random(2)
    for _ in range(10):
        g = random_unimodular(field, 2, rng)
        h = random_unimodular(field, 2, rng)
        val = sl2.sl2_pairing(g, h)
        gm = sl2.sl2_model(g)
        hm = sl2.sl2_model_op(h)
        assert val == gm.a * hm.c - hm.a * gm.c


def test_model_kernel_factorization():
    for q in (3, 5):
        ctx, plane = make(q)
        rng = random.Random(q)
        for _ in range(20):
            g = random_unimodular(ctx.field, 2, rng)
            h = random_unimodular(ctx.field, 2, rng)
            assert ctx.psi(sl2.sl2_pairing(g, h)) == sl2.sl2_kernel(
                ctx, sl2.sl2_model(g), sl2.sl2_model_op(h)
            )


def test_equivariance():
    for q in (3, 5):
        ctx, plane = make(q)
        rng = random.Random(10 + q)
        f = FunctionOnSet(
            plane,
            ctx.prime,
            [Cyclotomic.from_rational(ctx.prime, rng.randint(-4, 4)) for _ in plane],
        )
        for _ in range(10):
            g = random_unimodular(ctx.field, 2, rng)
            assert sl2.sl2_fourier(ctx, sl2.sl2_action(g, f)) == sl2.sl2_action(
                g, sl2.sl2_fourier(ctx, f)
            )


def test_action_is_group_action():
    ctx, plane = make(3)
    rng = random.Random(4)
    f = FunctionOnSet(
        plane, 3, [Cyclotomic.from_rational(3, rng.randint(-4, 4)) for _ in plane]
    )
    ident = RectMatrix.identity(ctx.field, 2)
    assert sl2.sl2_action(ident, f) == f
    for _ in range(5):
        g, h = (random_unimodular(ctx.field, 2, rng) for _ in range(2))
        assert sl2.sl2_action(g @ h, f) == sl2.sl2_action(g, sl2.sl2_action(h, f))


def test_torus_twist():
    ctx, plane = make(5)
    rng = random.Random(5)
    f = FunctionOnSet(
        plane, 5, [Cyclotomic.from_rational(5, rng.randint(-4, 4)) for _ in plane]
    )
    for t in ctx.field.units():
        lhs = sl2.sl2_fourier(ctx, sl2.torus_action(t, f))
        rhs = sl2.torus_action(t.inverse(), sl2.sl2_fourier(ctx, f))
        assert lhs == rhs
    with pytest.raises(ValueError):
        sl2.torus_action(ctx.field.zero(), f)
