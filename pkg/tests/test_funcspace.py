import random
from fractions import Fraction

import pytest

from quadfourier.funcspace import (
    FunctionOnSet,
    IndexedSet,
    KernelOperator,
    compose,
    group_averaging_projector,
    identity_operator,
    operators_equal_on,
)
from quadfourier.scalars import Cyclotomic

P = 3


@pytest.fixture
def small_set():
    return IndexedSet(range(6), description="six points")


def rand_fn(iset, rng):
    return FunctionOnSet(
        iset, P, [Cyclotomic(P, (rng.randint(-4, 4), rng.randint(-4, 4))) for _ in iset]
    )


def rand_op(dom, cod, rng, scale=1):
    table = {
        (x, y): Cyclotomic(P, (rng.randint(-2, 2), rng.randint(-2, 2)))
        for x in dom
        for y in cod
    }
    return KernelOperator(dom, cod, lambda x, y: table[(x, y)], scale)


def test_indexed_set_bijection(small_set):
    for i in range(small_set.size):
        assert small_set.encode(small_set.decode(i)) == i
    for pt in small_set:
        assert small_set.decode(small_set.encode(pt)) == pt
    with pytest.raises(ValueError):
        IndexedSet([1, 1, 2])


def test_apply_identity_and_delta(small_set):
    rng = random.Random(0)
    f = rand_fn(small_set, rng)
    ident = identity_operator(small_set, P)
    assert ident.apply(f) == f
    op = rand_op(small_set, small_set, rng)
    d = FunctionOnSet.delta(small_set, P, 2)
    image = op.apply(d)
    for y in small_set:
        assert image(y) == op.kernel(2, y)
    assert op.apply(FunctionOnSet.zero(small_set, P)).is_zero()


def test_apply_linearity(small_set):
    rng = random.Random(1)
    op = rand_op(small_set, small_set, rng, scale=Fraction(1, 2))
    for _ in range(10):
        f, g = rand_fn(small_set, rng), rand_fn(small_set, rng)
        assert op.apply(f + g) == op.apply(f) + op.apply(g)
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        assert op.apply(f.scale(c)) == op.apply(f).scale(c)


def test_apply_set_mismatch(small_set):
    other = IndexedSet(range(6), description="other")
    rng = random.Random(2)
    op = rand_op(small_set, small_set, rng)
    with pytest.raises(ValueError):
        op.apply(rand_fn(other, rng))


def test_compose_materialized_vs_lazy(small_set):
    rng = random.Random(3)
    mid = IndexedSet("abcd", description="middle")
    cod = IndexedSet(range(3), description="target")
    b = rand_op(small_set, mid, rng, scale=Fraction(1, 3))
    a = rand_op(mid, cod, rng, scale=2)
    materialized = compose(a, b, materialize=True)
    lazy = compose(a, b, materialize=False)
    for _ in range(5):
        f = rand_fn(small_set, rng)
        assert materialized.apply(f) == lazy.apply(f) == a.apply(b.apply(f))
    with pytest.raises(ValueError):
        compose(b, a)  # wrong chaining order


def test_compose_identity_neutral(small_set):
    rng = random.Random(4)
    a = rand_op(small_set, small_set, rng)
    ident = identity_operator(small_set, P)
    span = [rand_fn(small_set, rng) for _ in range(4)]
    assert operators_equal_on(span, compose(ident, a), a)
    assert operators_equal_on(span, compose(a, ident), a)


def test_projector_idempotent_and_averages():
    # Orbits: {0,1,2} and {3,4}, plus a fixed point {5}.
    orbits = {0: (0, 1, 2), 1: (0, 1, 2), 2: (0, 1, 2), 3: (3, 4), 4: (3, 4), 5: (5,)}
    iset = IndexedSet(range(6))
    proj = group_averaging_projector(iset, lambda x: orbits[x], P)
    rng = random.Random(5)
    for _ in range(10):
        f = rand_fn(iset, rng)
        pf = proj.apply(f)
        assert proj.apply(pf) == pf
        for orb in ({0, 1, 2}, {3, 4}, {5}):
            total = Cyclotomic.zero(P)
            for x in orb:
                total = total + pf(x)
            assert total.is_zero()
    const = FunctionOnSet.constant(iset, Cyclotomic.one(P))
    assert proj.apply(const).is_zero()


def test_projector_rejects_bad_orbit_maps():
    iset = IndexedSet(range(3))
    with pytest.raises(ValueError):
        group_averaging_projector(iset, lambda x: (), P)
    with pytest.raises(ValueError):
        group_averaging_projector(iset, lambda x: ((x + 1) % 3,), P)
    # inconsistent partition
    bad = {0: (0, 1), 1: (1,), 2: (2,)}
    with pytest.raises(ValueError):
        group_averaging_projector(iset, lambda x: bad[x], P)


def test_planes_round_trip(small_set):
    rng = random.Random(6)
    f = FunctionOnSet(
        small_set,
        P,
        [
            Cyclotomic(P, (Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), 2)))
            for _ in small_set
        ],
    )
    planes, den = f.to_planes()
    back = FunctionOnSet.from_planes(small_set, P, planes, den)
    assert back == f


def test_json_serialization(small_set):
    f = FunctionOnSet.delta(small_set, P, 1).scale(Fraction(1, 2))
    obj = f.to_json_obj()
    assert obj[1] == ["1/2", "0"]
    assert len(obj) == small_set.size
