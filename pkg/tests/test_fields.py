import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadfourier.fields import DEFAULT_MODULI, FieldSpec, factor_prime_power

SMALL_FIELDS = [
    FieldSpec(2),
    FieldSpec(3),
    FieldSpec(4),
    FieldSpec(5),
    FieldSpec(7),
    FieldSpec(8),
    FieldSpec(9),
    FieldSpec(11),
    FieldSpec(13),
    FieldSpec(25, (3, 0, 1)),  # x^2 + 3 over F_5
]


def test_prime_power_factoring():
    assert factor_prime_power(49) == (7, 2)
    assert factor_prime_power(27) == (3, 3)
    with pytest.raises(ValueError):
        factor_prime_power(12)


def test_size_cap():
    with pytest.raises(ValueError):
        FieldSpec(53)
    with pytest.raises(ValueError):
        FieldSpec(64, (1, 1, 0, 0, 0, 0, 1))


def test_bad_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(4, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2
    with pytest.raises(ValueError):
        FieldSpec(9, (0, 0, 1))  # x^2 reducible
    with pytest.raises(ValueError):
        FieldSpec(3, (1, 1))  # prime field takes no modulus


def test_default_moduli_cover_shipped_fields():
    for q in DEFAULT_MODULI:
        spec = FieldSpec(q)
        assert spec.q == q
    with pytest.raises(ValueError):
        FieldSpec(16)  # no default shipped


def test_f3_addition():
    F3 = FieldSpec(3)
    assert (F3.element(2) + F3.element(2)).enc == 1


def test_f4_defining_relation():
    F4 = FieldSpec(4)
    a = F4.from_enc(2)
    assert (a * a).enc == 3  # a^2 = a + 1
    assert a.inverse().enc == 3  # a * (a+1) = 1


def test_multiplicative_identity():
    for spec in SMALL_FIELDS:
        for x in spec.elements():
            assert x * spec.one() == x


def test_inverses():
    F3, F5 = FieldSpec(3), FieldSpec(5)
    assert F3.element(2).inverse().enc == 2
    assert F5.element(2).inverse().enc == 3
    with pytest.raises(ZeroDivisionError):
        F3.zero().inverse()


def test_traces():
    F3 = FieldSpec(3)
    for x in F3.elements():
        assert x.trace() == x.enc  # m = 1: identity
    F4 = FieldSpec(4)
    assert F4.from_enc(2).trace() == 1  # Tr(a) = a + a^2 = 1
    assert F4.one().trace() == 0  # 1 + 1 = 0 in characteristic 2


def test_trace_additive_small_fields():
    for spec in SMALL_FIELDS:
        if spec.q > 25:
            continue
        p = spec.p
        for x in spec.elements():
            for y in spec.elements():
                assert (x + y).trace() == (x.trace() + y.trace()) % p


def test_enumeration_order_and_enc_bijection():
    F3 = FieldSpec(3)
    assert [x.enc for x in F3.elements()] == [0, 1, 2]
    F4 = FieldSpec(4)
    assert [x.coeffs for x in F4.elements()] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    for spec in SMALL_FIELDS:
        encs = [x.enc for x in spec.elements()]
        assert encs == list(range(spec.q))
        assert [spec.from_enc(e) for e in encs] == list(spec.elements())


def test_units_order():
    F5 = FieldSpec(5)
    assert [u.enc for u in F5.units()] == [1, 2, 3, 4]


def test_fermat():
    for spec in SMALL_FIELDS:
        for x in spec.units():
            assert x ** (spec.q - 1) == spec.one()


def test_mixed_field_arithmetic_rejected():
    with pytest.raises(ValueError):
        FieldSpec(3).one() + FieldSpec(5).one()


def test_tables_agree_with_elementwise_ops():
    for spec in (FieldSpec(4), FieldSpec(9), FieldSpec(5)):
        t = spec.tables()
        els = spec.elements()
        for i, x in enumerate(els):
            assert t["neg"][i] == (-x).enc
            assert t["trace"][i] == x.trace()
            if i:
                assert t["inv"][i] == x.inverse().enc
            for j, y in enumerate(els):
                assert t["add"][i, j] == (x + y).enc
                assert t["mul"][i, j] == (x * y).enc
                assert t["sub"][i, j] == (x - y).enc


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 4, 5, 7, 8, 9]),
    st.integers(0, 48),
    st.integers(0, 48),
    st.integers(0, 48),
)
def test_field_axioms(q, a, b, c):
    spec = FieldSpec(q)
    x, y, z = spec.from_enc(a % q), spec.from_enc(b % q), spec.from_enc(c % q)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x
