import random

import pytest

from qtri.scalars import (
    FieldSpec,
    ZeroScalar,
    DenominatorVanishes,
    multiplicative_order,
    specialize,
    scalar_str,
)


def rand_scalar(rng, field, depth=0):
    choice = rng.randrange(8 if depth < 2 else 6)
    if choice < 2:
        return field.from_fraction(rng.randrange(-4, 5))
    if choice < 4:
        name = rng.choice(field.parameters)
        return field.param(name) ** rng.randrange(-2, 3)
    if choice < 5:
        return field.zeta(rng.randrange(field.cyclotomic_order))
    if choice < 6:
        return field.from_fraction(1)
    if choice == 6:
        return rand_scalar(rng, field, depth + 1) + rand_scalar(rng, field, depth + 1)
    return rand_scalar(rng, field, depth + 1) * rand_scalar(rng, field, depth + 1)


def test_field_spec_validation():
    with pytest.raises(ValueError):
        FieldSpec(1, ["z"])
    with pytest.raises(ValueError):
        FieldSpec(1, ["a", "a"])
    with pytest.raises(ValueError):
        FieldSpec(0, [])
    with pytest.raises(ValueError):
        FieldSpec(1, ["2bad"])


def test_canonical_fraction_reduction():
    F = FieldSpec(1, ["q"])
    q = F.param("q")
    assert (q**2 - 1) / (q - 1) == q + 1
    assert scalar_str((q**2 - 1) / (q - 1)) == "q + 1"
    # denominators are true monic polynomials; units live in the numerator
    u = (q - q**-1).inv()
    assert scalar_str(u) == "(q)/(q^2 - 1)"
    assert (u * (q - q**-1)).is_one()
    v = F.one / q**3
    assert v.is_monomial()
    assert scalar_str(v) == "q^-3"


def test_multivariate_cancellation():
    G = FieldSpec(1, ["a", "b"])
    a, b = G.param("a"), G.param("b")
    assert (a**2 - b**2) / (a + b) == a - b
    assert (a * b - a) / (b - 1) == a
    assert (a / (a - 1) + 1 / (1 - a)).is_one()


def test_equality_is_canonical():
    G = FieldSpec(1, ["a", "b"])
    a, b = G.param("a"), G.param("b")
    x = (a + b) ** 2 / (a + b)
    y = a + b
    assert x == y
    assert hash(x) == hash(y)
    assert x.normalized() == x


def test_zero_and_one_predicates():
    F = FieldSpec(4, ["q"])
    assert F.zero.is_zero()
    assert F.one.is_one()
    assert not F.param("q").is_constant()
    assert F.scalar("z^2").is_constant()
    assert F.scalar("3/2").constant_value() == F.K.from_fraction("3/2")
    with pytest.raises(ZeroScalar):
        F.zero.inv()
    with pytest.raises(ZeroScalar):
        F.one / F.zero


def test_multiplicative_order():
    H = FieldSpec(12, ["q"])
    assert multiplicative_order(H.one) == 1
    assert multiplicative_order(-H.one) == 2
    assert multiplicative_order(H.scalar("z")) == 12
    assert multiplicative_order(H.scalar("z^2")) == 6
    assert multiplicative_order(H.scalar("z^3")) == 4
    assert multiplicative_order(H.scalar("-z")) == 12
    assert multiplicative_order(H.scalar("2")) is None
    assert multiplicative_order(H.param("q")) is None
    assert multiplicative_order(H.scalar("q+1")) is None
    # -zeta_3 has order 6: the search bound exceeds the cyclotomic order
    H3 = FieldSpec(3, [])
    assert multiplicative_order(H3.scalar("-z")) == 6
    with pytest.raises(ZeroScalar):
        multiplicative_order(H.zero)


def test_parser_and_formatter_round_trip():
    E = FieldSpec(4, ["r", "s"])
    literals = [
        "0", "1", "-1", "r", "-r", "r^2", "r^-2", "(r-1)/(r+1)",
        "z*r^-1 + 3/2", "1/2 + 1/2*z", "(r^2*s - s^-1)/(r*s - 1)",
        "-(r - s)^2", "2*r*s^-3*z^3", "(1+z)*(1-z)", "r^2 - 2*r*s + s^2",
    ]
    for lit in literals:
        sc = E.scalar(lit)
        assert E.scalar(scalar_str(sc)) == sc
        # formatting is a fixed point
        assert scalar_str(E.scalar(scalar_str(sc))) == scalar_str(sc)


def test_parser_rejects_garbage():
    E = FieldSpec(1, ["r"])
    for bad in ["r +", "(r", "q", "r^^2", "1 2", "r$"]:
        with pytest.raises((ValueError, ZeroScalar)):
            E.scalar(bad)
    with pytest.raises(ZeroScalar):
        E.scalar("1/0")


def test_field_axioms_random():
    rng = random.Random(7)
    E = FieldSpec(4, ["r", "s"])
    for _ in range(60):
        x = rand_scalar(rng, E)
        y = rand_scalar(rng, E)
        z = rand_scalar(rng, E)
        assert (x + y) * z == x * z + y * z
        assert x + y == y + x
        assert (x + y) + z == x + (y + z)
        assert x * (y * z) == (x * y) * z
        if not x.is_zero():
            assert (x * x.inv()).is_one()
            assert E.scalar(scalar_str(x)) == x


def test_powers():
    F = FieldSpec(1, ["q"])
    q = F.param("q")
    assert q**0 == F.one
    assert q**-2 == F.one / (q * q)
    s = (q + 1) / (q - 1)
    assert s**3 == s * s * s
    assert s**-3 == (s * s * s).inv()


def test_specialize_homomorphism():
    Fq = FieldSpec(1, ["q"])
    q = Fq.param("q")
    T = FieldSpec(3, [])
    assert specialize((q**2 - 1) / (q - 1), {"q": "z"}, T) == T.scalar("z + 1")
    with pytest.raises(DenominatorVanishes):
        specialize(Fq.one / (q - 1), {"q": 1}, T)
    # partial specialization: surviving parameters map to themselves
    P = FieldSpec(1, ["a", "b"])
    Q = FieldSpec(1, ["b"])
    assert specialize(P.scalar("a*b + b^2"), {"a": 2}, Q) == Q.scalar("2*b + b^2")
    # root-of-unity embedding into a larger cyclotomic field
    S3 = FieldSpec(3, ["u"])
    S12 = FieldSpec(12, [])
    assert specialize(S3.scalar("z*u"), {"u": 5}, S12) == S12.scalar("5*z^4")
    with pytest.raises(ValueError):
        specialize(P.scalar("a"), {}, FieldSpec(1, []))


def test_specialize_random_homomorphism():
    rng = random.Random(11)
    src = FieldSpec(2, ["a", "b"])
    tgt = FieldSpec(4, [])
    asg = {"a": "z", "b": "-1"}
    for _ in range(25):
        x = rand_scalar(rng, src)
        y = rand_scalar(rng, src)
        try:
            ix = specialize(x, asg, tgt)
            iy = specialize(y, asg, tgt)
            ixy = specialize(x * y, asg, tgt)
            isum = specialize(x + y, asg, tgt)
        except DenominatorVanishes:
            continue
        assert ixy == ix * iy
        assert isum == ix + iy
