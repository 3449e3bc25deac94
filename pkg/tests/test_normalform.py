"""Rewriting engine: ordered-monomial arithmetic, coproduct/antipode, and
the report-style verifiers."""

import random

from qtri.scalars import FieldSpec
from qtri.groups import AbelianGroupSpec, Character
from qtri.braiding import YDRealization
from qtri.double import DoubleData
from qtri.normalform import (NormalFormElement, nf_v, nf_f, nf_group, nf_unit,
                             nf_term, multiply, nf_power, counit,
                             coproduct_nf, antipode_nf, ts_multiply,
                             TensorSquareElement, verify_bialgebra,
                             verify_antipode, verify_quasi_yd,
                             verify_triangular)


def sl2_data():
    F = FieldSpec(parameters=("q",))
    q = F.param("q")
    G = AbelianGroupSpec(free_rank=1)
    lam = Character(F, G, (q ** 2,))
    real = YDRealization(F, G, ((1,),), ((-1,),), (lam,))
    return DoubleData(real, [[F.one]], [[F.one]])


def a2_data():
    F = FieldSpec(parameters=("q",))
    q = F.param("q")
    G = AbelianGroupSpec(free_rank=2)
    lam1 = Character(F, G, (q ** 2, q ** -1))
    lam2 = Character(F, G, (q ** -1, q ** 2))
    real = YDRealization(F, G, ((1, 0), (0, 1)), ((-1, 0), (0, -1)),
                         (lam1, lam2))
    return DoubleData(real, [[F.one, F.zero], [F.zero, F.one]],
                      [[F.one, F.zero], [F.zero, F.one]])


def cyclic_data(r=3, broken_l=False):
    """Rank-1 data over a cyclic group of order r with lambda(g) a primitive
    r-th root of unity."""
    F = FieldSpec(cyclotomic_order=r)
    G = AbelianGroupSpec(torsion_orders=(r,))
    lam = Character(F, G, (F.zeta(),))
    l = (0,) if broken_l else (r - 1,)
    real = YDRealization(F, G, ((1,),), (l,), (lam,))
    return DoubleData(real, [[F.one]], [[F.one]])


def test_commutator_rule():
    data = sl2_data()
    F = data.field
    fv = multiply(data, nf_f(data, 0), nf_v(data, 0))
    assert fv.terms == {
        ((0,), (0,), (0,)): F.one,   # v f
        ((), (1,), ()): F.one,       # gamma * k
        ((), (-1,), ()): -F.one,     # -gamma * l
    }
    # and v f is already normal
    vf = multiply(data, nf_v(data, 0), nf_f(data, 0))
    assert vf.terms == {((0,), (0,), (0,)): F.one}


def test_group_conjugation_rules():
    data = sl2_data()
    q = data.field.param("q")
    g = nf_group(data, (1,))
    v = nf_v(data, 0)
    f = nf_f(data, 0)
    assert multiply(data, g, v) == multiply(data, v, g).scale(q ** 2)
    # f g = lambda(g) g f
    assert multiply(data, f, g) == multiply(data, g, f).scale(q ** 2)


def test_torsion_group_powers_wrap():
    data = cyclic_data(3)
    g = nf_group(data, (1,))
    g3 = multiply(data, multiply(data, g, g), g)
    assert g3 == nf_unit(data)


def test_serre_degree_commutator_identity():
    # [f, v^2] = f v^2 - v^2 f has only degree-1 terms with group factors
    data = sl2_data()
    v2 = nf_power(data, nf_v(data, 0), 2)
    f = nf_f(data, 0)
    z = multiply(data, f, v2).sub(multiply(data, v2, f))
    assert all(len(t[0]) == 1 and not t[2] for t in z.terms)
    degs = z.degrees()
    assert degs == {1}


def _random_element(data, rng, pool, max_terms=3):
    F = data.field
    out = NormalFormElement(F)
    for _ in range(rng.randint(1, max_terms)):
        term = rng.choice(pool)
        coeff = F.scalar(rng.randint(-3, 3))
        out = out.add(nf_term(F, term, coeff))
    return out


def _term_pool(data, rng, count=12, max_len=2):
    g = data.group
    pool = []
    for _ in range(count):
        vw = tuple(rng.randrange(data.n) for _ in range(rng.randint(0, max_len)))
        fw = tuple(rng.randrange(data.n) for _ in range(rng.randint(0, max_len)))
        vec = tuple(rng.randint(-1, 1) for _ in range(g.num_generators))
        pool.append((vw, g.reduce(vec), fw))
    return pool


def test_multiplication_associative_random():
    rng = random.Random(101)
    for data in (sl2_data(), a2_data(), cyclic_data(3)):
        pool = _term_pool(data, rng)
        for _ in range(8):
            x = _random_element(data, rng, pool)
            y = _random_element(data, rng, pool)
            z = _random_element(data, rng, pool)
            left = multiply(data, multiply(data, x, y), z)
            right = multiply(data, x, multiply(data, y, z))
            assert left == right


def test_multiplication_preserves_grading():
    rng = random.Random(202)
    data = a2_data()
    g = data.group
    for _ in range(20):
        vw = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        fw = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        t1 = (vw, g.reduce((rng.randint(-1, 1), 0)), fw)
        vw2 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        fw2 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        t2 = (vw2, g.reduce((0, rng.randint(-1, 1))), fw2)
        prod = multiply(data, nf_term(data.field, t1), nf_term(data.field, t2))
        want = len(vw) - len(fw) + len(vw2) - len(fw2)
        assert prod.degrees() <= {want}


def test_pbw_products_unitriangular():
    """The product of two ordered monomials has the concatenated monomial as
    its top term (nonzero coefficient), all other terms strictly shorter."""
    rng = random.Random(303)
    data = a2_data()
    g = data.group
    for _ in range(25):
        vw1 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        fw1 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        vw2 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        fw2 = tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
        g1 = g.reduce((rng.randint(-1, 1), rng.randint(-1, 1)))
        g2 = g.reduce((rng.randint(-1, 1), rng.randint(-1, 1)))
        t1, t2 = (vw1, g1, fw1), (vw2, g2, fw2)
        prod = multiply(data, nf_term(data.field, t1), nf_term(data.field, t2))
        top = (vw1 + vw2, g.multiply(g1, g2), fw1 + fw2)
        assert top in prod.terms
        assert not prod.terms[top].is_zero()
        total = len(top[0]) + len(top[2])
        for term in prod.terms:
            if term != top:
                assert len(term[0]) + len(term[2]) < total


def test_counit():
    data = sl2_data()
    F = data.field
    assert counit(data, nf_v(data, 0)).is_zero()
    assert counit(data, nf_f(data, 0)).is_zero()
    assert counit(data, nf_group(data, (5,))).is_one()
    x = multiply(data, nf_f(data, 0), nf_v(data, 0))
    # eps(vf + k - l) = 0 + 1 - 1 = 0
    assert counit(data, x).is_zero()


def test_coproduct_on_generators():
    data = sl2_data()
    F = data.field
    e = data.group.identity()
    dv = coproduct_nf(data, nf_v(data, 0))
    assert dv.terms == {
        (((0,), e, ()), ((), (1,), ())): F.one,
        (((), e, ()), ((0,), e, ())): F.one,
    }
    df = coproduct_nf(data, nf_f(data, 0))
    assert df.terms == {
        (((), e, (0,)), ((), e, ())): F.one,
        (((), (-1,), ()), ((), e, (0,))): F.one,
    }
    dg = coproduct_nf(data, nf_group(data, (1,)))
    assert dg.terms == {(((), (1,), ()), ((), (1,), ())): F.one}


def test_coproduct_counit_laws():
    data = a2_data()
    F = data.field
    samples = [nf_v(data, 0), nf_f(data, 1), nf_group(data, (1, -1)),
               multiply(data, nf_f(data, 0), nf_v(data, 0)),
               multiply(data, nf_v(data, 1), nf_f(data, 1))]
    for x in samples:
        dx = coproduct_nf(data, x)
        left = NormalFormElement(F)
        right = NormalFormElement(F)
        for (t1, t2), c in dx.terms.items():
            left = left.add(nf_term(F, t2, c * counit(data, nf_term(F, t1))))
            right = right.add(nf_term(F, t1, c * counit(data, nf_term(F, t2))))
        assert left == x
        assert right == x


def test_coassociativity_on_generators():
    data = a2_data()
    F = data.field
    gens = [nf_v(data, 0), nf_v(data, 1), nf_f(data, 0), nf_f(data, 1),
            nf_group(data, (1, 0)), nf_group(data, (0, 1))]
    for x in gens:
        dx = coproduct_nf(data, x)
        lhs = {}
        rhs = {}
        for (t1, t2), c in dx.terms.items():
            for (a, b), d in coproduct_nf(data, nf_term(F, t1)).terms.items():
                key = (a, b, t2)
                lhs[key] = lhs.get(key, F.zero) + c * d
            for (a, b), d in coproduct_nf(data, nf_term(F, t2)).terms.items():
                key = (t1, a, b)
                rhs[key] = rhs.get(key, F.zero) + c * d
        lhs = {k: v for k, v in lhs.items() if not v.is_zero()}
        rhs = {k: v for k, v in rhs.items() if not v.is_zero()}
        assert lhs == rhs


def test_antipode_on_generators():
    data = sl2_data()
    F = data.field
    q = F.param("q")
    sv = antipode_nf(data, nf_v(data, 0))
    assert sv.terms == {((0,), (-1,), ()): -F.one}
    sf = antipode_nf(data, nf_f(data, 0))
    assert sf.terms == {((), (1,), (0,)): -F.one}
    sg = antipode_nf(data, nf_group(data, (1,)))
    assert sg.terms == {((), (-1,), ()): F.one}
    # S^2(v) = k v k^-1 = lambda(k) v = q^2 v
    s2v = antipode_nf(data, sv)
    assert s2v == nf_v(data, 0).scale(q ** 2)


def test_verify_bialgebra_and_antipode_pass():
    for data in (sl2_data(), a2_data(), cyclic_data(3), cyclic_data(5)):
        rep = verify_bialgebra(data)
        assert rep.passed, rep.first_failure()
        rep2 = verify_antipode(data)
        assert rep2.passed, rep2.first_failure()


def test_cross_gamma_breaks_quasi_yd_and_associativity():
    # gamma_ij != 0 across distinct characters: the module condition fails
    # and multiplication stops being associative (the f-g and f-v rules
    # disagree on the scalar picked up while crossing a group element)
    F = FieldSpec(parameters=("q",))
    q = F.param("q")
    G = AbelianGroupSpec(free_rank=2)
    lam1 = Character(F, G, (q ** 2, q ** -1))
    lam2 = Character(F, G, (q ** -1, q ** 2))
    real = YDRealization(F, G, ((1, 0), (0, 1)), ((-1, 0), (0, -1)),
                         (lam1, lam2))
    data = DoubleData(real, [[F.one, F.one], [F.zero, F.one]],
                      [[F.one, F.one], [F.zero, F.one]])
    yd = verify_quasi_yd(data)
    assert not yd.passed
    assert yd.first_failure()["pair"] == (0, 1)
    assert "generator_index" in yd.first_failure()
    f1, v2 = nf_f(data, 0), nf_v(data, 1)
    g = nf_group(data, (1, 0))  # lambda_1 and lambda_2 differ here
    left = multiply(data, multiply(data, f1, g), v2)
    right = multiply(data, f1, multiply(data, g, v2))
    assert left != right


def test_verify_bialgebra_catches_broken_compatibility():
    # lambda(l) != lambda(k)^-1: coproduct multiplicativity fails on (f, v)
    F = FieldSpec(parameters=("q",))
    q = F.param("q")
    G = AbelianGroupSpec(free_rank=2)
    lam = Character(F, G, (q ** 2, q ** -3))
    real = YDRealization(F, G, ((1, 0),), ((0, 1),), (lam,))
    data = DoubleData(real, [[F.one]], [[F.one]])
    rep = verify_bialgebra(data)
    assert not rep.passed
    assert rep.first_failure()["pair"] == ("f1", "v1")


def test_verify_quasi_yd_passes_and_counts():
    data = a2_data()
    rep = verify_quasi_yd(data)
    assert rep.passed
    assert rep.checked == 2  # two nonzero gamma entries
    assert "abelian" in rep.note


def test_verify_triangular_a2():
    rep = verify_triangular(a2_data(), D=4)
    assert rep.passed, rep.failures[:1]
    # both sides, every relation x both generators
    assert rep.checked == 2 * (2 + 7) * 2


def test_verify_triangular_cyclic_with_root_of_unity():
    # the cubic relation commutes past f because 1 + z + z^2 = 0, and the
    # quartic residue lands inside the relation ideal
    rep = verify_triangular(cyclic_data(3), D=4)
    assert rep.passed, rep.failures[:1]


def test_verify_triangular_detects_broken_group_data():
    # sabotaged l: the l-bucket coefficient becomes 3 != 0 and the residue
    # x^2 is not in the (empty) degree-2 relation span
    rep = verify_triangular(cyclic_data(3, broken_l=True), D=3)
    assert not rep.passed
    fail = rep.failures[0]
    assert fail["side"] == "positive"
    assert fail["generator"] == 0


def test_tensor_square_multiplication():
    data = sl2_data()
    F = data.field
    q = F.param("q")
    e = data.group.identity()
    # (v (x) k) * (1 (x) v) = v (x) kv = lambda(k) v (x) v k
    a = TensorSquareElement(F, {(((0,), e, ()), ((), (1,), ())): F.one})
    b = TensorSquareElement(F, {(((), e, ()), ((0,), e, ())): F.one})
    prod = ts_multiply(data, a, b)
    assert prod.terms == {(((0,), e, ()), ((0,), (1,), ())): q ** 2}
