import pytest

from qtri.catalog import (catalog_build, cartan_matrix, available,
                          UnknownEntry, BadParams)
from qtri.double import validate, build_presentation
from qtri.braiding import (braiding_from_realization, classify,
                           finite_cartan_type, CartanData)
from qtri.nichols import hilbert_dims, nichols_relations


ALL_CASES = [
    ("dj", {"type": "A", "rank": 1}),
    ("dj", {"type": "A", "rank": 2}),
    ("dj", {"type": "B", "rank": 2}),
    ("multiparameter-gl", {"n": 2}),
    ("multiparameter-gl", {"n": 3}),
    ("radford", {"r": 2}),
    ("radford", {"r": 3}),
    ("radford", {"r": 5}),
    ("cartan-not-dj", {}),
    ("mixed", {"p": 3}),
]


def test_every_entry_passes_validation():
    for name, params in ALL_CASES:
        entry = catalog_build(name, params)
        report = validate(entry.data)
        assert report.passed, (name, params, [c.name for c in report.checks
                                              if not c.passed])
        assert report.separable


def test_cartan_matrix_builders():
    a, d = cartan_matrix("B", 3)
    assert a == ((2, -1, 0), (-1, 2, -1), (0, -2, 2)) and d == (2, 2, 1)
    a, d = cartan_matrix("C", 3)
    assert a == ((2, -1, 0), (-1, 2, -2), (0, -1, 2)) and d == (1, 1, 2)
    a, d = cartan_matrix("G", 2)
    assert a == ((2, -1), (-3, 2)) and d == (3, 1)
    a, d = cartan_matrix("F", 4)
    assert a == ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -2, 2, -1),
                 (0, 0, -1, 2)) and d == (2, 2, 1, 1)
    a, d = cartan_matrix("D", 4)
    assert a == ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0),
                 (0, -1, 0, 2))
    # every builder's output carries its own name
    canonical = {("C", 2): ("B", 2), ("D", 3): ("A", 3)}  # type coincidences
    for kind, rank in [("A", 1), ("A", 5), ("B", 2), ("C", 2), ("D", 3),
                       ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4),
                       ("G", 2)]:
        a, d = cartan_matrix(kind, rank)
        ft = finite_cartan_type(CartanData(a))
        expected = canonical.get((kind, rank), (kind, rank))
        assert ft.types == (expected,), (kind, rank, ft)
        # d really symmetrizes
        n = len(a)
        for i in range(n):
            for j in range(n):
                assert d[i] * a[i][j] == d[j] * a[j][i]


def test_cartan_matrix_bad_ranks():
    for kind, rank in [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 5),
                       ("E", 9), ("F", 3), ("G", 3), ("X", 2)]:
        with pytest.raises(BadParams):
            cartan_matrix(kind, rank)


def test_dj_entry_is_dj_classified():
    entry = catalog_build("dj", {"type": "A", "rank": 2})
    b = braiding_from_realization(entry.data.realization)
    assert [[str(x) for x in row] for row in b.q] == [["r^4", "r^-2"],
                                                      ["r^-2", "r^4"]]
    report = classify(b, positivity_assumptions=frozenset({"r"}))
    assert report.generic and report.positive
    assert report.cartan.a == ((2, -1), (-1, 2))
    assert report.dj is not None and report.dj[0] == (1, 1)
    assert finite_cartan_type(report.cartan).types == (("A", 2),)
    # integral-ready: square roots of the q_ii are declared
    for i, expr in entry.sqrt_scalars.items():
        r = entry.data.field.scalar(expr)
        assert r * r == b.q[i][i]


def test_dj_b2_symmetrized():
    entry = catalog_build("dj", {"type": "B", "rank": 2})
    b = braiding_from_realization(entry.data.realization)
    # d = (2, 1): q_11 = r^8, q_22 = r^4, q_12 = q_21 = r^-4
    assert str(b.q[0][0]) == "r^8" and str(b.q[1][1]) == "r^4"
    assert str(b.q[0][1]) == "r^-4" and str(b.q[1][0]) == "r^-4"
    report = classify(b, positivity_assumptions=frozenset({"r"}))
    assert report.cartan.a == ((2, -1), (-2, 2))
    assert finite_cartan_type(report.cartan).types == (("B", 2),)


def test_gl_entry_braiding():
    entry = catalog_build("multiparameter-gl", {"n": 3})
    F = entry.data.field
    lam = F.param("lam")
    p12, p13, p23 = (F.param(p) for p in ("p12", "p13", "p23"))
    b = braiding_from_realization(entry.data.realization)
    assert b.q[0][0] == lam ** -1 and b.q[1][1] == lam ** -1
    assert b.q[0][1] == p12 * p23 / p13
    assert b.q[1][0] == lam * p13 / (p12 * p23)
    assert b.q[0][1] * b.q[1][0] == lam
    entry2 = catalog_build("multiparameter-gl", {"n": 2})
    b2 = braiding_from_realization(entry2.data.realization)
    assert b2.n == 1 and b2.q[0][0] == entry2.data.field.param("lam") ** -1


def test_radford_entries():
    entry = catalog_build("radford", {"r": 3})
    F = entry.data.field
    b = braiding_from_realization(entry.data.realization)
    assert b.q[0][0] == F.zeta()
    assert entry.data.gamma[0][0] == F.one
    # degenerate r = 2: k = l in the order-2 group, gamma forced to zero
    entry2 = catalog_build("radford", {"r": 2})
    assert entry2.data.realization.degrees_k == entry2.data.realization.degrees_l
    assert entry2.data.gamma[0][0].is_zero()
    b2 = braiding_from_realization(entry2.data.realization)
    assert hilbert_dims(b2, 2) == [1, 1, 0]
    rels = nichols_relations(b2, 2)
    assert len(rels) == 1 and set(rels[0].terms) == {(0, 0)}


def test_cartan_not_dj_entry():
    entry = catalog_build("cartan-not-dj", {})
    F = entry.data.field
    b = braiding_from_realization(entry.data.realization)
    assert str(b.q[0][0]) == "r^2" and str(b.q[1][0]) == "r^-2"
    assert b.q[1][1] == -F.scalar("r^2")
    report = classify(b, positivity_assumptions=frozenset({"r"}))
    assert report.generic
    assert report.cartan is not None and report.cartan.a == ((2, -2), (-2, 2))
    assert report.dj is None  # Cartan shape, but no common rescaled base
    for i, expr in entry.sqrt_scalars.items():
        root = F.scalar(expr)
        assert root * root == b.q[i][i], (i, expr)


def test_mixed_entry():
    entry = catalog_build("mixed", {"p": 3})
    F = entry.data.field
    z, s = F.zeta(), F.param("s")
    b = braiding_from_realization(entry.data.realization)
    assert b.q[0][0] == z and b.q[0][1] == z
    assert b.q[1][0] == z ** -1 and b.q[1][1] == s ** 2
    for i, expr in entry.sqrt_scalars.items():
        root = F.scalar(expr)
        assert root * root == b.q[i][i], (i, expr)
    # builds a presentation without complaint
    pres = build_presentation(entry.data, 3)
    assert pres.flags["separable"] and pres.flags["non_degenerate"]


def test_unknown_and_bad_params():
    with pytest.raises(UnknownEntry):
        catalog_build("no-such-entry")
    with pytest.raises(BadParams):
        catalog_build("multiparameter-gl", {"n": 1})
    with pytest.raises(BadParams):
        catalog_build("multiparameter-gl", {"n": 10})
    with pytest.raises(BadParams):
        catalog_build("radford", {"r": 1})
    with pytest.raises(BadParams):
        catalog_build("mixed", {"p": 4})
    with pytest.raises(BadParams):
        catalog_build("mixed", {"p": 9})
    with pytest.raises(BadParams):
        catalog_build("cartan-not-dj", {"x": 1})
    with pytest.raises(BadParams):
        catalog_build("dj", {"type": "E", "rank": 5})
    with pytest.raises(BadParams):
        catalog_build("radford", {"r": "many"})


def test_available_listing():
    entries = available()
    assert set(entries) == {"dj", "multiparameter-gl", "radford",
                            "cartan-not-dj", "mixed"}
    assert "params" in entries["dj"]
