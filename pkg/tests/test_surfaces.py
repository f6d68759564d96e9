
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chyp.errors import NotInGamma
from chyp.gon18 import PAIRING_WORDS, ROMAN
from chyp.surfaces import (
    A1,
    A2,
    B1,
    B2,
    CoverSpec,
    HomologyClass,
    coset_of,
    coset_table,
    cover_invariants,
    default_beta,
    gamma_decomposition,
    gamma_power,
    genus_two_surface,
    homology_basis,
    homology_class,
    in_gamma,
    intersection_number,
    lf_word,
    lift_count,
    orbit_coincidence_check,
    psi,
    select_beta,
)
from chyp.realhyp import evaluate_letters
from chyp.words import concat, enumerate_words, inverse, power, reduce_word

pairing_index = st.integers(0, 8)
gamma_words = st.lists(st.tuples(pairing_index, st.booleans()), max_size=4)


def _gamma_word(spec):
    w = ()
    for i, inv in spec:
        s = PAIRING_WORDS[ROMAN[i]]
        w = concat(w, inverse(s) if inv else s)
    return w


@pytest.fixture(scope="module")
def table():
    return coset_table()


# ---------------------------------------------------------------- cosets


def test_coset_examples(table):
    assert table.label(()) == 0
    for s in PAIRING_WORDS.values():
        assert table.label(s) == 0
        assert in_gamma(s)
    for x in ("1", "2", "3", "12", "21"):
        assert table.label(x) != 0


def test_coset_index_and_action(table):
    assert len(table.action) == 18
    for x in range(3):
        col = sorted(row[x] for row in table.action)
        assert col == list(range(18))
    labels = {t for _, t in table.rows(6)}
    assert labels == set(range(18))


def test_relators_act_trivially(table):
    for w, m in (("23", 3), ("31", 3), ("12", 9)):
        rel = power(w, m)
        for t in range(18):
            u = t
            for x in rel:
                u = table.action[u][x - 1]
            assert u == t
    for x in range(3):
        assert all(table.action[table.action[t][x]][x] == t for t in range(18))


def test_surface_group_is_torsion_free(table):
    # nontrivial powers of the rotations, and their conjugates, avoid Gamma
    for w, m in (("23", 3), ("31", 3), ("12", 9)):
        for k in range(1, m):
            for c in ((), (1,), (2,), (3,), (1, 3), (2, 3, 1)):
                g = reduce_word(c + power(w, k) + tuple(reversed(c)))
                assert table.label(g) != 0


def test_table_matches_geometric_labels(table, rng):
    words = list(enumerate_words(7))
    for i in rng.choice(len(words), 150, replace=False):
        assert table.label(words[i]) == coset_of(words[i])


def test_gamma_decomposition(table):
    for spec in ([(0, False)], [(3, True), (5, False)], [(8, False), (8, False), (1, True)]):
        w = _gamma_word(spec)
        dec = gamma_decomposition(w)
        rebuilt = ()
        for lab, sgn in dec:
            s = PAIRING_WORDS[lab]
            rebuilt = concat(rebuilt, s if sgn > 0 else inverse(s))
        gens = genus_two_surface().gon.generators
        assert evaluate_letters(gens, rebuilt).same_as(evaluate_letters(gens, w), tol=1e-8)
    with pytest.raises(NotInGamma):
        gamma_decomposition("1")


def test_gamma_power():
    assert gamma_power("1323") == 9
    assert lf_word() == power("1323", 9)
    assert gamma_power(PAIRING_WORDS["IV"]) == 1
    with pytest.raises(ValueError):
        gamma_power("11")


# ---------------------------------------------------------------- homology


def test_intersection_form():
    hb = homology_basis()
    Q = hb.Q
    assert np.array_equal(Q, -Q.T)
    assert np.linalg.matrix_rank(Q.astype(float)) == 4
    a1, b1, a2, b2 = hb.basis
    assert a1 @ Q @ b1 == 1 and a2 @ Q @ b2 == 1
    for x, y in ((a1, a2), (a1, b2), (b1, a2), (b1, b2)):
        assert x @ Q @ y == 0
    assert hb.coordinates(a1) == A1 and hb.coordinates(b2) == B2


def test_symplectic_basis_classes():
    assert intersection_number(A1, B1) == 1
    assert intersection_number(B1, A1) == -1
    assert intersection_number(A2, B2) == 1
    assert intersection_number(A1, A2) == 0
    assert intersection_number(A1, A1) == 0


def test_pairing_classes_span(table):
    classes = homology_basis().pairing_classes
    M = np.array([c.coords for c in classes.values()])
    assert np.linalg.matrix_rank(M.astype(float)) == 4
    for lab, s in PAIRING_WORDS.items():
        assert homology_class(s) == classes[lab]


@given(gamma_words, gamma_words)
def test_homology_is_a_homomorphism(u, v):
    x, y = _gamma_word(u), _gamma_word(v)
    assert homology_class(concat(x, y)) == homology_class(x) + homology_class(y)
    comm = concat(concat(x, y), concat(inverse(x), inverse(y)))
    assert homology_class(comm).is_zero


def test_lf_class_and_default_beta():
    assert homology_class(lf_word()).is_zero
    assert default_beta() == HomologyClass((1, 0, 0, 0))
    assert select_beta(B1) == B1
    beta = select_beta(A1)
    assert beta.is_primitive and intersection_number(beta, A1) == 0
    assert sum(map(abs, beta.coords)) == 1


def test_homology_class_validation():
    with pytest.raises(ValueError):
        HomologyClass((1, 0, 0))
    assert not HomologyClass((2, 0, 2, 0)).is_primitive
    assert HomologyClass((2, 3, 0, 0)).is_primitive


# ---------------------------------------------------------------- covers


@pytest.mark.parametrize("g", [2, 3, 5, 7])
def test_cover_invariants(g):
    inv = cover_invariants(CoverSpec(g))
    assert inv["degree"] == g - 1
    assert inv["euler_char"] == -2 * (g - 1)
    assert inv["genus"] == g


def test_cover_spec_validation():
    for bad in (1, 0, 2.5, True):
        with pytest.raises(ValueError):
            CoverSpec(bad)
    with pytest.raises(ValueError):
        CoverSpec(3, HomologyClass((0, 0, 0, 0)))


@settings(max_examples=200)
@given(gamma_words, gamma_words, st.sampled_from([3, 5, 7]))
def test_psi_is_a_homomorphism(u, v, g):
    spec = CoverSpec(g)
    x, y = _gamma_word(u), _gamma_word(v)
    assert psi(concat(x, y), spec) == (psi(x, spec) + psi(y, spec)) % spec.modulus
    comm = concat(concat(x, y), concat(inverse(x), inverse(y)))
    assert psi(comm, spec) == 0


def test_psi_values_and_lifts():
    spec = CoverSpec(5, HomologyClass((1, 0, 0, 0)))
    hb = homology_basis()
    for lab, s in PAIRING_WORDS.items():
        c = hb.pairing_classes[lab]
        assert psi(s, spec) == intersection_number(spec.beta, c) % 4
        assert 0 <= psi(s, spec) < 4
    # L_f is null-homologous, so every lift closes
    assert lift_count(lf_word(), spec) == 4
    assert lift_count(lf_word(), CoverSpec(7)) == 6


# ---------------------------------------------------------------- orbit check


def test_orbit_coincidence():
    recs = orbit_coincidence_check(4)
    assert len(recs) == 1 + 3 + 6 + 12 + 24
    assert all(r.ok for r in recs)
    assert {r.label for r in recs} <= set(range(18))
    with pytest.raises(ValueError):
        orbit_coincidence_check(-1)
