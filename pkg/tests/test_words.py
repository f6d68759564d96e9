import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chyp.words import (
    all_words_upto,
    as_word,
    concat,
    cyclic_reduce,
    enumerate_words,
    finite_order_symbolic,
    has_finite_order,
    inverse,
    is_reduced,
    power,
    reduce_word,
    tits_representation,
)

letters = st.lists(st.integers(1, 3), max_size=14)


def brute_force_words(maxlen):
    """Every string over {1,2,3}, filtered for reducedness, in shortlex order."""
    out = []
    for n in range(1, maxlen + 1):
        for w in itertools.product((1, 2, 3), repeat=n):
            if all(a != b for a, b in zip(w, w[1:])):
                out.append(w)
    return out


def test_enumeration_examples():
    assert list(enumerate_words(1)) == [(1,), (2,), (3,)]
    words = list(enumerate_words(5))
    counts = {n: sum(len(w) == n for w in words) for n in range(1, 6)}
    assert counts[2] == 6
    assert counts[5] == 48
    assert all(counts[n] == 3 * 2 ** (n - 1) for n in counts)


@pytest.mark.parametrize("maxlen", [1, 2, 4, 7])
def test_enumeration_matches_brute_force(maxlen):
    assert list(enumerate_words(maxlen)) == brute_force_words(maxlen)


def test_enumeration_rejects_bad_length():
    with pytest.raises(ValueError):
        list(enumerate_words(0))


def test_all_words_upto_starts_with_empty():
    w = list(all_words_upto(2))
    assert w[0] == () and len(w) == 1 + 3 + 6


@given(letters)
def test_reduce_word_properties(w):
    r = reduce_word(w)
    assert is_reduced(r)
    assert reduce_word(r) == r
    assert len(r) % 2 == len(w) % 2
    assert concat(w, inverse(w)) == ()


@given(letters, letters)
def test_concat_is_associative_reduction(a, b):
    assert concat(a, b) == reduce_word(reduce_word(a) + reduce_word(b))


def test_as_word_accepts_strings():
    assert as_word("1323") == (1, 3, 2, 3)
    with pytest.raises(ValueError):
        as_word("124")


def test_power():
    assert power("12", 3) == (1, 2, 1, 2, 1, 2)
    assert power("1", 2) == ()


@given(letters)
def test_cyclic_reduce_conjugation_invariant(w):
    w = reduce_word(w)
    for x in (1, 2, 3):
        conj = reduce_word((x,) + w + (x,))
        assert len(cyclic_reduce(conj)) == len(cyclic_reduce(w))


@pytest.mark.parametrize("orders", [(3, 3, 9), (2, 3, 7), (3, 4, 5)])
def test_relator_powers_are_finite(orders):
    p, q, r = orders
    for pair, m in (((2, 3), p), ((3, 1), q), ((1, 2), r)):
        for k in range(1, 2 * m + 1):
            assert has_finite_order(pair * k, p, q, r)
            assert has_finite_order(pair * k + pair[:1], p, q, r)


def test_infinite_order_examples():
    assert not has_finite_order((1, 3, 2, 3), 3, 3, 9)
    assert not has_finite_order((1, 2, 3), 3, 3, 9)
    assert finite_order_symbolic((1, 2, 3), 3, 3, 9) is False


def test_ideal_pairs_have_infinite_order():
    assert not has_finite_order((1, 2), 3, 3, math.inf)
    assert has_finite_order((2, 3), 3, 3, math.inf)


def _brute_order(w, p, q, r, kmax=60):
    _, gens = tits_representation(p, q, r)
    g = np.eye(3)
    for x in w:
        g = g @ gens[x - 1]
    acc = np.eye(3)
    for k in range(1, kmax + 1):
        acc = acc @ g
        if np.allclose(acc, np.eye(3), atol=1e-8):
            return k
        if np.max(np.abs(acc)) > 1e6:
            return None
    return None


@pytest.mark.parametrize("orders", [(3, 3, 9), (2, 3, 7)])
def test_finite_order_agrees_with_power_search(orders):
    # braid-move words such as 12121 are finite even though they use the
    # relator syllables; the decision procedure must agree with brute force
    for w in enumerate_words(7):
        expect = _brute_order(w, *orders) is not None
        assert has_finite_order(w, *orders) == expect, w


def test_tits_form_signature():
    B, gens = tits_representation(3, 3, 9)
    ev = np.linalg.eigvalsh(B)
    assert (ev > 0).sum() == 2 and (ev < 0).sum() == 1
    for g in gens:
        assert np.allclose(g @ g, np.eye(3))
        assert np.allclose(g.T @ B @ g, B)
