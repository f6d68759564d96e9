"""Words in the involutive generators of a triangle group.

A word is a tuple of letters from ``{1, 2, 3}`` with no two equal
neighbours.  Strings such as ``"1323"`` are accepted wherever a word is.
"""

import math

import numpy as np

LETTERS = (1, 2, 3)


def as_word(w):
    if isinstance(w, str):
        w = [int(ch) for ch in w if not ch.isspace()]
    w = tuple(int(x) for x in w)
    if any(x not in LETTERS for x in w):
        raise ValueError(f"letters must be 1, 2 or 3: {w!r}")
    return w


def word_str(w):
    return "".join(str(x) for x in w)


def reduce_word(w):
    """Free reduction under ``i_k^2 = 1``."""
    out = []
    for x in as_word(w):
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w):
    return all(a != b for a, b in zip(w, w[1:]))


def inverse(w):
    # each letter is an involution
    return tuple(reversed(as_word(w)))


def concat(*ws):
    return reduce_word(sum((as_word(w) for w in ws), ()))


def power(w, k):
    return reduce_word(as_word(w) * k)


def enumerate_words(maxlen, letters=LETTERS):
    """Reduced words of length ``1..maxlen`` in shortlex order.

    There are ``3 * 2**(L-1)`` words of each length ``L``.
    """
    if maxlen < 1:
        raise ValueError("maxlen must be at least 1")
    level = [(x,) for x in letters]
    for _ in range(maxlen):
        yield from level
        level = [w + (x,) for w in level for x in letters if x != w[-1]]


def cyclic_reduce(w):
    """Strip conjugating letters ``x u x -> u`` until the word is cyclically reduced."""
    w = list(reduce_word(w))
    while len(w) >= 2 and w[0] == w[-1]:
        w = w[1:-1]
    return tuple(w)


def relator_orders(p, q, r):
    """Map from unordered letter pairs to the order of their product."""
    return {frozenset((2, 3)): p, frozenset((3, 1)): q, frozenset((1, 2)): r}


def longest_cyclic_syllables(w):
    """Longest cyclic run using only two letters, for each of the three pairs."""
    n = len(w)
    out = {}
    for pair in ((2, 3), (3, 1), (1, 2)):
        s = set(pair)
        inside = [x in s for x in w]
        if all(inside):
            out[frozenset(pair)] = math.inf
            continue
        best = run = 0
        for flag in inside * 2:  # doubling catches runs that wrap around
            run = run + 1 if flag else 0
            best = max(best, run)
        out[frozenset(pair)] = min(best, n)
    return out


def tits_representation(p, q, r):
    """Reflection matrices of the Tits representation of Delta(p, q, r).

    The bilinear form has entries ``-cos(pi / m)`` (``-1`` for ``m = inf``);
    the representation is faithful, so it decides finiteness of orders.
    """
    m = relator_orders(p, q, r)

    def b(i, j):
        if i == j:
            return 1.0
        mij = m[frozenset((i, j))]
        return -1.0 if math.isinf(mij) else -math.cos(math.pi / mij)

    B = np.array([[b(i, j) for j in LETTERS] for i in LETTERS])
    gens = []
    for i in range(3):
        e = np.zeros((3, 3))
        e[i, i] = 1.0
        gens.append(np.eye(3) - 2.0 * e @ B)
    return B, gens


def _finite_order_tits(w, p, q, r, tol=1e-9):
    _, gens = tits_representation(p, q, r)
    g = np.eye(3)
    for x in w:
        g = g @ gens[x - 1]
    if len(w) % 2 == 1:
        g2 = g @ g
        return np.max(np.abs(g2 - np.eye(3))) <= tol * max(1.0, np.max(np.abs(g2)))
    t = np.trace(g)
    if t < 3.0 - tol:
        return True
    return np.max(np.abs(g - np.eye(3))) <= tol * max(1.0, np.max(np.abs(g)))


def finite_order_symbolic(w, p, q, r):
    """Syllable test: ``True``/``False`` when decisive, ``None`` when not.

    A cyclically reduced word on at most two letters lies in a vertex group
    (finite); one on all three letters whose cyclic two-letter syllables are
    all shorter than the corresponding relator half-length admits no braid
    move and has infinite order.
    """
    u = cyclic_reduce(w)
    if len(set(u)) <= 2:
        m = relator_orders(p, q, r).get(frozenset(set(u)), None) if len(set(u)) == 2 else 1
        return not (m is not None and math.isinf(m))
    orders = relator_orders(p, q, r)
    for pair, run in longest_cyclic_syllables(u).items():
        if run >= orders[pair]:
            return None
    return False


def has_finite_order(w, p, q, r):
    """Whether the word has finite order in the abstract group Delta(p, q, r)."""
    verdict = finite_order_symbolic(w, p, q, r)
    if verdict is None:
        verdict = _finite_order_tits(cyclic_reduce(w), p, q, r)
    return bool(verdict)


def all_words_upto(maxlen):
    """Every reduced word up to ``maxlen`` including the empty word."""
    yield ()
    yield from enumerate_words(maxlen)

