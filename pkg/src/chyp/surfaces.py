"""The genus-two surface group ``Gamma`` inside Delta(3, 3, 9).

``Gamma`` is generated by the nine side pairings of the 18-gon and has the
dihedral group ``D = <I1, I2>`` as a right transversal.  Coset labels are the
indices ``0..17`` of :func:`chyp.gon18.dihedral_words` (label ``0`` is the
identity, so ``w`` lies in ``Gamma`` exactly when its label is ``0``).
"""

import functools
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import NotASurface, NotInGamma, NumericalAmbiguity
from .gon18 import F_WORD, ROMAN, axis_chords, build_18gon, side_map, verify_side_pairings
from .realhyp import axis_of, distance, evaluate_letters, from_hyperboloid, lorentz, to_hyperboloid
from .words import LETTERS, all_words_upto, as_word, power, reduce_word

LANDING_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class Surface:
    gon: object
    smap: dict
    base: complex
    landing: tuple  # d_t(base) for each label t
    report: object

    @property
    def polygon(self):
        return self.gon.polygon


@functools.lru_cache(maxsize=None)
def genus_two_surface():
    gon = build_18gon()
    report = verify_side_pairings(gon.polygon, gon.pairings)
    O, A1, A2 = gon.triangle.vertices
    base = from_hyperboloid(to_hyperboloid(O) + to_hyperboloid(A1) + to_hyperboloid(A2))
    landing = tuple(m(base) for _, m in gon.dihedral)
    return Surface(gon, side_map(gon.polygon, gon.pairings), base, landing, report)


def _reduce_into_polygon(surf, z, maxsteps=10_000):
    """Move ``z`` into ``P`` by side pairings; returns the point and the
    pairings applied, as ``(label, sign)`` with sign ``+1`` for ``s`` and
    ``-1`` for ``s^-1``."""
    poly = surf.polygon
    applied = []
    for _ in range(maxsteps):
        X = to_hyperboloid(z)
        worst, k = 0.0, None
        for j in range(len(poly)):
            v = lorentz(X, poly.side_geodesic(j).normal)
            if v < worst:
                worst, k = v, j
        if k is None or worst > -1e-13:
            return z, applied
        motion, _, label = surf.smap[k]
        z = motion(z)
        if label.endswith("^-1"):
            applied.append((label[:-3], -1))
        else:
            applied.append((label, +1))
    raise NumericalAmbiguity("reduction into the polygon did not terminate")


def _landing_label(surf, z):
    hits = [t for t, p in enumerate(surf.landing) if distance(z, p) <= LANDING_TOL]
    if len(hits) != 1:
        raise NumericalAmbiguity(f"base point image lands on {len(hits)} candidate triangles")
    return hits[0]


def coset_of(w):
    """Label ``t`` of the right coset ``Gamma d_t`` containing ``w``."""
    surf = genus_two_surface()
    g = evaluate_letters(surf.gon.generators, as_word(w))
    z, _ = _reduce_into_polygon(surf, g(surf.base))
    return _landing_label(surf, z)


def in_gamma(w):
    return coset_of(w) == 0


def gamma_decomposition(w):
    """Pairing letters ``[(label, sign), ...]`` whose product is ``w``.

    Reducing ``w(b)`` gives ``t_n ... t_1 w = 1``, so ``w = t_1^-1 ... t_n^-1``.
    """
    surf = genus_two_surface()
    g = evaluate_letters(surf.gon.generators, as_word(w))
    z, applied = _reduce_into_polygon(surf, g(surf.base))
    if _landing_label(surf, z) != 0:
        raise NotInGamma(f"{''.join(map(str, as_word(w)))} is not in the surface group")
    return [(lab, -sgn) for lab, sgn in applied]


def gamma_power(w, kmax=18):
    w = as_word(w)
    if not reduce_word(w):
        raise ValueError("gamma_power needs a nontrivial word")
    table = coset_table()
    for k in range(1, kmax + 1):
        if table.label(power(w, k)) == 0:
            return k
    raise NumericalAmbiguity(f"no power up to {kmax} lies in the surface group")


# ---------------------------------------------------------------- coset table


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Right action of the generators on the 18 cosets, plus the abelianized
    Schreier generators ``d_t x d_{t.x}^-1`` in the free basis of the nine
    pairings."""

    action: tuple  # action[t][x - 1]
    schreier: tuple  # schreier[t][x - 1] -> length-9 integer vector

    def label(self, w):
        t = 0
        for x in as_word(w):
            t = self.action[t][x - 1]
        return t

    def pairing_vector(self, w):
        """Abelianized pairing exponents of ``w``; ``w`` must lie in ``Gamma``."""
        v = np.zeros(9, dtype=np.int64)
        t = 0
        for x in as_word(w):
            v += self.schreier[t][x - 1]
            t = self.action[t][x - 1]
        if t != 0:
            raise NotInGamma("word is not in the surface group")
        return v

    def rows(self, maxlen):
        """``(word, label)`` for all reduced words up to ``maxlen``."""
        return [("".join(map(str, w)), self.label(w)) for w in all_words_upto(maxlen)]


@functools.lru_cache(maxsize=None)
def coset_table():
    surf = genus_two_surface()
    words = [w for w, _ in surf.gon.dihedral]
    action, schreier = [], []
    for t, dt in enumerate(words):
        row_a, row_s = [], []
        for x in LETTERS:
            u = coset_of(dt + (x,))
            elem = reduce_word(dt + (x,) + tuple(reversed(words[u])))
            vec = np.zeros(9, dtype=np.int64)
            for lab, sgn in gamma_decomposition(elem):
                vec[ROMAN.index(lab)] += sgn
            vec.setflags(write=False)
            row_a.append(u)
            row_s.append(vec)
        action.append(tuple(row_a))
        schreier.append(tuple(row_s))
    return CosetTable(tuple(action), tuple(schreier))


# ---------------------------------------------------------------- homology


OMEGA4 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=np.int64)


@dataclass(frozen=True)
class HomologyClass:
    coords: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if len(c) != 4:
            raise ValueError("genus-two homology classes have four coordinates")
        object.__setattr__(self, "coords", c)

    def __add__(self, other):
        return HomologyClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return HomologyClass(tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return HomologyClass(tuple(k * a for a in self.coords))

    @property
    def is_zero(self):
        return not any(self.coords)

    @property
    def is_primitive(self):
        return not self.is_zero and math.gcd(*self.coords) == 1


A1 = HomologyClass((1, 0, 0, 0))
B1 = HomologyClass((0, 1, 0, 0))
A2 = HomologyClass((0, 0, 1, 0))
B2 = HomologyClass((0, 0, 0, 1))


def intersection_number(x, y):
    return int(np.array(x.coords) @ OMEGA4 @ np.array(y.coords))


def _arc_contains(p, q, u, n=18):
    """Whether position ``u`` lies strictly inside the ccw arc from ``p`` to ``q``."""
    return 0 < (u - p) % n < (q - p) % n


def pairing_intersection_matrix(incidence, n=18):
    """Algebraic intersections of the chords joining paired side midpoints.

    The loop of a pairing ``s`` runs through ``P`` from the midpoint of its
    source side to the midpoint of its target side.  Two chords meet once
    when their endpoints interleave; the sign is ``+1`` when the second
    crosses the first from right to left.
    """
    k = len(incidence)
    Q = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(incidence):
        for j, b in enumerate(incidence):
            if i == j:
                continue
            u_in = _arc_contains(a.source, a.target, b.source, n)
            v_in = _arc_contains(a.source, a.target, b.target, n)
            if u_in != v_in:
                Q[i, j] = 1 if u_in else -1
    return Q


@dataclass(frozen=True, eq=False)
class HomologyBasis:
    Q: np.ndarray  # intersection form on the free abelian group of the pairings
    basis: tuple  # a1, b1, a2, b2 as length-9 integer vectors
    euler_characteristic: int

    def coordinates(self, v):
        """Symplectic coordinates of a pairing-exponent vector."""
        v = np.asarray(v, dtype=np.int64)
        a1, b1, a2, b2 = self.basis
        q = self.Q
        return HomologyClass(
            (v @ q @ b1, -(v @ q @ a1), v @ q @ b2, -(v @ q @ a2))
        )

    @property
    def pairing_classes(self):
        return {lab: self.coordinates(np.eye(9, dtype=np.int64)[i]) for i, lab in enumerate(ROMAN)}


def _symplectic_basis(Q):
    cands = [np.eye(Q.shape[0], dtype=np.int64)[i] for i in range(Q.shape[0])]
    basis = []
    for _ in range(2):
        pair = _find_unimodular_pair(Q, cands)
        if pair is None:
            cands = cands + [x + y for x, y in product(cands, repeat=2)]
            pair = _find_unimodular_pair(Q, cands)
        if pair is None:
            raise NotASurface("could not find a symplectic basis")
        a, b = pair
        basis += [a, b]
        # project away the span of (a, b); Q(a, b) = 1
        cands = [x + (x @ Q @ a) * b - (x @ Q @ b) * a for x in cands]
        cands = [x for x in cands if np.any(x @ Q)]
    return tuple(basis)


def _find_unimodular_pair(Q, cands):
    for x in cands:
        for y in cands:
            q = int(x @ Q @ y)
            if q == 1:
                return x, y
            if q == -1:
                return y, x
    return None


@functools.lru_cache(maxsize=None)
def homology_basis():
    surf = genus_two_surface()
    rep = surf.report
    chi = rep.euler_characteristic
    if chi != -2 or any(abs(s - 2 * math.pi) > 1e-9 for s in rep.angle_sums):
        raise NotASurface(f"quotient has Euler characteristic {chi}, not -2")
    Q = pairing_intersection_matrix(rep.incidence, len(surf.polygon))
    if np.linalg.matrix_rank(Q.astype(float)) != 2 - chi:
        raise NotASurface("intersection form has the wrong rank")
    basis = _symplectic_basis(Q)
    hb = HomologyBasis(Q, basis, chi)
    # every generator must be an integral combination of the basis
    for i in range(9):
        e = np.eye(9, dtype=np.int64)[i]
        c = hb.coordinates(e).coords
        resid = e - sum(ci * bi for ci, bi in zip(c, basis))
        if np.any(resid @ Q):
            raise NotASurface("symplectic basis does not span the pairing classes")
    return hb


def homology_class(w):
    """Class in ``H_1`` of a word lying in ``Gamma``."""
    return homology_basis().coordinates(coset_table().pairing_vector(w))


# ---------------------------------------------------------------- covers


def lf_word():
    """Smallest power of ``I1 I3 I2 I3`` lying in ``Gamma``."""
    return power(F_WORD, gamma_power(F_WORD))


def select_beta(avoid, bound=2):
    """First primitive class, by L1 norm then descending lexicographic order,
    with zero intersection against ``avoid``."""
    vecs = [v for v in product(range(bound, -bound - 1, -1), repeat=4) if any(v)]
    vecs.sort(key=lambda v: sum(map(abs, v)))
    for v in vecs:
        c = HomologyClass(v)
        if c.is_primitive and intersection_number(c, avoid) == 0:
            return c
    raise ValueError("no primitive class found in the search box")


@functools.lru_cache(maxsize=None)
def default_beta():
    return select_beta(homology_class(lf_word()))


@dataclass(frozen=True)
class CoverSpec:
    genus_target: int
    beta: HomologyClass = None

    def __post_init__(self):
        g = self.genus_target
        if isinstance(g, bool) or int(g) != g or g < 2:
            raise ValueError("target genus must be an integer >= 2")
        object.__setattr__(self, "genus_target", int(g))
        if self.beta is None:
            object.__setattr__(self, "beta", default_beta())
        if not self.beta.is_primitive:
            raise ValueError("beta must be a nonzero primitive class")

    @property
    def modulus(self):
        return self.genus_target - 1


def psi(w, spec):
    """``i(beta, [w]) mod (g - 1)``, with representatives ``0 .. g-2``."""
    return intersection_number(spec.beta, homology_class(w)) % spec.modulus


def lift_count(w, spec):
    """Number of closed lifts of the loop ``w`` to the cyclic cover."""
    return math.gcd(psi(w, spec), spec.modulus)


def cover_invariants(spec):
    n = spec.modulus
    chi = -2 * n
    return {"degree": n, "euler_char": chi, "genus": (2 - chi) // 2}


# ---------------------------------------------------------------- orbit check


@dataclass(frozen=True)
class OrbitRecord:
    word: str
    label: int
    chord: int  # index of the chord line matching d(L_f), or -1

    @property
    def ok(self):
        return self.chord >= 0


def orbit_coincidence_check(depth, tol=1e-8):
    """For each word ``w`` of length ``<= depth``, write ``w = gamma d`` and
    look up ``d(L_f)`` among the traced chord lines ``L^i``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    surf = genus_two_surface()
    gon = surf.gon
    chords, _ = axis_chords(gon)
    lines = [c.geodesic for c in chords]
    Lf = axis_of(gon.f)
    table = coset_table()
    match = []
    for _, d in gon.dihedral:
        img = d.apply_geodesic(Lf)
        hit = [i for i, g in enumerate(lines) if img.same_as(g, oriented=False, tol=tol)]
        match.append(hit[0] if hit else -1)
    out = []
    for w in all_words_upto(depth):
        t = table.label(w)
        out.append(OrbitRecord("".join(map(str, w)), t, match[t]))
    return out
