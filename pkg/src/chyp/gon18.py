"""The regular 18-gon built from the (3, 3, 9) reflection triangle, its side
pairings, and the closed geodesic of ``I1 I3 I2 I3`` drawn on the quotient.

Vertices are numbered from 0: ``V[2k] = (I2 I1)^k A1`` and
``V[2k+1] = (I2 I1)^k A2``; side ``k`` is ``[V[k], V[k+1]]``.
"""

import math
from dataclasses import dataclass, field

from .errors import (
    DegenerateTangency,
    NoClosure,
    NotHyperbolic,
    NumericalAmbiguity,
    PairingMismatch,
)
from .realhyp import (
    GeodesicH2,
    Motion2,
    angle_at,
    axis_of,
    boundary_vector,
    distance,
    evaluate_letters,
    geodesic_intersection,
    lorentz,
    midpoint,
    to_disk,
    to_hyperboloid,
    triangle_area,
    triangle_with_angles,
)
from .words import reduce_word, word_str

ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX")
F_WORD = (1, 3, 2, 3)


def _w(s):
    return tuple(int(c) for c in s)


def _conj(prefix, core, suffix):
    return reduce_word(_w(prefix) + core + _w(suffix))


def _pairing_words():
    s1 = _w("2121") + _w("23")
    s4 = _w("12121212") + _w("3212")
    words = {
        "I": s1,
        "II": _conj("1212", s1, "2121"),
        "III": _conj("21", s1, "12"),
        "IV": s4,
        "V": _conj("121212", s4, "212121"),
        "VI": _conj("212121", s1, "121212"),
        "VII": _conj("21212121", s1, "12121212"),
        "VIII": _conj("212121", s4, "121212"),
        "IX": _conj("121212", s1, "212121"),
    }
    return {k: words[k] for k in ROMAN}


PAIRING_WORDS = _pairing_words()


@dataclass(frozen=True, eq=False)
class HyperbolicPolygon:
    vertices: tuple
    center: complex

    def __len__(self):
        return len(self.vertices)

    def side(self, k):
        n = len(self.vertices)
        return self.vertices[k % n], self.vertices[(k + 1) % n]

    def side_geodesic(self, k):
        """Side line oriented so that the polygon lies on its positive side."""
        a, b = self.side(k)
        g = GeodesicH2.through(a, b)
        return g if g.side_of(self.center) > 0 else g.reversed()

    def side_midpoint(self, k):
        return midpoint(*self.side(k))

    @property
    def interior_angles(self):
        n = len(self.vertices)
        v = self.vertices
        return [angle_at(v[k], v[k - 1], v[(k + 1) % n]) for k in range(n)]

    @property
    def area(self):
        """Sum of the triangles fanned out from the centre."""
        return sum(triangle_area(self.center, *self.side(k)) for k in range(len(self)))

    def contains(self, z, tol=1e-12):
        X = to_hyperboloid(z)
        return all(lorentz(X, self.side_geodesic(k).normal) >= -tol for k in range(len(self)))

    def disk_vertices(self):
        return [to_disk(v) for v in self.vertices]


@dataclass(frozen=True, eq=False)
class SidePairing:
    label: str
    word: tuple
    motion: Motion2

    @property
    def word_string(self):
        return word_str(self.word)


@dataclass(frozen=True, eq=False)
class Gon18:
    triangle: object
    polygon: HyperbolicPolygon
    pairings: tuple
    dihedral: tuple  # (word, Motion2), index = sector of the image of the base triangle
    generators: tuple = field(repr=False)

    def pairing(self, label):
        return next(s for s in self.pairings if s.label == label)

    def word_motion(self, w):
        return evaluate_letters(self.generators, w)

    @property
    def f(self):
        return self.word_motion(F_WORD)


def dihedral_words():
    """Words for the 18 elements of ``<I1, I2>``; entry ``j`` maps the base
    triangle onto sector ``j`` of the polygon."""
    out = [None] * 18
    for k in range(9):
        out[(2 * k) % 18] = reduce_word(_w("21") * k)
        out[(2 * k - 1) % 18] = reduce_word(_w("21") * k + (1,))
    return out


def build_18gon():
    tri = triangle_with_angles(3, 3, 9)
    gens = tri.reflections
    O, A1, A2 = tri.vertices
    rot = gens[1] @ gens[0]
    verts = []
    for k in range(9):
        rk = rot.power(k)
        verts += [rk(A1), rk(A2)]
    poly = HyperbolicPolygon(tuple(verts), O)
    pairings = tuple(
        SidePairing(lab, w, evaluate_letters(gens, w)) for lab, w in PAIRING_WORDS.items()
    )
    dih = tuple((w, evaluate_letters(gens, w)) for w in dihedral_words())
    return Gon18(tri, poly, pairings, dih, gens)


# ---------------------------------------------------------------- side pairings


@dataclass(frozen=True)
class Incidence:
    label: str
    source: int
    target: int
    vertex_map: tuple  # ((i, j), (i', j')): vertex i goes to vertex j


def find_incidence(poly, pairing, tol=1e-9):
    """Discover which side ``pairing`` carries onto which, or raise."""
    n = len(poly)
    s = pairing.motion
    if s.flip:
        raise PairingMismatch(pairing.label, "orientation reversing")
    for i in range(n):
        a, b = s(poly.vertices[i]), s(poly.vertices[(i + 1) % n])
        for j in range(n):
            c, d = poly.side(j)
            if distance(a, d) <= tol and distance(b, c) <= tol:
                vmap = ((i, (j + 1) % n), ((i + 1) % n, j))
            elif distance(a, c) <= tol and distance(b, d) <= tol:
                vmap = ((i, j), ((i + 1) % n, (j + 1) % n))
            else:
                continue
            # the image polygon must sit across the target side
            if poly.side_geodesic(j).side_of(s(poly.center)) >= 0:
                raise PairingMismatch(pairing.label, f"image of P overlaps P along side {j}")
            return Incidence(pairing.label, i, j, vmap)
    raise PairingMismatch(pairing.label, "no side is carried onto a side")


def side_map(poly, pairings):
    """For each side index, the motion carrying it onto its partner."""
    out = {}
    for s in pairings:
        inc = find_incidence(poly, s)
        out[inc.source] = (s.motion, inc.target, s.label)
        out[inc.target] = (s.motion.inverse(), inc.source, s.label + "^-1")
    return out


@dataclass(frozen=True)
class PairingReport:
    incidence: tuple
    cycles: tuple
    angle_sums: tuple
    area: float
    genus: float
    euler_characteristic: int


def verify_side_pairings(poly, pairings, tol=1e-9):
    incidence = tuple(find_incidence(poly, s, tol) for s in pairings)
    used = [k for inc in incidence for k in (inc.source, inc.target)]
    if sorted(used) != list(range(len(poly))):
        bad = next(inc.label for inc in incidence if used.count(inc.source) > 1 or used.count(inc.target) > 1)
        raise PairingMismatch(bad, "sides are not paired one to one")
    parent = list(range(len(poly)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for inc in incidence:
        for i, j in inc.vertex_map:
            parent[find(i)] = find(j)
    classes = {}
    for v in range(len(poly)):
        classes.setdefault(find(v), []).append(v)
    cycles = tuple(tuple(c) for c in sorted(classes.values()))
    angles = poly.interior_angles
    sums = tuple(sum(angles[v] for v in c) for c in cycles)
    area = poly.area
    chi = len(cycles) - len(incidence) + 1
    return PairingReport(incidence, cycles, sums, area, area / (4 * math.pi) + 1, chi)


# ---------------------------------------------------------------- chords


@dataclass(frozen=True)
class Chord:
    geodesic: GeodesicH2
    entry_side: int
    entry: complex
    exit_side: int
    exit: complex


def _crossings(poly, L, tol=1e-9):
    hits = []
    for k in range(len(poly)):
        side = poly.side_geodesic(k)
        x = geodesic_intersection(L, side)
        if x is None:
            continue
        a, b = poly.side(k)
        if distance(a, x) + distance(x, b) - distance(a, b) <= tol:
            if min(distance(a, x), distance(x, b)) <= tol:
                raise NumericalAmbiguity("geodesic passes through a polygon vertex")
            hits.append((k, x))
    return hits


def chord_of(poly, L):
    hits = _crossings(poly, L)
    if len(hits) != 2:
        raise ValueError(f"geodesic meets {len(hits)} sides, expected 2")
    ub = boundary_vector(L.b)
    # -<x, u_b> decreases monotonically towards the endpoint b
    (k_in, x_in), (k_out, x_out) = sorted(
        hits, key=lambda h: -lorentz(to_hyperboloid(h[1]), ub), reverse=True
    )
    return Chord(L, k_in, x_in, k_out, x_out)


def trace_axis_chords(poly, pairings, L, maxsteps=200, tol=1e-9):
    """Unfold ``L`` through the side pairings until it closes up.

    Returns ``(chords, k)`` with ``k`` the first step such that ``L^k = L^1``.

    Following a geodesic through a surface is chaotic: endpoint errors grow
    like ``exp(length)``.  The forward pass therefore only fixes the pairing
    sequence and flags a candidate return; closure is confirmed by checking
    that the composed pairing element has ``L`` as its axis, and the second
    half of the chords is recomputed backwards from ``L``.
    """
    smap = side_map(poly, pairings)
    chords = [chord_of(poly, L)]
    used = []
    closed_at = None
    for step in range(2, maxsteps + 1):
        motion, target, _ = smap[chords[-1].exit_side]
        used.append(motion)
        nxt = motion.apply_geodesic(chords[-1].geodesic)
        if nxt.same_as(L, tol=1e-5) and _returns(used, L, tol):
            closed_at = step
            break
        c = chord_of(poly, nxt)
        if c.entry_side != target:
            raise NumericalAmbiguity(f"chord re-entered through side {c.entry_side}, expected {target}")
        chords.append(c)
    if closed_at is None:
        raise NoClosure(maxsteps)
    n = len(chords)
    back = L
    for k in range(n - 1, n // 2, -1):
        back = used[k].inverse().apply_geodesic(back)
        chords[k] = chord_of(poly, back)
    return chords, closed_at


def _returns(used, L, tol):
    g = Motion2.identity()
    for m in used:
        g = m @ g
    try:
        ax = axis_of(g)
    except NotHyperbolic:
        return False
    return ax.same_as(L, oriented=False, tol=tol)


def self_intersection_count(chords, pairings, poly, tol=1e-8):
    """Transverse self-crossings of the closed curve made of ``chords``.

    Crossings inside ``P`` are counted per chord pair.  A boundary point is
    a crossing when two chord passages go through points of ``P``'s sides
    identified by the pairings; ``k`` passages through one point give
    ``k (k - 1) / 2`` crossings.
    """
    count = 0
    n = len(chords)
    for i in range(n):
        for j in range(i + 1, n):
            gi, gj = chords[i].geodesic, chords[j].geodesic
            if gi.same_as(gj, oriented=False):
                raise DegenerateTangency(f"chords {i} and {j} coincide")
            x = geodesic_intersection(gi, gj)
            if x is None:
                continue
            ci, cj = chords[i], chords[j]
            if _strictly_inside(x, ci.entry, ci.exit, tol) and _strictly_inside(x, cj.entry, cj.exit, tol):
                count += 1
    smap = side_map(poly, pairings)
    passages = []
    for c in chords:
        side, x = c.exit_side, c.exit
        motion, partner, _ = smap[side]
        g = c.geodesic
        if partner < side:
            side, x, g = partner, motion(x), motion.apply_geodesic(g)
        passages.append((side, x, g))
    groups = []
    for side, x, g in passages:
        for grp in groups:
            if grp[0][0] == side and distance(grp[0][1], x) <= tol:
                grp.append((side, x, g))
                break
        else:
            groups.append([(side, x, g)])
    for grp in groups:
        k = len(grp)
        if k > 1:
            _check_transverse(grp)
        count += k * (k - 1) // 2
    return count


def _strictly_inside(x, a, b, tol):
    da, db, ab = distance(a, x), distance(x, b), distance(a, b)
    return da > tol and db > tol and da + db - ab <= tol


def _check_transverse(group):
    """Passages through one boundary point must cross at a nonzero angle."""
    for i in range(len(group)):
        for j in range(i + 1, len(group)):
            if group[i][2].same_as(group[j][2], oriented=False):
                raise DegenerateTangency("two passages run along the same geodesic")


def axis_chords(gon):
    """Chord system of the axis of ``I1 I3 I2 I3``."""
    return trace_axis_chords(gon.polygon, gon.pairings, axis_of(gon.f))
