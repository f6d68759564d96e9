"""Real hyperbolic plane: motions, geodesics, and triangles.

Points are complex numbers in the upper half-plane; boundary points are
reals or ``math.inf``.  Metric computations go through the hyperboloid
model ``-x0^2 + x1^2 + x2^2 = -1`` (see :func:`to_hyperboloid`); the disk
picture uses ``w = (z - i) / (z + i)``, which sends ``i`` to the centre.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotHyperbolic, NotHyperbolicTriangle, SharedEndpoint

J3 = np.diag([-1.0, 1.0, 1.0])
ENDPOINT_TOL = 1e-9


# ---------------------------------------------------------------- models


def to_disk(z):
    if z == math.inf:
        return 1.0 + 0j
    z = complex(z)
    return (z - 1j) / (z + 1j)


def from_disk(w):
    w = complex(w)
    if abs(1.0 - w) < 1e-300:
        return math.inf
    return 1j * (1.0 + w) / (1.0 - w)


def lorentz(x, y):
    return float(-x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def lorentz_cross(x, y):
    """Vector Lorentz-orthogonal to both ``x`` and ``y``."""
    return J3 @ np.cross(x, y)


def to_hyperboloid(z):
    z = complex(z)
    x, y = z.real, z.imag
    if not y > 0:
        raise ValueError(f"{z} is not in the upper half-plane")
    r2 = x * x + y * y
    return np.array([(r2 + 1.0) / (2.0 * y), (r2 - 1.0) / (2.0 * y), -x / y])


def from_hyperboloid(X):
    X = np.asarray(X, dtype=float)
    if X[0] < 0:
        X = -X
    X = X / math.sqrt(-lorentz(X, X))
    y = 1.0 / (X[0] - X[1])
    return complex(-X[2] * y, y)


def boundary_vector(x):
    """Null vector of the hyperboloid model representing a boundary point."""
    if x == math.inf:
        return np.array([1.0, 1.0, 0.0])
    x = float(x)
    return np.array([x * x + 1.0, x * x - 1.0, -2.0 * x])


def boundary_from_vector(u, tol=1e-14):
    u = np.asarray(u, dtype=float)
    if u[0] < 0:
        u = -u
    den = u[0] - u[1]
    if abs(den) <= tol * abs(u[0]):
        return math.inf
    return float(-u[2] / den)


def boundary_angle(x):
    """Angle of a boundary point on the unit circle of the disk model."""
    u = boundary_vector(x)
    return math.atan2(u[2], u[1]) % (2.0 * math.pi)


def distance(z, w):
    """Hyperbolic distance between two half-plane points.

    Uses ``sinh(d/2) = |z - w| / (2 sqrt(Im z Im w))``, which keeps full
    relative precision for nearby points.
    """
    z, w = complex(z), complex(w)
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def midpoint(z, w):
    X, Y = to_hyperboloid(z), to_hyperboloid(w)
    return from_hyperboloid(X + Y)


def point_along(z, w, t):
    """Point at fraction ``t`` of the segment from ``z`` to ``w``."""
    X, Y = to_hyperboloid(z), to_hyperboloid(w)
    d = math.acosh(max(1.0, -lorentz(X, Y)))
    if d == 0.0:
        return complex(z)
    P = (math.sinh((1 - t) * d) * X + math.sinh(t * d) * Y) / math.sinh(d)
    return from_hyperboloid(P)


def angle_at(b, a, c):
    """Angle at ``b`` of the geodesic triangle ``a b c``."""
    ab, bc, ac = distance(a, b), distance(b, c), distance(a, c)
    num = math.cosh(ab) * math.cosh(bc) - math.cosh(ac)
    return math.acos(max(-1.0, min(1.0, num / (math.sinh(ab) * math.sinh(bc)))))


def triangle_area(a, b, c):
    return math.pi - angle_at(a, c, b) - angle_at(b, a, c) - angle_at(c, b, a)


# ---------------------------------------------------------------- motions


@dataclass(frozen=True, eq=False)
class Motion2:
    """Isometry ``z -> m.z`` or, when ``flip`` is set, ``z -> m.conj(z)``.

    ``m`` is real and scaled to ``|det m| = 1``; orientation reversing maps
    of the upper half-plane have ``det m = -1``, so ``flip`` is read off the
    sign of the determinant.  Composition is plain matrix multiplication.
    """

    m: np.ndarray
    flip: bool = None

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError("Motion2 needs a 2x2 matrix")
        d = float(np.linalg.det(m))
        if not abs(d) > 1e-300:
            raise ValueError("singular matrix")
        m = m / math.sqrt(abs(d))
        flip = d < 0
        if self.flip is not None and bool(self.flip) != flip:
            raise ValueError("flip flag disagrees with the determinant sign")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "flip", flip)

    @classmethod
    def identity(cls):
        return cls(np.eye(2))

    def __matmul__(self, other):
        return Motion2(self.m @ other.m)

    def inverse(self):
        return Motion2(np.linalg.inv(self.m))

    def power(self, k):
        g = Motion2.identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            g = g @ base
        return g

    @property
    def trace(self):
        return float(np.trace(self.m))

    def __call__(self, z):
        return self.apply(z)

    def apply(self, z):
        z = complex(z)
        if self.flip:
            z = z.conjugate()
        (a, b), (c, d) = self.m
        return (a * z + b) / (c * z + d)

    def apply_boundary(self, x):
        (a, b), (c, d) = self.m
        if x == math.inf:
            return math.inf if c == 0 else a / c
        den = c * x + d
        if den == 0:
            return math.inf
        return (a * x + b) / den

    def apply_geodesic(self, g):
        return GeodesicH2(self.apply_boundary(g.a), self.apply_boundary(g.b))

    def same_as(self, other, tol=1e-9):
        if self.flip != other.flip:
            return False
        return min(np.max(np.abs(self.m - other.m)), np.max(np.abs(self.m + other.m))) <= tol


def compose(*motions):
    g = Motion2.identity()
    for h in motions:
        g = g @ h
    return g


# ---------------------------------------------------------------- geodesics


@dataclass(frozen=True)
class GeodesicH2:
    """Oriented geodesic from boundary point ``a`` to ``b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = _bpt(self.a), _bpt(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if _angle_gap(boundary_angle(a), boundary_angle(b)) <= ENDPOINT_TOL:
            raise ValueError("geodesic endpoints must be distinct")

    @classmethod
    def through(cls, z, w):
        """Geodesic through two points, oriented from ``z`` towards ``w``."""
        z, w = complex(z), complex(w)
        if abs(z.real - w.real) <= 1e-14 * max(1.0, abs(z), abs(w)):
            x = 0.5 * (z.real + w.real)
            return cls(x, math.inf) if w.imag > z.imag else cls(math.inf, x)
        c = (abs(z) ** 2 - abs(w) ** 2) / (2.0 * (z.real - w.real))
        rho = abs(z - c)
        tz = math.atan2(z.imag, z.real - c)
        tw = math.atan2(w.imag, w.real - c)
        return cls(c - rho, c + rho) if tw < tz else cls(c + rho, c - rho)

    @property
    def endpoints(self):
        return (self.a, self.b)

    @property
    def is_vertical(self):
        return math.inf in (self.a, self.b)

    @property
    def circle(self):
        """``(center, radius)``; vertical lines give ``(x, inf)``."""
        if self.a == math.inf:
            return (self.b, math.inf)
        if self.b == math.inf:
            return (self.a, math.inf)
        return (0.5 * (self.a + self.b), 0.5 * abs(self.b - self.a))

    @property
    def normal(self):
        """Unit spacelike normal; its sign records the orientation."""
        n = lorentz_cross(boundary_vector(self.a), boundary_vector(self.b))
        return n / math.sqrt(lorentz(n, n))

    def reversed(self):
        return GeodesicH2(self.b, self.a)

    def disk_endpoints(self):
        return (to_disk(self.a), to_disk(self.b))

    def angles(self):
        return (boundary_angle(self.a), boundary_angle(self.b))

    def same_as(self, other, oriented=True, tol=ENDPOINT_TOL):
        s, o = self.angles(), other.angles()
        fwd = _angle_gap(s[0], o[0]) <= tol and _angle_gap(s[1], o[1]) <= tol
        if fwd or oriented:
            return fwd
        return _angle_gap(s[0], o[1]) <= tol and _angle_gap(s[1], o[0]) <= tol

    def side_of(self, z):
        """Sign of the point relative to the oriented geodesic."""
        return float(np.sign(lorentz(to_hyperboloid(z), self.normal)))

    def point_nearest(self, z):
        """Orthogonal projection of ``z`` onto the geodesic."""
        X, n = to_hyperboloid(z), self.normal
        return from_hyperboloid(X - lorentz(X, n) * n)

    def distance_to(self, z):
        return math.asinh(abs(lorentz(to_hyperboloid(z), self.normal)))


def _bpt(x):
    x = float(x)
    if math.isinf(x):
        return math.inf
    if math.isnan(x):
        raise ValueError("boundary point is NaN")
    return x + 0.0  # drop a negative zero


def _angle_gap(s, t):
    d = abs(s - t) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


def geodesic_intersection(g1, g2):
    """Intersection point of two crossing geodesics, or ``None``."""
    X = lorentz_cross(g1.normal, g2.normal)
    q = lorentz(X, X)
    if not q < 0:
        return None
    return from_hyperboloid(X)


def geodesic_distance(g1, g2):
    """Distance between two disjoint geodesics (0 if they meet)."""
    c = abs(lorentz(g1.normal, g2.normal))
    return math.acosh(c) if c > 1.0 else 0.0


def geodesic_angle(g1, g2):
    """Acute angle between two crossing geodesics."""
    c = abs(lorentz(g1.normal, g2.normal))
    if c >= 1.0:
        raise ValueError("geodesics do not cross")
    return math.acos(c)


def are_perpendicular(g1, g2, tol=1e-9):
    return geodesic_intersection(g1, g2) is not None and abs(lorentz(g1.normal, g2.normal)) <= tol


def geodesics_cross(g1, g2, tol=ENDPOINT_TOL):
    """Whether the endpoint pairs interleave on the boundary circle."""
    a, b = g1.angles()
    c, d = g2.angles()
    for s in (a, b):
        for t in (c, d):
            if _angle_gap(s, t) <= tol:
                raise SharedEndpoint("geodesics share an ideal endpoint")

    def inside(x):
        return (x - a) % (2 * math.pi) < (b - a) % (2 * math.pi)

    return inside(c) != inside(d)


def reflect_in_geodesic(g):
    """Orientation reversing involution fixing ``g`` pointwise."""
    center, radius = g.circle
    if math.isinf(radius):
        return Motion2(np.array([[-1.0, 2.0 * center], [0.0, 1.0]]))
    return Motion2(np.array([[center, radius**2 - center**2], [1.0, -center]]))


def fixed_boundary_points(h, tol=1e-12):
    """Fixed points of a non-elliptic orientation preserving motion."""
    (a, b), (c, d) = h.m
    if abs(c) <= tol * max(1.0, abs(a), abs(d)):
        if abs(a - d) <= tol:
            return [math.inf]
        return [math.inf, b / (d - a)]
    disc = (a + d) ** 2 - 4.0
    if disc < 0:
        return []
    s = math.sqrt(max(disc, 0.0))
    return [(a - d - s) / (2 * c), (a - d + s) / (2 * c)]


def axis_of(h, tol=1e-12):
    """Axis of a hyperbolic motion (or glide reflection), oriented from the
    repelling to the attracting fixed point."""
    g = h @ h if h.flip else h
    if abs(g.trace) <= 2.0 + tol:
        raise NotHyperbolic(f"|trace| = {abs(g.trace):.6g} is not > 2")
    pts = fixed_boundary_points(g)
    # derivative of z -> (az+b)/(cz+d) at a fixed point x is 1/(cx+d)^2
    (_, _), (c, d) = g.m

    def derivative(x):
        if x == math.inf:
            return d / g.m[0, 0]
        return 1.0 / (c * x + d) ** 2

    rep, att = sorted(pts, key=derivative, reverse=True)
    return GeodesicH2(rep, att)


def translation_length(h):
    g = h @ h if h.flip else h
    t = abs(g.trace)
    if t <= 2.0:
        raise NotHyperbolic("not hyperbolic")
    ell = 2.0 * math.acosh(t / 2.0)
    return ell / 2.0 if h.flip else ell


# ---------------------------------------------------------------- triangles


@dataclass(frozen=True, eq=False)
class TriangleH2:
    """Triangle ``O A1 A2`` bounded by ``L1 = [O A1]``, ``L2 = [O A2]``, ``L3 = [A1 A2]``."""

    orders: tuple
    lines: tuple
    vertices: tuple
    reflections: tuple

    @property
    def angles(self):
        O, A1, A2 = self.vertices
        return (angle_at(A2, O, A1), angle_at(A1, O, A2), angle_at(O, A1, A2))

    @property
    def area(self):
        return triangle_area(*self.vertices)


def triangle_with_angles(p, q, r):
    """Triangle with ``angle(L2, L3) = pi/p``, ``angle(L1, L3) = pi/q``,
    ``angle(L1, L2) = pi/r``.

    The vertex ``O = L1 n L2`` is placed at ``i`` (the disk centre), ``L1``
    is the imaginary axis and ``L2`` leaves ``O`` at angle ``pi/r`` in the
    disk picture.
    """
    for m in (p, q, r):
        if isinstance(m, bool) or m != int(m) or m < 2:
            raise NotHyperbolicTriangle(f"orders must be finite integers >= 2, got {m!r}")
    if sum(Fraction(1, m) for m in (p, q, r) if not math.isinf(m)) >= 1:
        raise NotHyperbolicTriangle(f"1/p + 1/q + 1/r >= 1 for ({p}, {q}, {r})")
    P, Q, R = math.pi / p, math.pi / q, math.pi / r
    # dual law of cosines: the side opposite an angle
    d1 = math.acosh((math.cos(P) + math.cos(Q) * math.cos(R)) / (math.sin(Q) * math.sin(R)))
    d2 = math.acosh((math.cos(Q) + math.cos(P) * math.cos(R)) / (math.sin(P) * math.sin(R)))
    O = 1j
    A1 = from_disk(math.tanh(d1 / 2.0))
    A2 = from_disk(math.tanh(d2 / 2.0) * np.exp(1j * R))
    L1 = GeodesicH2(0.0, math.inf)
    e = np.exp(1j * R)
    L2 = GeodesicH2(from_disk(-e).real, from_disk(e).real)
    L3 = GeodesicH2.through(A1, A2)
    lines = (L1, L2, L3)
    refl = tuple(reflect_in_geodesic(L) for L in lines)
    return TriangleH2((p, q, r), lines, (O, A1, A2), refl)


def ideal_triangle_reflections():
    """Reflections in the sides of the ideal triangle ``0, 1, inf``."""
    return (
        reflect_in_geodesic(GeodesicH2(0.0, math.inf)),
        reflect_in_geodesic(GeodesicH2(1.0, math.inf)),
        reflect_in_geodesic(GeodesicH2(0.0, 1.0)),
    )


def evaluate_letters(gens, word):
    """Product ``gens[w1] gens[w2] ...`` for a word over ``{1, 2, 3}``."""
    g = Motion2.identity()
    for x in word:
        g = g @ gens[x - 1]
    return g


# ---------------------------------------------------------------- hypercycles


def hypercycle_arc_length(axis, z, w):
    """Arc length between two points on a common hypercycle of ``axis``."""
    pz, pw = axis.point_nearest(z), axis.point_nearest(w)
    return distance(pz, pw) * math.cosh(axis.distance_to(z))


def hypercycle_meet(axis, through, line):
    """Point where the hypercycle of ``axis`` through ``through`` meets ``line``.

    ``line`` must be perpendicular to ``axis``.  On the hypercycle at signed
    distance ``s`` the point over a foot ``F`` is ``cosh(s) F + sinh(s) n``.
    """
    n = axis.normal
    X = to_hyperboloid(through)
    s = math.asinh(lorentz(X, n))
    foot = geodesic_intersection(axis, line)
    if foot is None:
        raise ValueError("line does not meet the axis")
    F = to_hyperboloid(foot)
    return from_hyperboloid(math.cosh(s) * F + math.sinh(s) * n)


@dataclass(frozen=True)
class QuadrilateralReport:
    equal_diagonal_sides: bool
    equal_arc_lengths: bool
    reflection_invariant: bool
    diagonals_bisect_on_axis: bool

    def __bool__(self):
        return (
            self.equal_diagonal_sides
            and self.equal_arc_lengths
            and self.reflection_invariant
            and self.diagonals_bisect_on_axis
        )


def quadrilateral_conditions(axis, A, B, C, D, tol=1e-9):
    """Evaluate the symmetry conditions of ``ABCD`` relative to ``axis``.

    ``A, D`` are meant to lie on one hypercycle of ``axis`` and ``B, C`` on
    another, with ``A, B`` and ``C, D`` on geodesics perpendicular to it.
    """
    c1 = abs(distance(A, D) - distance(B, C)) <= tol
    c2 = abs(hypercycle_arc_length(axis, A, D) - hypercycle_arc_length(axis, B, C)) <= tol
    If = reflect_in_geodesic(axis)
    c3 = bool(
        abs(If(A) - B) <= tol * max(1.0, abs(B))
        and abs(If(D) - C) <= tol * max(1.0, abs(C))
    )
    m1, m2 = midpoint(A, C), midpoint(B, D)
    c4 = distance(m1, m2) <= tol and axis.distance_to(m1) <= tol
    return QuadrilateralReport(c1, c2, c3, c4)


def midpoint_quadrilateral_check(f, L1, L4, A, C, tol=1e-9):
    """Build ``ABCD`` from ``A`` on ``L1`` and ``C`` on ``L4`` using the
    hypercycles of the axis of ``f`` through ``A`` and ``C``, then test it."""
    axis = axis_of(f)
    B = hypercycle_meet(axis, C, L1)
    D = hypercycle_meet(axis, A, L4)
    return quadrilateral_conditions(axis, A, B, C, D, tol)
