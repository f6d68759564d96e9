"""Hermitian forms of signature (2,1), projective points, the Bergman
distance, and the Heisenberg group structure of the boundary.

Two standard forms are provided.  ``FIRST_FORM`` is ``diag(1, 1, -1)``
(ball model); ``SECOND_FORM`` is the antidiagonal form (Siegel model,
``infinity = [1, 0, 0]``).  ``CAYLEY`` converts between them.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NonInteriorPoint

NULL_TOL = 1e-10
HERMITIAN_TOL = 1e-12
SQRT2 = np.sqrt(2.0)


class FormKind(Enum):
    FIRST = "first"
    SECOND = "second"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class HermitianForm:
    matrix: np.ndarray
    kind: FormKind = FormKind.CUSTOM

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (3, 3):
            raise ValueError("Hermitian form must be 3x3")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian")
        signs = np.sign(np.linalg.eigvalsh(m))
        if sorted(signs.tolist()) != [-1.0, 1.0, 1.0]:
            raise ValueError("form must have signature (2,1)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, z, w):
        return inner(self, z, w)

    def __repr__(self):
        return f"HermitianForm(kind={self.kind.value})"


FIRST_FORM = HermitianForm(np.diag([1.0, 1.0, -1.0]), FormKind.FIRST)
SECOND_FORM = HermitianForm(
    np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=float), FormKind.SECOND
)

# conj(C).T @ J1 @ C == J2 exactly; maps Siegel coordinates to ball coordinates.
CAYLEY = np.array(
    [[1.0, 0.0, 1.0], [0.0, SQRT2, 0.0], [1.0, 0.0, -1.0]], dtype=np.complex128
) / SQRT2
CAYLEY_INV = np.linalg.inv(CAYLEY)


def inner(form, z, w):
    """Hermitian product ``conj(w)^T J z``."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    return complex(w.conj() @ form.matrix @ z)


def norm2(form, z):
    return inner(form, z, z).real


def second_to_first(v):
    return CAYLEY @ np.asarray(v, dtype=np.complex128)


def first_to_second(v):
    return CAYLEY_INV @ np.asarray(v, dtype=np.complex128)


def conjugate_matrix_to_first(m):
    """Rewrite a SECOND_FORM-unitary matrix as a FIRST_FORM-unitary one."""
    return CAYLEY @ np.asarray(m, dtype=np.complex128) @ CAYLEY_INV


def conjugate_matrix_to_second(m):
    return CAYLEY_INV @ np.asarray(m, dtype=np.complex128) @ CAYLEY


# ---------------------------------------------------------------------------
# projective points


class PointClass(Enum):
    NEGATIVE = "negative"
    NULL = "null"
    POSITIVE = "positive"


def normalize_rep(v):
    """Unit Euclidean norm, first nonzero coordinate real and positive."""
    v = np.asarray(v, dtype=np.complex128)
    n = np.linalg.norm(v)
    if n == 0 or not np.isfinite(n):
        raise ValueError("projective point needs a finite nonzero vector")
    v = v / n
    for c in v:
        if abs(c) > 1e-14:
            v = v * (abs(c) / c)
            break
    return v


def classify_vector(form, v, tol=NULL_TOL):
    v = np.asarray(v, dtype=np.complex128)
    q = norm2(form, v)
    scale = float(np.vdot(v, v).real)
    if abs(q) <= tol * scale:
        return PointClass.NULL
    return PointClass.NEGATIVE if q < 0 else PointClass.POSITIVE


@dataclass(frozen=True, eq=False)
class ProjPoint:
    rep: np.ndarray
    kind: PointClass
    form: HermitianForm = field(default=FIRST_FORM, repr=False)

    @classmethod
    def from_vector(cls, v, form=FIRST_FORM, tol=NULL_TOL):
        rep = normalize_rep(v)
        rep.setflags(write=False)
        return cls(rep, classify_vector(form, rep, tol), form)

    def transformed(self, matrix):
        return ProjPoint.from_vector(np.asarray(matrix) @ self.rep, self.form)

    def same_as(self, other, tol=1e-9):
        """Projective equality, i.e. ``|<u, v>_euclid| = 1`` for unit reps."""
        return abs(abs(np.vdot(self.rep, other.rep)) - 1.0) <= tol


def as_point(x, form=FIRST_FORM):
    return x if isinstance(x, ProjPoint) else ProjPoint.from_vector(x, form)


def _require_negative(*pts):
    for p in pts:
        if p.kind is not PointClass.NEGATIVE:
            raise NonInteriorPoint(f"expected a negative point, got {p.kind.value}")


def cosh2_half_distance(form, p, q):
    p, q = as_point(p, form), as_point(q, form)
    _require_negative(p, q)
    zw = inner(form, p.rep, q.rep)
    return (abs(zw) ** 2) / (norm2(form, p.rep) * norm2(form, q.rep))


def bergman_distance(form, p, q):
    """Bergman distance between two negative points.

    Evaluated as ``sinh^2(d/2) = -<w', w'> / <w, w>`` with ``w'`` the
    component of ``w`` orthogonal to ``z``; this equals the ``cosh^2`` ratio
    minus one but keeps precision for nearby points.
    """
    p, q = as_point(p, form), as_point(q, form)
    _require_negative(p, q)
    z, w = p.rep, q.rep
    w_perp = w - (inner(form, w, z) / norm2(form, z)) * z
    s2 = -norm2(form, w_perp) / norm2(form, w)
    return 2.0 * float(np.arcsinh(np.sqrt(max(s2, 0.0))))


def geodesic_point(form, p, q, t):
    """Point at fraction ``t`` of the way from ``p`` to ``q`` along the geodesic."""
    p, q = as_point(p, form), as_point(q, form)
    _require_negative(p, q)
    z = p.rep / np.sqrt(-norm2(form, p.rep))
    w = q.rep / np.sqrt(-norm2(form, q.rep))
    zw = inner(form, z, w)  # <z, w>
    half = np.arccosh(max(abs(zw), 1.0))
    if half == 0.0:
        return p
    # rotate w so that <z, w> is real negative
    w = w * (-abs(zw) / zw).conjugate()
    s = t * half
    v = (np.sinh(half - s) * z + np.sinh(s) * w) / np.sinh(half)
    return ProjPoint.from_vector(v, form)


def bisector_side(form, z, w, x, tol=1e-9):
    """Sign of ``d(x, z) - d(x, w)``; zero on the bisector of ``z`` and ``w``."""
    z, w, x = as_point(z, form), as_point(w, form), as_point(x, form)
    _require_negative(z, w, x)
    if z.same_as(w):
        raise ValueError("bisector needs two distinct points")
    diff = bergman_distance(form, x, z) - bergman_distance(form, x, w)
    if abs(diff) <= tol:
        return 0
    return -1 if diff < 0 else 1


# ---------------------------------------------------------------------------
# Heisenberg group


@dataclass(frozen=True)
class HeisenbergPoint:
    zeta: complex = 0j
    v: float = 0.0
    is_infinity: bool = False

    @classmethod
    def infinity(cls):
        return cls(0j, 0.0, True)

    def __mul__(self, other):
        return heisenberg_mul(self, other)

    def inverse(self):
        _finite(self)
        return HeisenbergPoint(-complex(self.zeta), -float(self.v))

    def norm(self):
        _finite(self)
        z = complex(self.zeta)
        return float(np.sqrt(abs(abs(z) ** 2 - 1j * self.v)))


def _finite(*pts):
    for p in pts:
        if p.is_infinity:
            raise ValueError("operation undefined at the point at infinity")


def heisenberg_mul(a, b):
    _finite(a, b)
    za, zb = complex(a.zeta), complex(b.zeta)
    return HeisenbergPoint(
        za + zb, float(a.v) + float(b.v) + 2.0 * (za * zb.conjugate()).imag
    )


def cygan_distance(a, b):
    return heisenberg_mul(a.inverse(), b).norm()


def unipotent_translation(zeta, v):
    """Matrix of the Heisenberg translation ``T(zeta, v)`` (SECOND_FORM)."""
    zeta = complex(zeta)
    return np.array(
        [
            [1.0, -SQRT2 * zeta.conjugate(), -abs(zeta) ** 2 + 1j * v],
            [0.0, 1.0, SQRT2 * zeta],
            [0.0, 0.0, 1.0],
        ],
        dtype=np.complex128,
    )


def boundary_from_heisenberg(h):
    """Null point of the SECOND_FORM model; infinity maps to ``[1, 0, 0]``."""
    if h.is_infinity:
        return ProjPoint.from_vector([1.0, 0.0, 0.0], SECOND_FORM)
    zeta = complex(h.zeta)
    return ProjPoint.from_vector(
        [-abs(zeta) ** 2 + 1j * h.v, SQRT2 * zeta, 1.0], SECOND_FORM
    )


def heisenberg_from_boundary(p, tol=1e-12):
    if p.form is not SECOND_FORM:
        raise ValueError("Heisenberg coordinates need a SECOND_FORM point")
    if p.kind is not PointClass.NULL:
        raise NonInteriorPoint("expected a boundary (null) point")
    z1, z2, z3 = p.rep
    if abs(z3) <= tol:
        return HeisenbergPoint.infinity()
    z1, z2 = z1 / z3, z2 / z3
    return HeisenbergPoint(complex(z2 / SQRT2), float(z1.imag))
