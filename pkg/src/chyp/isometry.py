"""Classification and length invariants of SU(2,1) elements."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ._accel import kernels
from .cxcore import (
    FIRST_FORM,
    PointClass,
    ProjPoint,
    as_point,
    bergman_distance,
    inner,
    norm2,
)
from .errors import BadTolerance, NoNullEigenvector, NonInteriorPoint, NotHyperbolic

OMEGA = np.exp(2j * np.pi / 3)
CUBE_ROOTS = (1.0 + 0j, OMEGA, OMEGA.conjugate())
UNIPOTENT_TRACE_TOL = 1e-8
UNIPOTENT_NILPOTENCY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SU21Element:
    """A 3x3 complex matrix preserving ``form`` with unit determinant."""

    matrix: np.ndarray
    form: object = FIRST_FORM

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def checked(cls, matrix, form=FIRST_FORM, tol=1e-10):
        g = cls(matrix, form)
        err_u, err_d = g.defects()
        scale = max(1.0, np.linalg.norm(g.matrix) ** 2)
        if err_u > tol * scale:
            raise ValueError(f"matrix is not unitary for the form (defect {err_u:.2e})")
        if err_d > tol * scale**1.5:
            raise ValueError(f"determinant is not 1 (defect {err_d:.2e})")
        return g

    def defects(self):
        J = self.form.matrix
        m = self.matrix
        err_u = float(np.max(np.abs(m.conj().T @ J @ m - J)))
        err_d = float(abs(np.linalg.det(m) - 1.0))
        return err_u, err_d

    def __matmul__(self, other):
        return SU21Element(self.matrix @ other.matrix, self.form)

    def inverse(self):
        # unitary inverse: J^{-1} M^* J
        J = self.form.matrix
        return SU21Element(np.linalg.solve(J, self.matrix.conj().T @ J), self.form)

    def power(self, n):
        return SU21Element(np.linalg.matrix_power(self.matrix, n), self.form)

    @property
    def trace(self):
        return complex(np.trace(self.matrix))


class Tag(Enum):
    HYPERBOLIC = "hyperbolic"
    REGULAR_ELLIPTIC = "regular-elliptic"
    BOUNDARY = "boundary"


class Refinement(Enum):
    UNIPOTENT = "unipotent"
    OTHER_BOUNDARY = "other-boundary"


@dataclass(frozen=True)
class IsometryClass:
    tag: Tag
    refinement: Optional[Refinement] = None

    @property
    def label(self):
        if self.refinement is Refinement.UNIPOTENT:
            return "unipotent"
        return self.tag.value

    @property
    def is_elliptic(self):
        return self.tag is Tag.REGULAR_ELLIPTIC


HYPERBOLIC = IsometryClass(Tag.HYPERBOLIC)
REGULAR_ELLIPTIC = IsometryClass(Tag.REGULAR_ELLIPTIC)
UNIPOTENT = IsometryClass(Tag.BOUNDARY, Refinement.UNIPOTENT)
OTHER_BOUNDARY = IsometryClass(Tag.BOUNDARY, Refinement.OTHER_BOUNDARY)


def goldman_f(z):
    """Goldman's discriminant ``|z|^4 - 8 Re(z^3) + 18 |z|^2 - 27``.

    Accepts a scalar or an array of traces.
    """
    if np.ndim(z) == 0:
        return float(kernels.goldman_f(np.array([z], dtype=np.complex128))[0])
    return kernels.goldman_f(np.asarray(z, dtype=np.complex128))


def deltoid_point(theta):
    return complex(2.0 * np.exp(1j * theta) + np.exp(-2j * theta))


def default_eps(trace):
    return 1e-8 * (1.0 + abs(trace)) ** 4


def nearest_cube_root(trace):
    """Index ``k`` minimising ``|trace/3 - omega^k|`` and that distance."""
    d = [abs(trace / 3.0 - w) for w in CUBE_ROOTS]
    k = int(np.argmin(d))
    return k, d[k]


def classify_trace(trace, eps=None):
    """Trace-only trichotomy; boundary traces are not refined."""
    if eps is None:
        eps = default_eps(trace)
    if eps <= 0:
        raise BadTolerance("eps must be positive")
    f = goldman_f(trace)
    if f > eps:
        return HYPERBOLIC
    if f < -eps:
        return REGULAR_ELLIPTIC
    return IsometryClass(Tag.BOUNDARY)


def is_unipotent(g):
    m = g.matrix if isinstance(g, SU21Element) else np.asarray(g)
    k, dist = nearest_cube_root(np.trace(m))
    if dist > UNIPOTENT_TRACE_TOL:
        return False
    n = CUBE_ROOTS[k].conjugate() * m - np.eye(3)
    cube = n @ n @ n
    return np.linalg.norm(cube) <= UNIPOTENT_NILPOTENCY_TOL * np.linalg.norm(m) ** 3


def classify(g, eps=None):
    base = classify_trace(g.trace, eps)
    if base.tag is not Tag.BOUNDARY:
        return base
    return UNIPOTENT if is_unipotent(g) else OTHER_BOUNDARY


def _eigen_clusters(values, tol):
    clusters = []
    for lam in values:
        for c in clusters:
            if abs(lam - np.mean(c)) <= tol * max(1.0, abs(lam)):
                c.append(lam)
                break
        else:
            clusters.append([lam])
    return [complex(np.mean(c)) for c in clusters]


def fixed_boundary_points(g, null_tol=1e-8):
    """Isolated null eigenvectors of ``g``, projectivized.

    Boundary elements that fix a whole circle of null directions (complex
    reflections in a line, the identity) contribute no isolated points.
    """
    if classify(g).tag is Tag.REGULAR_ELLIPTIC:
        raise NoNullEigenvector("regular elliptic elements fix no boundary point")
    m = g.matrix
    J = g.form.matrix
    scale = np.linalg.norm(m)
    found = []
    for lam in _eigen_clusters(np.linalg.eigvals(m), 1e-4):
        _, s, vh = np.linalg.svd(m - lam * np.eye(3))
        basis = vh[s <= 1e-6 * scale].conj().T  # columns span the eigenspace
        k = basis.shape[1]
        if k == 0:
            basis = vh[-1:].conj().T
            k = 1
        if k == 1:
            v = basis[:, 0]
            if abs(norm2(g.form, v)) <= null_tol * np.vdot(v, v).real:
                found.append(v)
        elif k == 2:
            h = basis.conj().T @ J @ basis
            w, u = np.linalg.eigh(h)
            small = np.abs(w) <= null_tol * max(1.0, np.max(np.abs(w)))
            if small.sum() == 1:  # semidefinite: a unique null direction
                found.append(basis @ u[:, np.argmax(small)])
    pts = []
    for v in found:
        p = ProjPoint.from_vector(v, g.form, tol=null_tol)
        if p.kind is PointClass.NULL and not any(p.same_as(q, 1e-7) for q in pts):
            pts.append(p)
    return pts


def translation_length(g):
    if classify(g).tag is not Tag.HYPERBOLIC:
        raise NotHyperbolic("translation length is defined here for hyperbolic elements")
    r = np.max(np.abs(np.linalg.eigvals(g.matrix)))
    return float(2.0 * np.log(r))


def stable_norm_estimate(g, basepoint, n):
    """``d(o, g^n o) / n``.

    Since ``<g^n o, g^n o> = <o, o>``, only ``<o, g^n o>`` is needed; it is
    tracked as a renormalised vector plus an accumulated log scale so the
    orbit never collapses numerically onto the boundary.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    o = as_point(basepoint, g.form)
    if o.kind is not PointClass.NEGATIVE:
        raise NonInteriorPoint("basepoint must be a negative point")
    v = o.rep.copy()
    log_scale = 0.0
    for _ in range(n):
        v = g.matrix @ v
        s = np.linalg.norm(v)
        v = v / s
        log_scale += np.log(s)
    pair = abs(inner(g.form, v, o.rep))
    if pair == 0.0:
        return 0.0
    log_x = np.log(pair) + log_scale - np.log(-norm2(g.form, o.rep))
    if log_x < 20.0:
        # short orbit: the direct formula keeps full precision
        return bergman_distance(g.form, o, ProjPoint.from_vector(v, g.form)) / n
    # arccosh(e^L) = L + log(1 + sqrt(1 - e^{-2L}))
    half = log_x + np.log1p(np.sqrt(-np.expm1(-2.0 * log_x)))
    return float(2.0 * half / n)
