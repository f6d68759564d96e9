"""Complex hyperbolic (p, q, r; alpha) triangle groups from Gram data.

Gram entries follow ``G[j, k] = <l_j, l_k>`` for the polar vectors ``l_k``.
Two placements of the moduli are supported:

* ``GRAM_PAPER`` uses half-angle moduli ``c_k = cos(pi / 2 p_k)`` arranged as
  ``(|G12|, |G23|, |G31|) = (c1, c3, c2)``; the closed trace formulas for
  ``W_A`` and ``W_B`` below are stated in this chart.
* ``RELATION_ENFORCING`` uses full-angle moduli
  ``(cos pi/r, cos pi/p, cos pi/q)`` so that ``I2 I3``, ``I3 I1``, ``I1 I2``
  have orders ``p``, ``q``, ``r``.

In both charts the whole phase sits on ``G31 = |G31| exp(-i alpha)``, so the
cyclic product ``<l3,l2><l1,l3><l2,l1>`` has argument ``alpha``.
"""

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from ._accel import kernels, pack_words
from .cxcore import CAYLEY_INV, FIRST_FORM, FormKind, inner, norm2
from .errors import (
    AsymptoticDegenerate,
    BadN,
    ExistenceViolated,
    NoSolution,
    NotHyperbolicTriangle,
    NotPositiveVector,
    OutOfRange,
    WrongSignature,
)
from .isometry import (
    CUBE_ROOTS,
    REGULAR_ELLIPTIC,
    SU21Element,
    Tag,
    classify,
    classify_trace,
    goldman_f,
)
from .words import as_word, cyclic_reduce, enumerate_words, finite_order_symbolic, tits_representation

TWO_PI = 2.0 * math.pi
EXISTENCE_TOL = 1e-12


class Convention(Enum):
    GRAM_PAPER = "GramPaper"
    RELATION_ENFORCING = "RelationEnforcing"


def _check_order(m):
    if isinstance(m, bool):
        raise TypeError("orders must be integers or inf")
    if isinstance(m, float) and math.isinf(m) and m > 0:
        return math.inf
    if float(m) != int(m) or int(m) < 2:
        raise ValueError(f"order must be an integer >= 2 or inf, got {m!r}")
    return int(m)


@dataclass(frozen=True)
class TriangleParams:
    p: object
    q: object
    r: object
    alpha: float = math.pi

    def __post_init__(self):
        p, q, r = (_check_order(m) for m in (self.p, self.q, self.r))
        if not p <= q <= r:
            raise ValueError("expected p <= q <= r")
        if sum(Fraction(1, m) for m in (p, q, r) if not math.isinf(m)) >= 1:
            raise NotHyperbolicTriangle(f"1/p + 1/q + 1/r >= 1 for ({p}, {q}, {r})")
        a = float(self.alpha)
        if not math.isfinite(a):
            raise OutOfRange("alpha must be finite")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "alpha", a % TWO_PI)

    @property
    def orders(self):
        return (self.p, self.q, self.r)

    @property
    def c(self):
        """Half-angle moduli ``cos(pi / 2 p_k)``."""
        return tuple(1.0 if math.isinf(m) else math.cos(math.pi / (2 * m)) for m in self.orders)

    @property
    def full(self):
        """Full-angle moduli ``cos(pi / p_k)``."""
        return tuple(1.0 if math.isinf(m) else math.cos(math.pi / m) for m in self.orders)

    def with_alpha(self, alpha):
        return TriangleParams(self.p, self.q, self.r, alpha)


def _fmt_order(m):
    return "inf" if math.isinf(m) else str(m)


def params_dict(params):
    return {
        "p": _fmt_order(params.p),
        "q": _fmt_order(params.q),
        "r": _fmt_order(params.r),
        "alpha": params.alpha,
    }


# ---------------------------------------------------------------- Gram data


@dataclass(frozen=True, eq=False)
class GramTriple:
    G: np.ndarray
    convention: object = None

    def __post_init__(self):
        g = np.array(self.G, dtype=np.complex128)
        if g.shape != (3, 3):
            raise ValueError("Gram matrix must be 3x3")
        if np.max(np.abs(g - g.conj().T)) > 1e-12:
            raise ValueError("Gram matrix must be Hermitian")
        if np.max(np.abs(np.diag(g) - 1.0)) > 1e-12:
            raise ValueError("Gram matrix must have unit diagonal")
        np.fill_diagonal(g, 1.0)
        g.setflags(write=False)
        object.__setattr__(self, "G", g)

    @property
    def det(self):
        return float(np.linalg.det(self.G).real)

    @property
    def moduli(self):
        """``(|G12|, |G23|, |G31|)``."""
        g = self.G
        return (abs(g[0, 1]), abs(g[1, 2]), abs(g[2, 0]))

    @property
    def cyclic_product(self):
        g = self.G
        return complex(g[0, 1] * g[1, 2] * g[2, 0])


def gram_from_entries(g12, g23, g31, convention=None):
    g12, g23, g31 = complex(g12), complex(g23), complex(g31)
    G = np.array(
        [
            [1.0, g12, g31.conjugate()],
            [g12.conjugate(), 1.0, g23],
            [g31, g23.conjugate(), 1.0],
        ],
        dtype=np.complex128,
    )
    return GramTriple(G, convention)


def existence_bound(params, convention=Convention.GRAM_PAPER):
    """Right-hand side ``b`` of the existence condition ``cos(alpha) < b``."""
    m12, m23, m31 = _moduli(params, convention)
    prod = m12 * m23 * m31
    if prod == 0.0:
        return math.inf if m12**2 + m23**2 + m31**2 < 1.0 else -math.inf
    return (m12**2 + m23**2 + m31**2 - 1.0) / (2.0 * prod)


def _moduli(params, convention):
    if convention is Convention.GRAM_PAPER:
        c1, c2, c3 = params.c
        return c1, c3, c2
    if convention is Convention.RELATION_ENFORCING:
        m1, m2, m3 = params.full
        return m3, m1, m2
    raise ValueError(f"unknown convention {convention!r}")


def gram_matrix(params, convention=Convention.GRAM_PAPER):
    m12, m23, m31 = _moduli(params, convention)
    g = gram_from_entries(m12, m23, m31 * np.exp(-1j * params.alpha), convention)
    if g.det > -EXISTENCE_TOL:
        raise ExistenceViolated(
            f"no triangle for {params_dict(params)}: det(G) = {g.det:.3e} >= 0"
        )
    return g


def _phase_fix(v):
    for c in v:
        if abs(c) > 1e-12:
            return v * (abs(c) / c)
    return v


def realize_polar_vectors(gram, form=FIRST_FORM):
    """Columns ``l_k`` with ``<l_j, l_k> = G[j, k]``, returned as a 3x3 array.

    Writing ``L`` for the matrix of columns, the requirement is
    ``L^* J L = conj(G)``; an eigendecomposition of ``conj(G)`` with
    eigenvalues in descending order gives ``L`` for ``diag(1, 1, -1)``.
    """
    target = np.asarray(gram.G).conj()
    lam, vecs = np.linalg.eigh(target)
    order = np.argsort(-lam, kind="stable")
    lam, vecs = lam[order], vecs[:, order]
    scale = max(1.0, float(np.max(np.abs(lam))))
    if not (lam[0] > 1e-12 * scale and lam[1] > 1e-12 * scale and lam[2] < -1e-12 * scale):
        raise WrongSignature(f"Gram eigenvalues {lam.tolist()} do not have signature (2,1)")
    vecs = np.column_stack([_phase_fix(vecs[:, k]) for k in range(3)])
    L = np.sqrt(np.abs(lam))[:, None] * vecs.conj().T
    if form.kind is FormKind.FIRST:
        return L
    if form.kind is FormKind.SECOND:
        return CAYLEY_INV @ L
    raise ValueError("polar vectors are realized for FIRST_FORM or SECOND_FORM only")


def gram_of(vectors, form=FIRST_FORM):
    """Gram matrix ``[<l_j, l_k>]`` of the columns of ``vectors``."""
    L = np.asarray(vectors, dtype=np.complex128)
    return (L.conj().T @ form.matrix @ L).T


def inversion(l, form=FIRST_FORM, tol=1e-12):
    """Complex reflection of order two fixing the line polar to ``l``."""
    l = np.asarray(l, dtype=np.complex128)
    n = norm2(form, l)
    if n <= tol * float(np.vdot(l, l).real):
        raise NotPositiveVector(f"<l, l> = {n:.3e} is not positive")
    m = -np.eye(3, dtype=np.complex128) + 2.0 * np.outer(l, l.conj() @ form.matrix) / n
    return SU21Element(m, form)


@dataclass(frozen=True, eq=False)
class TriangleRep:
    polar: tuple
    inversions: tuple
    params: TriangleParams
    convention: Convention
    gram: GramTriple = field(repr=False, default=None)

    @property
    def form(self):
        return self.inversions[0].form

    @property
    def generator_stack(self):
        return np.stack([g.matrix for g in self.inversions])


def build_representation(params, convention=Convention.GRAM_PAPER, form=FIRST_FORM):
    gram = gram_matrix(params, convention)
    L = realize_polar_vectors(gram, form)
    polar = tuple(L[:, k].copy() for k in range(3))
    for v in polar:
        v.setflags(write=False)
    invs = tuple(inversion(v, form) for v in polar)
    return TriangleRep(polar, invs, params, convention, gram)


def angular_invariant(l1, l2, l3, form=FIRST_FORM, tol=1e-12):
    """``arg(<l3,l2> <l1,l3> <l2,l1>)`` in ``[0, 2 pi)``."""
    prods = (inner(form, l3, l2), inner(form, l1, l3), inner(form, l2, l1))
    if min(abs(z) for z in prods) <= tol:
        raise AsymptoticDegenerate("a pairwise Hermitian product vanishes")
    return cmath.phase(prods[0] * prods[1] * prods[2]) % TWO_PI


# ---------------------------------------------------------------- traces


def evaluate_word(rep, w):
    w = as_word(w)
    m = np.eye(3, dtype=np.complex128)
    for x in w:
        m = m @ rep.inversions[x - 1].matrix
    return SU21Element(m, rep.form)


def word_traces(rep, words):
    """Batched traces of a list of words (each a tuple over ``{1,2,3}``)."""
    if not words:
        return np.zeros(0, dtype=np.complex128)
    packed = pack_words([[x - 1 for x in w] for w in words])
    return kernels.word_traces(rep.generator_stack, packed)


def projector_traces(gram):
    """Closed forms of the traces of ``I_iI_j``, ``I1I2I3`` and ``I1I3I2I3``.

    They follow from expanding each inversion as ``-1 + 2P`` with ``P`` the
    rank-one projector onto its polar vector.
    """
    G = np.asarray(gram.G if isinstance(gram, GramTriple) else gram)
    g12, g23, g31 = G[0, 1], G[1, 2], G[2, 0]
    a12, a23, a31 = abs(g12) ** 2, abs(g23) ** 2, abs(g31) ** 2
    triple = g12 * g23 * g31
    return {
        "I1I2": 4.0 * a12 - 1.0,
        "I2I3": 4.0 * a23 - 1.0,
        "I3I1": 4.0 * a31 - 1.0,
        "W_B": complex(3.0 - 4.0 * (a12 + a23 + a31) + 8.0 * triple.conjugate()),
        "W_A": float(-1.0 + 4.0 * a12 + 16.0 * a23 * a31 - 16.0 * triple.real),
    }


W_A_WORD = (1, 3, 2, 3)
W_B_WORD = (1, 2, 3)


def trace_WA_matrix(rep):
    return evaluate_word(rep, W_A_WORD).trace


def trace_WA_formula(params):
    """``16 c2^2 c3^2 + 4 c1^2 - 1 - 16 c1 c2 c3 cos(alpha)``."""
    c1, c2, c3 = params.c
    return 16 * c2**2 * c3**2 + 4 * c1**2 - 1 - 16 * c1 * c2 * c3 * math.cos(params.alpha)


def trace_WA_relation_formula(params):
    """Trace of ``W_A`` in the relation-enforcing chart, with ``alpha`` read as ``beta``."""
    m1, m2, m3 = params.full
    return 4 * m3**2 + 16 * m1**2 * m2**2 - 1 - 16 * m1 * m2 * m3 * math.cos(params.alpha)


def trace_WB_matrix(rep):
    return evaluate_word(rep, W_B_WORD).trace


def trace_WB_formula(params, constant_sign=-1):
    """``8 c1 c2 c3 e^{i alpha} - 4 (c1^2 + c2^2 + c3^2) + 3 * constant_sign``."""
    if constant_sign not in (1, -1):
        raise ValueError("constant_sign must be +1 or -1")
    c1, c2, c3 = params.c
    return complex(
        8 * c1 * c2 * c3 * np.exp(1j * params.alpha)
        - 4 * (c1**2 + c2**2 + c3**2)
        + 3.0 * constant_sign
    )


def match_up_to_symmetry(a, b, tol=1e-9):
    """Whether ``a`` equals ``omega^k b`` or ``omega^k conj(b)`` for some cube root."""
    scale = max(1.0, abs(a))
    return any(
        abs(a - w * v) <= tol * scale for w in CUBE_ROOTS for v in (b, complex(b).conjugate())
    )


def adjudicate_WB(rep, tol=1e-9):
    """Compare the matrix trace of ``I1 I2 I3`` with both constant variants."""
    m = trace_WB_matrix(rep)
    minus = trace_WB_formula(rep.params, -1)
    plus = trace_WB_formula(rep.params, +1)
    return {
        "matrix": m,
        "minus3": minus,
        "plus3": plus,
        "minus3_matches": match_up_to_symmetry(m, minus, tol),
        "plus3_matches": match_up_to_symmetry(m, plus, tol),
    }


# ---------------------------------------------------------------- thresholds


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 4:
        raise BadN(f"n must be an integer >= 4, got {n!r}")
    return int(n)


def alpha_min(n):
    c = math.cos(math.pi / (2 * _check_n(n)))
    return math.acos((2 * c * c + 1) / (3 * c))


def alpha_zero(n):
    c = math.cos(math.pi / (2 * _check_n(n)))
    return math.acos((12 * c * c - 1) / (12 * c))


def beta_zero(n):
    m = math.cos(math.pi / _check_n(n))
    return math.acos(m - 3.0 / (4.0 * m))


def trace_dictionary(n, alpha_paper):
    """Relation-enforcing phase with the same ``W_A`` trace as ``alpha_paper``.

    For ``(3, 3, n)`` both charts give a trace affine in the cosine of the
    phase, so ``cos(beta) = (4 M^2 - tau) / (4 M)`` with ``M = cos(pi / n)``
    and ``tau`` the half-angle trace.  The branch ``beta`` in ``[0, pi]`` is
    returned.
    """
    n = _check_n(n)
    tau = trace_WA_formula(TriangleParams(3, 3, n, alpha_paper))
    m = math.cos(math.pi / n)
    cb = (4 * m * m - tau) / (4 * m)
    if abs(cb) > 1.0 + 1e-12:
        raise NoSolution(f"cos(beta) = {cb:.6f} is outside [-1, 1]")
    return math.acos(max(-1.0, min(1.0, cb)))


@dataclass(frozen=True)
class ScanRecord:
    alpha: float
    trace: complex
    goldman_f: float
    cls: object


def alpha_grid(n, resolution):
    """``resolution`` equally spaced angles in ``(alpha_min(n), pi]``."""
    if resolution < 1:
        raise ValueError("resolution must be positive")
    return np.linspace(alpha_min(n), math.pi, resolution + 1)[1:]


def alpha_scan(n, grid, convention=Convention.GRAM_PAPER):
    """Classify ``W_A`` across ``grid`` for the ``(3, 3, n)`` family."""
    n = _check_n(n)
    lo = alpha_min(n)
    out = []
    for a in grid:
        a = float(a)
        if not (lo - 1e-12 <= a <= math.pi + 1e-12):
            raise OutOfRange(f"alpha = {a} outside [{lo}, pi]")
        params = TriangleParams(3, 3, n, a)
        try:
            rep = build_representation(params, convention)
        except ExistenceViolated:
            # degenerate triangle at the existence bound: trace only
            t = complex(trace_WA_formula(params))
            cls = classify_trace(t)
        else:
            w = evaluate_word(rep, W_A_WORD)
            t, cls = w.trace, classify(w)
        out.append(ScanRecord(a, t, goldman_f(t), cls))
    return out


def scan_transition(records):
    """Bracket ``(last elliptic alpha, first hyperbolic alpha)`` of a sorted scan.

    Raises ``ValueError`` if the classification is not monotone, i.e. if a
    hyperbolic record precedes an elliptic one.
    """
    ell = [r.alpha for r in records if r.cls.tag is Tag.REGULAR_ELLIPTIC]
    hyp = [r.alpha for r in records if r.cls.tag is Tag.HYPERBOLIC]
    if ell and hyp and max(ell) > min(hyp):
        raise ValueError("classification is not monotone along the grid")
    return (max(ell) if ell else None, min(hyp) if hyp else None)


# ---------------------------------------------------------------- falsifier


@dataclass(frozen=True)
class Witness:
    word: tuple
    trace: complex
    cls: object


def _tits_finite_batch(words, params, tol=1e-9):
    _, gens = tits_representation(*params.orders)
    stack = np.stack(gens).astype(np.complex128)
    mats = kernels.word_products(stack, pack_words([[x - 1 for x in w] for w in words])).real
    out = []
    eye = np.eye(3)
    for w, g in zip(words, mats):
        if len(w) % 2 == 1:
            g2 = g @ g
            out.append(bool(np.max(np.abs(g2 - eye)) <= tol * max(1.0, np.max(np.abs(g2)))))
        elif np.trace(g) < 3.0 - tol:
            out.append(True)
        else:
            out.append(bool(np.max(np.abs(g - eye)) <= tol * max(1.0, np.max(np.abs(g)))))
    return out


def discreteness_falsifier(rep, maxlen, eps=None):
    """Reduced words up to ``maxlen`` that are regular elliptic in the image
    yet have infinite order in the abstract triangle group."""
    words = list(enumerate_words(maxlen))
    traces = word_traces(rep, words)
    cand = []
    for w, t in zip(words, traces):
        if classify_trace(complex(t), eps).tag is Tag.REGULAR_ELLIPTIC:
            cand.append((w, complex(t)))
    p, q, r = rep.params.orders
    verdicts = [finite_order_symbolic(w, p, q, r) for w, _ in cand]
    pending = [cyclic_reduce(w) for (w, _), v in zip(cand, verdicts) if v is None]
    resolved = iter(_tits_finite_batch(pending, rep.params) if pending else [])
    out = []
    for (w, t), v in zip(cand, verdicts):
        finite = next(resolved) if v is None else v
        if not finite:
            out.append(Witness(w, t, REGULAR_ELLIPTIC))
    return out


def projective_order(g, kmax=64, tol=1e-8):
    """Smallest ``k <= kmax`` with ``g^k`` scalar, else ``None``."""
    m = g.matrix if isinstance(g, SU21Element) else np.asarray(g)
    acc = np.eye(3, dtype=np.complex128)
    for k in range(1, kmax + 1):
        acc = acc @ m
        if is_scalar(acc, tol):
            return k
    return None


def is_scalar(m, tol=1e-8):
    m = np.asarray(m)
    lam = np.trace(m) / 3.0
    return float(np.max(np.abs(m - lam * np.eye(3)))) <= tol * max(1.0, abs(lam))


def convention_report(params):
    """Projective orders of the pairwise products under each chart."""
    out = {}
    expected = dict(zip(("I2I3", "I3I1", "I1I2"), params.orders))
    kmax = 4 * max((m for m in params.orders if not math.isinf(m)), default=2)
    for conv in Convention:
        try:
            rep = build_representation(params, conv)
        except ExistenceViolated as exc:
            out[conv.value] = {"error": str(exc)}
            continue
        orders = {}
        for name, w in (("I2I3", (2, 3)), ("I3I1", (3, 1)), ("I1I2", (1, 2))):
            k = projective_order(evaluate_word(rep, w), kmax)
            orders[name] = "inf" if k is None else k
        out[conv.value] = {
            "orders": orders,
            "presentation_orders": {k: _fmt_order(v) for k, v in expected.items()},
            "relations_hold": all(
                (orders[k] == "inf") if math.isinf(v) else orders[k] == v
                for k, v in expected.items()
            ),
        }
    return out


# ---------------------------------------------------------------- serialization

ROW_COLUMNS = ("alpha_or_word", "trace_re", "trace_im", "goldman_f", "class")


def scan_rows(records):
    return [
        {
            "alpha_or_word": repr(float(r.alpha)),
            "trace_re": float(complex(r.trace).real),
            "trace_im": float(complex(r.trace).imag),
            "goldman_f": float(r.goldman_f),
            "class": r.cls.label,
        }
        for r in records
    ]


def witness_rows(witnesses):
    return [
        {
            "alpha_or_word": "".join(map(str, w.word)),
            "trace_re": w.trace.real,
            "trace_im": w.trace.imag,
            "goldman_f": goldman_f(w.trace),
            "class": w.cls.label,
        }
        for w in witnesses
    ]
