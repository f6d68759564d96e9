"""End-to-end acceptance checks, one test per criterion.

Each test prints a single pass/fail line; the full list is repeated in the
pytest terminal summary.
"""

import math

import numpy as np
import pytest

from chyp.cli import ideal_wb_oracle
from chyp.cxcore import (
    FIRST_FORM,
    SECOND_FORM,
    HeisenbergPoint,
    bergman_distance,
    cygan_distance,
    heisenberg_mul,
    unipotent_translation,
)
from chyp.gon18 import PAIRING_WORDS, axis_chords, build_18gon, self_intersection_count, verify_side_pairings
from chyp.isometry import SU21Element, Tag, classify, stable_norm_estimate
from chyp.realhyp import distance, geodesic_distance, triangle_with_angles
from chyp.surfaces import (
    CoverSpec,
    coset_table,
    cover_invariants,
    lf_word,
    orbit_coincidence_check,
    psi,
)
from chyp.trianglegroup import (
    Convention,
    TriangleParams,
    adjudicate_WB,
    alpha_zero,
    beta_zero,
    build_representation,
    evaluate_word,
    gram_of,
    is_scalar,
    projector_traces,
    trace_WA_formula,
    trace_WB_formula,
)
from chyp.words import concat, inverse
from conftest import random_ball_vector, random_su21
from test_trianglegroup import oracle_inversion, random_params, random_positive_unit

SEED = 20261019


def test_acceptance_01_gram_trace_identities(acceptance):
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(100):
        ls = [random_positive_unit(rng) for _ in range(3)]
        G = gram_of(np.column_stack(ls))
        signs = sorted(np.sign(np.linalg.eigvalsh(G)).tolist())
        assert signs == [-1, 1, 1]
        I = [oracle_inversion(l) for l in ls]
        t = projector_traces(G)
        direct = {
            "I1I2": I[0] @ I[1], "I2I3": I[1] @ I[2], "I3I1": I[2] @ I[0],
            "W_B": I[0] @ I[1] @ I[2], "W_A": I[0] @ I[2] @ I[1] @ I[2],
        }
        for k, m in direct.items():
            worst = max(worst, abs(np.trace(m) - t[k]))
    ok = acceptance(1, "Gram-trace identity battery", worst <= 1e-9, f"max error {worst:.1e}")
    assert ok


def test_acceptance_02_critical_point(acceptance):
    a0 = alpha_zero(9)
    W = evaluate_word(build_representation(TriangleParams(3, 3, 9, a0)), "1323")
    N = W.matrix - np.eye(3)
    err = abs(W.trace - 3)
    nil = np.linalg.norm(N @ N @ N)
    below = classify(evaluate_word(build_representation(TriangleParams(3, 3, 9, a0 - 0.1)), "1323")).tag
    above = classify(evaluate_word(build_representation(TriangleParams(3, 3, 9, a0 + 0.1)), "1323")).tag
    ok = err <= 1e-9 and nil <= 1e-8 and below is Tag.REGULAR_ELLIPTIC and above is Tag.HYPERBOLIC
    ok = acceptance(
        2, "(3,3,9) critical point", ok,
        f"alpha0 {a0:.5f}, |tr-3| {err:.1e}, |N^3| {nil:.1e}, {below.value}/{above.value}",
    )
    assert ok


def test_acceptance_03_relation_enforcing(acceptance):
    b0 = beta_zero(9)
    c = math.cos(math.pi / 9)
    cos_ok = abs(math.cos(b0) - (c - 3 / (4 * c))) <= 1e-12
    rep = build_representation(TriangleParams(3, 3, 9, b0), Convention.RELATION_ENFORCING)
    rel_ok = all(
        is_scalar(np.linalg.matrix_power(evaluate_word(rep, w).matrix, m), 1e-8)
        for w, m in (("23", 3), ("31", 3), ("12", 9))
    )
    err = abs(evaluate_word(rep, "1323").trace - 3)
    ok = acceptance(
        3, "relation-enforcing twin", cos_ok and rel_ok and err <= 1e-9,
        f"cos beta0 {math.cos(b0):.7f}, |tr-3| {err:.1e}",
    )
    assert ok


def test_acceptance_04_wb_constant(acceptance):
    rng = np.random.default_rng(SEED + 4)
    plus = minus = 0
    for _ in range(50):
        r = adjudicate_WB(build_representation(random_params(rng)))
        plus += bool(r["plus3_matches"])
        minus += bool(r["minus3_matches"])
    if plus == 50 and minus == 0:
        sign = +1
    elif minus == 50 and plus == 0:
        sign = -1
    else:
        sign = None
    oracle = ideal_wb_oracle()
    ideal = TriangleParams(math.inf, math.inf, math.inf, math.pi)
    agrees = sign is not None and abs(trace_WB_formula(ideal, sign) - oracle) <= 1e-9
    ok = acceptance(
        4, "W_B constant adjudication", agrees and abs(oracle + 17) <= 1e-9,
        f"+3 matched {plus}/50, -3 matched {minus}/50, ideal oracle {oracle:.6f}",
    )
    assert ok


@pytest.fixture(scope="module")
def gon():
    return build_18gon()


def test_acceptance_05_gon18(acceptance, gon):
    rep = verify_side_pairings(gon.polygon, gon.pairings)
    words_ok = [s.word for s in gon.pairings] == list(PAIRING_WORDS.values())
    ok = (
        abs(rep.area - 4 * math.pi) <= 1e-8
        and len(rep.cycles) == 6
        and all(abs(s - 2 * math.pi) <= 1e-9 for s in rep.angle_sums)
        and abs(rep.area / (4 * math.pi) + 1 - 2) <= 1e-8
        and len(rep.incidence) == 9
        and words_ok
    )
    ok = acceptance(
        5, "18-gon suite", ok,
        f"area {rep.area:.9f}, cycles {len(rep.cycles)}, genus {rep.genus:.6f}",
    )
    assert ok


def test_acceptance_06_geodesic_tracing(acceptance, gon):
    chords, step = axis_chords(gon)
    poly = gon.polygon
    mid_err = max(
        max(distance(c.entry, poly.side_midpoint(c.entry_side)), distance(c.exit, poly.side_midpoint(c.exit_side)))
        for c in chords
    )
    crossings = self_intersection_count(chords, gon.pairings, poly)
    ok = step == 19 and mid_err <= 1e-9 and crossings == 9
    ok = acceptance(
        6, "geodesic tracing", ok,
        f"closure step {step}, midpoint error {mid_err:.1e}, self-intersections {crossings}",
    )
    assert ok


def test_acceptance_07_cosets_and_orbits(acceptance):
    table = coset_table()
    labels = {t for _, t in table.rows(6)}
    s_ok = all(table.label(w) == 0 for w in PAIRING_WORDS.values())
    recs = orbit_coincidence_check(4)
    orbit_ok = all(r.ok for r in recs)
    ok = len(table.action) == 18 and labels == set(range(18)) and s_ok and orbit_ok
    ok = acceptance(
        7, "coset/orbit suite", ok,
        f"labels {len(labels)}/18, orbit records {len(recs)} ok={orbit_ok}",
    )
    assert ok


def test_acceptance_08_cross_embedding(acceptance):
    # angles pi/18, pi/6, pi/6: the real form of Delta(3,3,9; pi), whose
    # Gram moduli are cos(pi/18), cos(pi/6), cos(pi/6)
    tri = triangle_with_angles(18, 6, 6)
    L1, L2, _ = tri.lines
    I3 = tri.reflections[2]
    t = 2 * math.cosh(geodesic_distance(L1, I3.apply_geodesic(L2)))
    target = trace_WA_formula(TriangleParams(3, 3, 9, math.pi))
    err = abs(t * t - 1 - target)
    ok = acceptance(8, "cross-embedding consistency", err <= 1e-6, f"t^2-1 {t * t - 1:.6f} vs {target:.6f}")
    assert ok


def test_acceptance_09_covers(acceptance):
    rng = np.random.default_rng(SEED + 9)
    inv_ok = all(
        cover_invariants(CoverSpec(g)) == {"degree": g - 1, "euler_char": -2 * (g - 1), "genus": g}
        for g in (2, 3, 5, 7)
    )
    pairings = list(PAIRING_WORDS.values())

    def random_gamma_word():
        w = ()
        for _ in range(int(rng.integers(1, 5))):
            s = pairings[int(rng.integers(9))]
            w = concat(w, inverse(s) if rng.random() < 0.5 else s)
        return w

    hom_ok = True
    for _ in range(200):
        spec = CoverSpec(int(rng.choice([3, 5, 7])))
        x, y = random_gamma_word(), random_gamma_word()
        hom_ok &= psi(concat(x, y), spec) == (psi(x, spec) + psi(y, spec)) % spec.modulus
    lf_ok = all(psi(lf_word(), CoverSpec(g)) == 0 for g in (3, 5, 7))
    ok = acceptance(
        9, "covers", inv_ok and hom_ok and lf_ok,
        f"invariants {inv_ok}, psi homomorphism {hom_ok}, psi(L_f)=0 {lf_ok}",
    )
    assert ok


def test_acceptance_10_metric_suites(acceptance):
    rng = np.random.default_rng(SEED + 10)
    inv_err = tri_slack = 0.0
    for _ in range(1000):
        g = random_su21(rng)
        a, b, c = (random_ball_vector(rng) for _ in range(3))
        d = bergman_distance(FIRST_FORM, a, b)
        inv_err = max(inv_err, abs(bergman_distance(FIRST_FORM, g @ a, g @ b) - d) / max(1.0, d))
        tri_slack = max(
            tri_slack, bergman_distance(FIRST_FORM, a, c) - d - bergman_distance(FIRST_FORM, b, c)
        )
    cyg_err = hom_err = 0.0
    for _ in range(1000):
        a, b, c = (HeisenbergPoint(complex(*rng.standard_normal(2)), rng.standard_normal()) for _ in range(3))
        cyg_err = max(cyg_err, abs(cygan_distance(heisenberg_mul(c, a), heisenberg_mul(c, b)) - cygan_distance(a, b)))
        ab = heisenberg_mul(a, b)
        lhs = unipotent_translation(a.zeta, a.v) @ unipotent_translation(b.zeta, b.v)
        hom_err = max(hom_err, np.max(np.abs(lhs - unipotent_translation(ab.zeta, ab.v))))
    est = stable_norm_estimate(SU21Element(np.diag([2.0, 1.0, 0.5]), SECOND_FORM), [-1, 0, 1], 200)
    sn_err = abs(est - 2 * math.log(2))
    ok = inv_err <= 1e-9 and tri_slack <= 1e-9 and cyg_err <= 1e-12 and hom_err <= 1e-12 and sn_err <= 0.02
    ok = acceptance(
        10, "metric suites", ok,
        f"bergman {inv_err:.1e}, triangle slack {tri_slack:.1e}, cygan {cyg_err:.1e}, "
        f"T hom {hom_err:.1e}, stable norm error {sn_err:.4f}",
    )
    assert ok
