"""Command-line entry point.

Every verb prints a JSON summary on stdout; verbs that produce figures or
tables also write files into ``--out``.  Exit codes: 0 success, 1 a
verification failed, 2 usage error, 3 domain error.

Options may also come from a ``key = value`` file given by ``--config``;
flags on the command line take precedence.  ``CHYP_TOL`` sets the default
of ``--tol``.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import figures
from .errors import ChypError, ExistenceViolated, NoSolution
from .io import atomic_write, to_csv, to_json
from .isometry import classify_trace, goldman_f

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class VerificationFailed(Exception):
    pass


class UsageError(Exception):
    pass


def _order(s):
    s = str(s).strip().lower()
    if s in ("inf", "infinity", "oo"):
        return math.inf
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid order {s!r}") from None
    return v


def _positive_float(s):
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {s!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _finite_float(s):
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {s!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"invalid number {s!r}")
    return v


def _complex_pair(s):
    parts = str(s).split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected RE,IM")
    return complex(_finite_float(parts[0]), _finite_float(parts[1]))


def _convention(s):
    from .trianglegroup import Convention

    for c in Convention:
        if s in (c.value, c.name):
            return c
    names = ", ".join(c.value for c in Convention)
    raise argparse.ArgumentTypeError(f"unknown convention {s!r} (choose from {names})")


def read_config(path):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for num, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{num}: expected key = value")
            k, v = (x.strip() for x in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _env_tol():
    raw = os.environ.get("CHYP_TOL")
    if raw is None:
        return None
    try:
        return _positive_float(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"CHYP_TOL: {exc}") from None


# ---------------------------------------------------------------- verbs


def _emit(obj):
    sys.stdout.write(to_json(obj))


def _out(args, name):
    return os.path.join(args.out, name)


def cmd_classify(args):
    z = complex(args.trace_re, args.trace_im)
    cls = classify_trace(z, args.tol)
    _emit({"f_value": goldman_f(z), "class": cls.label})


def cmd_deltoid_plot(args):
    pts = list(args.trace or [])
    rows = []
    for z in pts:
        rows.append({"trace": z, "f_value": goldman_f(z), "class": classify_trace(z, args.tol).label})
    svg = figures.deltoid_svg(points=[(f"{z.real:g}{z.imag:+g}i", z) for z in pts])
    path = _out(args, "deltoid.svg")
    atomic_write(path, svg)
    _emit({"svg": path, "points": rows})


def cmd_alpha_scan(args):
    from .trianglegroup import (
        ROW_COLUMNS,
        TriangleParams,
        alpha_grid,
        alpha_min,
        alpha_scan,
        alpha_zero,
        build_representation,
        scan_rows,
        scan_transition,
        trace_WB_formula,
        trace_WB_matrix,
    )

    if args.resolution < 2:
        raise UsageError("resolution must be at least 2")
    n = args.n
    grid = alpha_grid(n, args.resolution)
    records = alpha_scan(n, grid, args.convention)
    wb = []
    for a in grid:
        params = TriangleParams(3, 3, n, float(a))
        try:
            wb.append(trace_WB_matrix(build_representation(params, args.convention)))
        except ExistenceViolated:
            wb.append(trace_WB_formula(params, +1))
    step = float(grid[1] - grid[0])
    last_ell, first_hyp = scan_transition(records)
    a0 = alpha_zero(n)
    csv_path, svg_path = _out(args, "alpha_scan.csv"), _out(args, "alpha_scan.svg")
    atomic_write(csv_path, to_csv(scan_rows(records), ROW_COLUMNS))
    svg = figures.deltoid_svg(
        trajectories=[("tr W_B", wb), ("tr W_A", [r.trace for r in records])],
        points=[("3", 3.0)],
    )
    atomic_write(svg_path, svg)
    if last_ell is None or first_hyp is None:
        reported = None
    else:
        reported = 0.5 * (last_ell + first_hyp)
    summary = {
        "n": n,
        "convention": args.convention.value,
        "resolution": len(records),
        "step": step,
        "alpha_min": alpha_min(n),
        "alpha_zero": a0,
        "bracket": [last_ell, first_hyp],
        "transition": reported,
        "csv": csv_path,
        "svg": svg_path,
    }
    _emit(summary)
    if reported is None or abs(reported - a0) > step:
        raise VerificationFailed(f"transition {reported} is not within {step} of {a0}")


def _trace_entry(z, tol):
    z = complex(z)
    return {"re": z.real, "im": z.imag, "f_value": goldman_f(z), "class": classify_trace(z, tol).label}


def cmd_build_triangle(args):
    from .trianglegroup import (
        TriangleParams,
        angular_invariant,
        build_representation,
        convention_report,
        evaluate_word,
        params_dict,
        projector_traces,
    )

    params = TriangleParams(args.p, args.q, args.r, args.alpha)
    rep = build_representation(params, args.convention)
    words = {"I1I2": (1, 2), "I2I3": (2, 3), "I3I1": (3, 1), "W_B": (1, 2, 3), "W_A": (1, 3, 2, 3)}
    closed = projector_traces(rep.gram)
    traces = {}
    for name, w in words.items():
        t = evaluate_word(rep, w).trace
        entry = _trace_entry(t, args.tol)
        entry["closed_form_error"] = abs(t - closed[name])
        traces[name] = entry
    G = rep.gram.G
    out = {
        "params": params_dict(params),
        "convention": args.convention.value,
        "gram": {"re": G.real, "im": G.imag},
        "det": rep.gram.det,
        "angular_invariant": angular_invariant(*rep.polar, form=rep.form),
        "traces": traces,
        "orders": convention_report(params)[args.convention.value],
    }
    _emit(out)


def cmd_falsify(args):
    from .trianglegroup import (
        ROW_COLUMNS,
        TriangleParams,
        build_representation,
        discreteness_falsifier,
        params_dict,
        witness_rows,
    )

    if args.maxlen < 1:
        raise UsageError("maxlen must be positive")
    params = TriangleParams(3, 3, args.n, args.alpha)
    rep = build_representation(params, args.convention)
    wit = discreteness_falsifier(rep, args.maxlen, args.tol)
    rows = witness_rows(wit)
    out = {
        "params": params_dict(params),
        "convention": args.convention.value,
        "maxlen": args.maxlen,
        "count": len(rows),
        "witnesses": [
            {"word": r["alpha_or_word"], "trace_re": r["trace_re"], "trace_im": r["trace_im"],
             "f_value": r["goldman_f"], "class": r["class"]}
            for r in rows
        ],
    }
    if args.out_csv:
        path = _out(args, "witnesses.csv")
        atomic_write(path, to_csv(rows, ROW_COLUMNS))
        out["csv"] = path
    _emit(out)


def cmd_gon18(args):
    from .gon18 import axis_chords, self_intersection_count, verify_side_pairings
    from .realhyp import axis_of, distance
    from .surfaces import genus_two_surface

    tol = args.tol or 1e-9
    surf = genus_two_surface()
    gon = surf.gon
    poly = gon.polygon
    rep = verify_side_pairings(poly, gon.pairings, tol)
    chords, closure = axis_chords(gon)
    crossings = self_intersection_count(chords, gon.pairings, poly)
    mids = [poly.side_midpoint(k) for k in range(len(poly))]
    mid_err = max(
        min(distance(x, m) for m in mids) for c in chords for x in (c.entry, c.exit)
    )
    angles = poly.interior_angles
    cycle_of = {v: i for i, cyc in enumerate(rep.cycles) for v in cyc}
    vrows = [
        {
            "vertex": k,
            "x": complex(v).real,
            "y": complex(v).imag,
            "angle": angles[k],
            "cycle": cycle_of[k],
            "cycle_angle_sum": rep.angle_sums[cycle_of[k]],
        }
        for k, v in enumerate(poly.vertices)
    ]
    csv_path, svg_path = _out(args, "gon18_vertices.csv"), _out(args, "gon18.svg")
    atomic_write(csv_path, to_csv(vrows, ("vertex", "x", "y", "angle", "cycle", "cycle_angle_sum")))
    atomic_write(svg_path, figures.gon18_svg(poly, chords, axis_of(gon.f)))
    genus = rep.genus
    out = {
        "area": rep.area,
        "cycles": len(rep.cycles),
        "cycle_vertices": [list(c) for c in rep.cycles],
        "angle_sums": list(rep.angle_sums),
        "genus": round(genus),
        "euler_characteristic": rep.euler_characteristic,
        "closure_step": closure,
        "chords": len(chords),
        "self_intersections": crossings,
        "chord_midpoint_error": mid_err,
        "pairings": [
            {"label": inc.label, "word": "".join(map(str, s.word)), "source": inc.source,
             "target": inc.target}
            for inc, s in zip(rep.incidence, gon.pairings)
        ],
        "csv": csv_path,
        "svg": svg_path,
    }
    _emit(out)
    problems = []
    if any(abs(s - 2 * math.pi) > tol for s in rep.angle_sums):
        problems.append("a vertex cycle does not sum to 2 pi")
    if abs(genus - round(genus)) > 1e-6:
        problems.append(f"non-integral genus {genus}")
    if 2 - 2 * round(genus) != rep.euler_characteristic:
        problems.append("genus and Euler characteristic disagree")
    if mid_err > tol:
        problems.append(f"chord endpoints miss side midpoints by {mid_err:.3g}")
    if problems:
        raise VerificationFailed("; ".join(problems))


def cmd_cosets(args):
    from .gon18 import PAIRING_WORDS
    from .surfaces import coset_table

    if args.maxlen < 0:
        raise UsageError("maxlen must be nonnegative")
    table = coset_table()
    rows = table.rows(args.maxlen)
    realized = sorted({t for _, t in rows})
    pairing_labels = {k: table.label(w) for k, w in PAIRING_WORDS.items()}
    path = _out(args, "cosets.csv")
    atomic_write(path, to_csv([{"word": w, "label": t} for w, t in rows], ("word", "label")))
    _emit({
        "index": len(table.action),
        "maxlen": args.maxlen,
        "words": len(rows),
        "labels_realized": len(realized),
        "pairing_word_labels": pairing_labels,
        "action": [list(r) for r in table.action],
        "csv": path,
    })
    if any(pairing_labels.values()):
        raise VerificationFailed("a side-pairing word is not in the surface group")


def cmd_cover(args):
    from .surfaces import CoverSpec, HomologyClass, cover_invariants, homology_class, lf_word, lift_count, psi

    beta = None
    if args.beta is not None:
        try:
            beta = HomologyClass(tuple(int(x) for x in args.beta.split(",")))
        except ValueError as exc:
            raise UsageError(f"--beta: {exc}") from None
    spec = CoverSpec(args.genus, beta)
    w = lf_word()
    inv = cover_invariants(spec)
    _emit({
        "genus_target": spec.genus_target,
        "beta": list(spec.beta.coords),
        **inv,
        "lf_word": "".join(map(str, w)),
        "lf_class": list(homology_class(w).coords),
        "psi_lf": psi(w, spec),
        "lifts_lf": lift_count(w, spec),
    })
    if inv["genus"] != spec.genus_target:
        raise VerificationFailed("cover genus differs from the target")


def ideal_wb_oracle():
    """``tr(I1 I2 I3)`` for the ideal triangle ``0, 1, inf`` from 2x2 matrices.

    In the real embedding every inversion is minus a reflection, so for the
    orientation-reversing product ``A`` of the three reflections the trace
    is ``1 - tr(A^2)``.
    """
    from .realhyp import compose, ideal_triangle_reflections

    a = compose(*ideal_triangle_reflections())
    sq = a.m @ a.m
    return 1.0 - float(np.trace(sq).real)


def cmd_adjudicate(args):
    from .trianglegroup import (
        TriangleParams,
        adjudicate_WB,
        alpha_zero,
        beta_zero,
        build_representation,
        convention_report,
        trace_dictionary,
        trace_WA_formula,
        trace_WA_relation_formula,
    )

    samples = []
    for orders in ((3, 3, 4), (3, 3, 9), (3, 4, 5), (2, 5, 7), (4, 4, 4)):
        for alpha in (0.5, 1.25, 2.0, math.pi):
            params = TriangleParams(*orders, alpha)
            try:
                rep = build_representation(params)
            except ExistenceViolated:
                continue
            r = adjudicate_WB(rep)
            samples.append({"orders": list(orders), "alpha": alpha, **r})
    ideal = build_representation(TriangleParams(math.inf, math.inf, math.inf, math.pi))
    ideal_r = adjudicate_WB(ideal)
    oracle = ideal_wb_oracle()
    plus = all(s["plus3_matches"] for s in samples)
    minus = all(s["minus3_matches"] for s in samples)
    matched = "+3" if plus and not minus else "-3" if minus and not plus else None
    dictionary = []
    for a in (alpha_zero(9), 0.6, 0.8, math.pi):
        entry = {"alpha": a, "trace": trace_WA_formula(TriangleParams(3, 3, 9, a))}
        try:
            b = trace_dictionary(9, a)
        except NoSolution:
            entry.update(beta=None, trace_beta=None)
        else:
            entry.update(beta=b, trace_beta=trace_WA_relation_formula(TriangleParams(3, 3, 9, b)))
        dictionary.append(entry)
    out = {
        "matched_constant": matched,
        "samples": samples,
        "ideal": {
            "matrix": ideal_r["matrix"],
            "oracle_2x2": oracle,
            "agrees": abs(ideal_r["matrix"] - oracle) <= 1e-9 * max(1.0, abs(oracle)),
            "matched_variant_agrees": ideal_r["plus3_matches" if matched == "+3" else "minus3_matches"],
        },
        "orders_339": {
            # each chart at its own parabolic phase for W_A
            "GramPaper": convention_report(TriangleParams(3, 3, 9, alpha_zero(9)))["GramPaper"],
            "RelationEnforcing": convention_report(TriangleParams(3, 3, 9, beta_zero(9)))[
                "RelationEnforcing"
            ],
        },
        "beta_zero_9": beta_zero(9),
        "dictionary": dictionary,
    }
    _emit(out)
    if matched is None or not out["ideal"]["agrees"] or not out["ideal"]["matched_variant_agrees"]:
        raise VerificationFailed("the trace of I1 I2 I3 is not matched consistently")


# ---------------------------------------------------------------- parser


def build_parser():
    from .trianglegroup import Convention

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file supplying option defaults")
    common.add_argument("--out", default=".", help="output directory for files")
    common.add_argument("--tol", type=_positive_float, default=None, help="tolerance override")

    p = argparse.ArgumentParser(prog="chyp", description="Complex hyperbolic triangle groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="classify a trace by the sign of f")
    s.add_argument("trace_re", type=_finite_float)
    s.add_argument("trace_im", type=_finite_float)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("deltoid-plot", parents=[common], help="plot the deltoid with marked traces")
    s.add_argument("--trace", type=_complex_pair, action="append", help="RE,IM (repeatable)")
    s.set_defaults(func=cmd_deltoid_plot)

    s = sub.add_parser("alpha-scan", parents=[common], help="classify W_A across alpha")
    s.add_argument("--n", type=int, default=9)
    s.add_argument("--resolution", type=int, default=1000)
    s.add_argument("--convention", type=_convention, default=Convention.GRAM_PAPER)
    s.set_defaults(func=cmd_alpha_scan)

    s = sub.add_parser("build-triangle", parents=[common], help="realize a triangle group")
    s.add_argument("--p", type=_order, default=3)
    s.add_argument("--q", type=_order, default=3)
    s.add_argument("--r", type=_order, default=9)
    s.add_argument("--alpha", type=_finite_float, default=math.pi)
    s.add_argument("--convention", type=_convention, default=Convention.GRAM_PAPER)
    s.set_defaults(func=cmd_build_triangle)

    s = sub.add_parser("falsify", parents=[common], help="search for elliptic infinite-order words")
    s.add_argument("--n", type=int, default=9)
    s.add_argument("--alpha", type=_finite_float, required=True)
    s.add_argument("--convention", type=_convention, default=Convention.GRAM_PAPER)
    s.add_argument("--maxlen", type=int, default=6)
    s.add_argument("--out-csv", action="store_true", help="also write witnesses.csv")
    s.set_defaults(func=cmd_falsify)

    s = sub.add_parser("gon18", parents=[common], help="verify the 18-gon and trace the axis")
    s.set_defaults(func=cmd_gon18)

    s = sub.add_parser("cosets", parents=[common], help="coset labels of reduced words")
    s.add_argument("--maxlen", type=int, default=4)
    s.set_defaults(func=cmd_cosets)

    s = sub.add_parser("cover", parents=[common], help="cyclic cover bookkeeping")
    s.add_argument("--genus", type=int, default=3)
    s.add_argument("--beta", help="a1,b1,a2,b2 coordinates")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("adjudicate", parents=[common], help="trace constant and convention report")
    s.set_defaults(func=cmd_adjudicate)
    return p


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = sorted(set(cfg) - known - {"config"})
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        cfg.pop("config", None)
        subparser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    if args.tol is None:
        args.tol = _env_tol()
    return args


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        print(f"chyp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except VerificationFailed as exc:
        print(f"chyp: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except UsageError as exc:
        print(f"chyp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChypError as exc:
        print(f"chyp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"chyp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
