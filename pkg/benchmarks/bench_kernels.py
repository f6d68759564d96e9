"""Compare the numba and numpy kernel backends.

Run with ``python benchmarks/bench_kernels.py``.  Each kernel is warmed up
once (so numba compile time is excluded) and then timed with ``timeit``;
the best of ``--repeat`` runs is reported together with the largest
disagreement between the two backends.
"""

import argparse
import timeit

import numpy as np

from chyp._accel import numba_kernels, numpy_kernels, pack_words
from chyp.cxcore import FIRST_FORM
from chyp.trianglegroup import TriangleParams, build_representation
from chyp.words import enumerate_words


def make_inputs(maxlen, npoints, seed):
    rng = np.random.default_rng(seed)
    gens = build_representation(TriangleParams(3, 3, 9, 1.1)).generator_stack
    words = pack_words([tuple(x - 1 for x in w) for w in enumerate_words(maxlen)])
    z = rng.standard_normal(npoints) * 4 + 1j * rng.standard_normal(npoints) * 4

    def ball(n):
        v = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
        v *= (0.95 * rng.random((n, 1)) ** 0.25) / np.linalg.norm(v, axis=1, keepdims=True)
        return np.column_stack([v, np.ones(n)])

    J = np.asarray(FIRST_FORM.matrix, dtype=complex)
    return {
        "word_traces": (gens, words),
        "goldman_f": (z,),
        "hermitian_ratio": (J, ball(npoints), ball(npoints)),
    }


def bench(kern, name, args, number, repeat):
    fn = getattr(kern, name)
    out = fn(*args)  # warm-up and compile
    t = min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number
    return t, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--maxlen", type=int, default=12, help="word length for word_traces")
    ap.add_argument("--points", type=int, default=200_000, help="array size for pointwise kernels")
    ap.add_argument("--number", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    inputs = make_inputs(args.maxlen, args.points, args.seed)
    print(f"{'kernel':<16}{'size':>10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}{'max diff':>12}")
    for name, a in inputs.items():
        size = len(a[1]) if name == "word_traces" else len(a[-1])
        t_np, r_np = bench(numpy_kernels, name, a, args.number, args.repeat)
        if numba_kernels is None:
            print(f"{name:<16}{size:>10}{t_np * 1e3:>12.3f}{'n/a':>12}")
            continue
        t_nb, r_nb = bench(numba_kernels, name, a, args.number, args.repeat)
        diff = float(np.max(np.abs(np.asarray(r_np) - np.asarray(r_nb))))
        print(
            f"{name:<16}{size:>10}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}"
            f"{t_np / t_nb:>10.1f}{diff:>12.2e}"
        )


if __name__ == "__main__":
    main()
