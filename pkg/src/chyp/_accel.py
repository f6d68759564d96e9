"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba versions are used when numba imports cleanly and the environment
variable ``CHYP_DISABLE_NUMBA`` is unset (or ``0``).  Both paths are always
importable as ``numpy_kernels`` / ``numba_kernels`` so tests and the
benchmark can compare them directly.

Words are passed as a dense ``int64`` array of shape ``(n_words, maxlen)``
holding generator indices, right-padded with ``-1``.
"""

import os
from types import SimpleNamespace

import numpy as np


def _disabled_by_env():
    flag = os.environ.get("CHYP_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


# ---------------------------------------------------------------- numpy path


def _np_goldman_f(z):
    z = np.asarray(z, dtype=np.complex128)
    a2 = z.real * z.real + z.imag * z.imag
    return a2 * a2 - 8.0 * (z**3).real + 18.0 * a2 - 27.0


def _np_word_products(gens, words):
    n, maxlen = words.shape
    out = np.broadcast_to(np.eye(3, dtype=np.complex128), (n, 3, 3)).copy()
    for k in range(maxlen):
        col = words[:, k]
        live = col >= 0
        if not live.any():
            break
        out[live] = out[live] @ gens[col[live]]
    return out


def _np_word_traces(gens, words):
    return np.trace(_np_word_products(gens, words), axis1=1, axis2=2)


def _np_hermitian_ratio(J, Z, W):
    # |<z,w>|^2 / (<z,z><w,w>) for rows of Z and W
    JZ = Z @ J.T
    JW = W @ J.T
    zw = np.einsum("ij,ij->i", JZ, W.conj())
    zz = np.einsum("ij,ij->i", JZ, Z.conj()).real
    ww = np.einsum("ij,ij->i", JW, W.conj()).real
    return (zw.real**2 + zw.imag**2) / (zz * ww)


numpy_kernels = SimpleNamespace(
    name="numpy",
    goldman_f=_np_goldman_f,
    word_products=_np_word_products,
    word_traces=_np_word_traces,
    hermitian_ratio=_np_hermitian_ratio,
)


# ---------------------------------------------------------------- numba path


def _build_numba_kernels():
    import numba as nb

    @nb.njit(cache=False)
    def goldman_f_1d(z):
        out = np.empty(z.shape[0])
        for i in range(z.shape[0]):
            x = z[i].real
            y = z[i].imag
            a2 = x * x + y * y
            re3 = x * x * x - 3.0 * x * y * y
            out[i] = a2 * a2 - 8.0 * re3 + 18.0 * a2 - 27.0
        return out

    @nb.njit(cache=False)
    def _mul3(a, b, out):
        for i in range(3):
            for j in range(3):
                s = 0j
                for k in range(3):
                    s += a[i, k] * b[k, j]
                out[i, j] = s

    @nb.njit(cache=False)
    def word_products(gens, words):
        n, maxlen = words.shape
        out = np.zeros((n, 3, 3), dtype=np.complex128)
        tmp = np.empty((3, 3), dtype=np.complex128)
        for w in range(n):
            acc = np.eye(3, dtype=np.complex128)
            for k in range(maxlen):
                g = words[w, k]
                if g < 0:
                    break
                _mul3(acc, gens[g], tmp)
                acc[:, :] = tmp
            out[w] = acc
        return out

    @nb.njit(cache=False)
    def word_traces(gens, words):
        n, maxlen = words.shape
        out = np.empty(n, dtype=np.complex128)
        acc = np.empty((3, 3), dtype=np.complex128)
        tmp = np.empty((3, 3), dtype=np.complex128)
        for w in range(n):
            for i in range(3):
                for j in range(3):
                    acc[i, j] = 1.0 if i == j else 0.0
            for k in range(maxlen):
                g = words[w, k]
                if g < 0:
                    break
                _mul3(acc, gens[g], tmp)
                acc[:, :] = tmp
            out[w] = acc[0, 0] + acc[1, 1] + acc[2, 2]
        return out

    @nb.njit(cache=False)
    def hermitian_ratio(J, Z, W):
        n = Z.shape[0]
        out = np.empty(n)
        for i in range(n):
            zw = 0j
            zz = 0j
            ww = 0j
            for a in range(3):
                for b in range(3):
                    jab = J[a, b]
                    if jab == 0:
                        continue
                    zw += W[i, a].conjugate() * jab * Z[i, b]
                    zz += Z[i, a].conjugate() * jab * Z[i, b]
                    ww += W[i, a].conjugate() * jab * W[i, b]
            out[i] = (zw.real * zw.real + zw.imag * zw.imag) / (zz.real * ww.real)
        return out

    def goldman_f(z):
        z = np.asarray(z, dtype=np.complex128)
        return goldman_f_1d(z.ravel()).reshape(z.shape)

    def _words(gens, words, fn):
        return fn(
            np.ascontiguousarray(gens, dtype=np.complex128),
            np.ascontiguousarray(words, dtype=np.int64),
        )

    return SimpleNamespace(
        name="numba",
        goldman_f=goldman_f,
        word_products=lambda gens, words: _words(gens, words, word_products),
        word_traces=lambda gens, words: _words(gens, words, word_traces),
        hermitian_ratio=lambda J, Z, W: hermitian_ratio(
            np.ascontiguousarray(J, dtype=np.complex128),
            np.ascontiguousarray(Z, dtype=np.complex128),
            np.ascontiguousarray(W, dtype=np.complex128),
        ),
    )


try:
    numba_kernels = _build_numba_kernels()
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_kernels = None

if numba_kernels is not None and not _disabled_by_env():
    kernels = numba_kernels
else:
    kernels = numpy_kernels

BACKEND = kernels.name


def pack_words(words, maxlen=None):
    """Pack an iterable of 0-based index sequences into the padded array form."""
    words = [tuple(w) for w in words]
    if maxlen is None:
        maxlen = max((len(w) for w in words), default=0)
    arr = np.full((len(words), max(maxlen, 1)), -1, dtype=np.int64)
    for i, w in enumerate(words):
        arr[i, : len(w)] = w
    return arr
