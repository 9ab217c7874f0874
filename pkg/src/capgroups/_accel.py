"""Batched product kernels on integer-coded elements.

An element ``y^t h`` of a split group is coded as ``t * |H| + idx(h)`` where
``idx`` is the mixed-radix index of the exponent vector (first coordinate most
significant).  Everything that touches whole element sets goes through
:func:`mul_pairs`.

Set ``CAPGROUPS_BACKEND=numpy`` to force the pure numpy path; the default is
numba when it imports, numpy otherwise.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


_requested = os.environ.get("CAPGROUPS_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"CAPGROUPS_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = "numpy" if _requested == "numpy" or not HAVE_NUMBA else "numba"


def decode(codes, hsize, orders):
    """Split codes into top exponents ``t`` and an (N, n) exponent matrix."""
    codes = np.asarray(codes, dtype=np.int64)
    t, rest = np.divmod(codes, hsize)
    n = len(orders)
    v = np.empty((codes.shape[0], n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        rest, v[:, i] = np.divmod(rest, orders[i])
    return t, v


def encode(t, v, hsize, orders):
    code = np.zeros(v.shape[0], dtype=np.int64)
    for i in range(len(orders)):
        code = code * orders[i] + v[:, i]
    return np.asarray(t, dtype=np.int64) * hsize + code


def mul_pairs_numpy(a, b, m, hsize, orders, alpha):
    """``a[k] * b[k]`` for every k, vectorised with numpy."""
    ta, va = decode(a, hsize, orders)
    tb, vb = decode(b, hsize, orders)
    out_v = vb.copy()
    for s in range(m):
        rows = tb == s
        if rows.any():
            out_v[rows] += va[rows] @ alpha[s].T
    out_v %= orders
    return encode((ta + tb) % m, out_v, hsize, orders)


@njit(cache=True)
def _mul_pairs_jit(a, b, m, hsize, orders, alpha):
    n = orders.shape[0]
    out = np.empty(a.shape[0], dtype=np.int64)
    va = np.empty(n, dtype=np.int64)
    vb = np.empty(n, dtype=np.int64)
    for k in range(a.shape[0]):
        ta = a[k] // hsize
        ra = a[k] - ta * hsize
        tb = b[k] // hsize
        rb = b[k] - tb * hsize
        for i in range(n - 1, -1, -1):
            va[i] = ra % orders[i]
            ra //= orders[i]
            vb[i] = rb % orders[i]
            rb //= orders[i]
        code = 0
        for i in range(n):
            s = vb[i]
            for j in range(n):
                s += alpha[tb, i, j] * va[j]
            code = code * orders[i] + s % orders[i]
        out[k] = ((ta + tb) % m) * hsize + code
    return out


def mul_pairs_numba(a, b, m, hsize, orders, alpha):
    return _mul_pairs_jit(
        np.ascontiguousarray(a, dtype=np.int64),
        np.ascontiguousarray(b, dtype=np.int64),
        m,
        hsize,
        np.ascontiguousarray(orders, dtype=np.int64),
        np.ascontiguousarray(alpha, dtype=np.int64),
    )


def mul_pairs(a, b, m, hsize, orders, alpha):
    a, b = np.broadcast_arrays(
        np.atleast_1d(np.asarray(a, dtype=np.int64)),
        np.atleast_1d(np.asarray(b, dtype=np.int64)),
    )
    if a.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    if BACKEND == "numba":
        return mul_pairs_numba(a, b, m, hsize, orders, alpha)
    return mul_pairs_numpy(a, b, m, hsize, orders, alpha)
