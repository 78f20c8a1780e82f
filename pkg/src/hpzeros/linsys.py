"""Dense linear algebra for one-dimensional kernels.

Matrices are 2-D numpy object arrays holding mpfr/mpc values (floating
path) or ``Fraction``/``int`` values (exact path).
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr

from .errors import NonGenericError
from .numerics import is_real_array

__all__ = ["as_matrix", "nullvector", "nullvector_exact", "residual_norm", "max_norm"]

_norm2 = np.frompyfunc(gmpy2.norm, 1, 1)
_abs = np.frompyfunc(abs, 1, 1)


def as_matrix(rows):
    rows = [list(r) for r in rows]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def max_norm(M):
    return max(abs(x) for x in np.ravel(M)) if M.size else mpfr(0)


def residual_norm(M, v):
    """``max_i |(M v)_i|``."""
    r = M.dot(v)
    return max(abs(x) for x in r) if len(r) else mpfr(0)


def _exponent(x):
    if x == 0:
        return None
    if isinstance(x, mpc):
        return max(gmpy2.get_exp(c) for c in (x.real, x.imag) if c != 0)
    return gmpy2.get_exp(x)


def _balance_exponents(A, axis):
    """Power-of-two exponents that bring each row (axis=1) or column to max magnitude ~1."""
    exps = np.frompyfunc(_exponent, 1, 1)(A)
    out = []
    for line in (exps if axis == 1 else exps.T):
        present = [e for e in line if e is not None]
        out.append(-max(present) if present else 0)
    return out


def _pow2(ks):
    return np.array([mpfr(2) ** k for k in ks], dtype=object)


def _squared_magnitudes(block, real):
    if real:
        return _abs(block)
    return _norm2(block)


def nullvector(M, ctx, return_pivots=False):
    """Kernel vector of an ``r x (r+1)`` matrix by full-pivot elimination.

    Parameters
    ----------
    M : ndarray of object, shape (r, r + 1)
    ctx : PrecisionContext
        Supplies the working precision and ``zero_tol``.
    return_pivots : bool
        Also return the pivot magnitudes in elimination order.

    Returns
    -------
    v : ndarray of object
        Nonzero kernel vector scaled so that its largest-magnitude entry is 1.
        The free coordinate is the column never chosen as pivot.

    Notes
    -----
    Rows and columns are first equilibrated by exact powers of two, so the
    pivot threshold ``zero_tol`` is relative to each row's max-norm and the
    geometric growth of series coefficients does not masquerade as rank loss.

    Raises
    ------
    NonGenericError
        If a pivot falls below ``ctx.rank_tol`` (relative to the balanced
        matrix) before ``r`` pivots are found, i.e. the kernel has dimension two or more.
    """
    rows, cols = M.shape
    if cols != rows + 1:
        raise ValueError(f"expected rows == cols - 1, got shape {M.shape}")
    with ctx.activate():
        real = is_real_array(M)
        A = np.empty(M.shape, dtype=object)
        if real:
            A[:, :] = [[x.real if isinstance(x, mpc) else mpfr(x) for x in row] for row in M]
        else:
            A[:, :] = [[mpc(x) for x in row] for row in M]
        colscale = np.array([mpfr(1)] * cols, dtype=object)
        for _ in range(2):
            A = A * _pow2(_balance_exponents(A, 1))[:, None]
            col = _pow2(_balance_exponents(A, 0))
            A = A * col[None, :]
            colscale = colscale * col
        scale = max_norm(A)
        threshold = ctx.rank_tol * scale
        if not real:
            threshold = threshold * threshold
        perm = np.arange(cols)
        pivots = []
        for k in range(rows):
            mags = _squared_magnitudes(A[k:, k:], real)
            flat = int(np.argmax(mags))
            i, j = divmod(flat, cols - k)
            best = mags[i, j]
            if not best > threshold:
                raise NonGenericError(k)
            i += k
            j += k
            if i != k:
                A[[k, i], :] = A[[i, k], :]
            if j != k:
                A[:, [k, j]] = A[:, [j, k]]
                perm[[k, j]] = perm[[j, k]]
            piv = A[k, k]
            pivots.append(abs(piv))
            if k + 1 < rows:
                factors = A[k + 1 :, k] / piv
                A[k + 1 :, k + 1 :] -= np.outer(factors, A[k, k + 1 :])
                A[k + 1 :, k] = mpfr(0)
        x = np.empty(cols, dtype=object)
        x[rows] = mpfr(1)
        for k in range(rows - 1, -1, -1):
            x[k] = -A[k, k + 1 :].dot(x[k + 1 :]) / A[k, k]
        v = np.empty(cols, dtype=object)
        v[perm] = x
        v = v * colscale
        big = max(range(cols), key=lambda t: abs(v[t]))
        v = v / v[big]
        v[big] = mpfr(1)
    if return_pivots:
        return v, pivots
    return v


def _integer_rows(M):
    out = []
    for row in M:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row))
        out.append([int(x * den) for x in row])
    return out


def nullvector_exact(M):
    """Exact kernel of an ``r x (r+1)`` rational matrix.

    Fraction-free (Bareiss) row reduction to echelon form followed by exact
    back substitution.  The free coordinate is set to 1.

    Raises
    ------
    NonGenericError
        If more than one column is pivot-free.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 1
    if cols != rows + 1:
        raise ValueError("expected rows == cols - 1")
    A = _integer_rows(M)
    prev = 1
    pivot_cols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        for i in range(r + 1, rows):
            ai = A[i]
            aic = ai[c]
            A[i] = [(ai[j] * pr[c] - aic * pr[j]) // prev for j in range(cols)]
        prev = pr[c]
        pivot_cols.append(c)
        r += 1
    if r < rows:
        raise NonGenericError(r)
    free = next(c for c in range(cols) if c not in pivot_cols)
    x = [Fraction(0)] * cols
    x[free] = Fraction(1)
    for i in range(rows - 1, -1, -1):
        c = pivot_cols[i]
        s = sum((A[i][j] * x[j] for j in range(c + 1, cols) if x[j]), Fraction(0))
        x[c] = -s / A[i][c]
    return x
