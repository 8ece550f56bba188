"""Jitted kernels. Import fails fast when numba is unavailable; the backend
loader then falls back to the numpy lane unless FRAMESCALE_JIT requires jit."""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def _scan_core(gram):
    # Incremental over the subset lattice: adding element t to J changes the
    # quadratic form by G[t,t] + 2 * sum_{j in J} G[t,j].
    k = gram.shape[0]
    total = 1 << k
    out = np.zeros(total)
    for mask in range(1, total):
        low = mask & (-mask)
        t = 0
        v = low
        while v > 1:
            v >>= 1
            t += 1
        rest = mask ^ low
        acc = gram[t, t]
        r = rest
        while r:
            lo2 = r & (-r)
            j = 0
            w = lo2
            while w > 1:
                w >>= 1
                j += 1
            acc += 2.0 * gram[t, j]
            r ^= lo2
        out[mask] = out[rest] + acc
    return out


def quadratic_form_scan(gram: np.ndarray) -> np.ndarray:
    """q[mask] = 1_J^T G 1_J for every subset mask J of {0..k-1}."""
    return _scan_core(np.ascontiguousarray(gram, dtype=np.float64))


@njit(cache=True)
def _solve_core(system, rhs, gram, supports, pos_tol, res_tol):
    num, s = supports.shape
    m = system.shape[0]
    kdim = gram.shape[0]
    ok = np.zeros(num, dtype=np.bool_)
    sols = np.zeros((num, s))
    a = np.empty((m, s))
    b = np.empty(m)
    x = np.empty(s)
    piv_of_col = np.empty(s, dtype=np.int64)
    for t in range(num):
        scale = 0.0
        for r in range(m):
            for c in range(s):
                v = system[r, supports[t, c]]
                a[r, c] = v
                if abs(v) > scale:
                    scale = abs(v)
            b[r] = rhs[r]
        piv_tol = 1e-12 * scale if scale > 0.0 else 1e-12
        # Gaussian elimination with partial pivoting; rank deficit means the
        # restricted solution is not unique, so the support is rejected.
        row = 0
        full_rank = True
        for c in range(s):
            best = 0.0
            p = -1
            for r in range(row, m):
                v = abs(a[r, c])
                if v > best:
                    best = v
                    p = r
            if p < 0 or best <= piv_tol:
                full_rank = False
                break
            if p != row:
                for cc in range(c, s):
                    tmp = a[row, cc]
                    a[row, cc] = a[p, cc]
                    a[p, cc] = tmp
                tmp = b[row]
                b[row] = b[p]
                b[p] = tmp
            piv = a[row, c]
            for r in range(row + 1, m):
                f = a[r, c] / piv
                if f != 0.0:
                    for cc in range(c, s):
                        a[r, cc] -= f * a[row, cc]
                    b[r] -= f * b[row]
            piv_of_col[c] = row
            row += 1
        if not full_rank:
            continue
        for c in range(s - 1, -1, -1):
            r = piv_of_col[c]
            acc = b[r]
            for cc in range(c + 1, s):
                acc -= a[r, cc] * x[cc]
            x[c] = acc / a[r, c]
        good = True
        for c in range(s):
            if x[c] <= pos_tol:
                good = False
                break
        if not good:
            continue
        # leftover rows (beyond the rank) must be consistent too
        for r in range(row, m):
            if abs(b[r]) > res_tol:
                good = False
                break
        if not good:
            continue
        for r in range(m):
            acc = 0.0
            for c in range(s):
                acc += system[r, supports[t, c]] * x[c]
            if abs(acc - rhs[r]) > res_tol:
                good = False
                break
        if not good:
            continue
        for r in range(kdim):
            acc = 0.0
            for c in range(s):
                acc += gram[r, supports[t, c]] * x[c]
            if abs(acc) > res_tol:
                good = False
                break
        if not good:
            continue
        ok[t] = True
        for c in range(s):
            sols[t, c] = x[c]
    return ok, sols


def solve_supports(system: np.ndarray, rhs: np.ndarray, gram: np.ndarray,
                   supports: np.ndarray, pos_tol: float, res_tol: float):
    """Same contract as the numpy lane; see _kernels_numpy.solve_supports."""
    num = supports.shape[0]
    if num == 0:
        return np.zeros(0, dtype=bool), np.zeros((0, supports.shape[1] if supports.ndim == 2 else 0))
    return _solve_core(
        np.ascontiguousarray(system, dtype=np.float64),
        np.ascontiguousarray(rhs, dtype=np.float64),
        np.ascontiguousarray(gram, dtype=np.float64),
        np.ascontiguousarray(supports, dtype=np.int64),
        float(pos_tol), float(res_tol),
    )
