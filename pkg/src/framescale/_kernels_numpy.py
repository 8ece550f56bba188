"""Vectorized numpy kernels; the fallback lane when the jit backend is off."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_CHUNK = 1 << 14


def quadratic_form_scan(gram: np.ndarray) -> np.ndarray:
    """q[mask] = 1_J^T G 1_J for every subset mask J of {0..k-1}.

    Chunked so the expanded bit matrix never exceeds a few MB.
    """
    k = gram.shape[0]
    total = 1 << k
    out = np.empty(total)
    shifts = np.arange(k, dtype=np.int64)
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        masks = np.arange(lo, hi, dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.float64)
        out[lo:hi] = np.einsum("mi,ij,mj->m", bits, gram, bits, optimize=True)
    return out


def solve_supports(system: np.ndarray, rhs: np.ndarray, gram: np.ndarray,
                   supports: np.ndarray, pos_tol: float, res_tol: float):
    """Solve the restricted scaling system on each same-size support.

    system: (m, k) independent equality rows, rhs: (m,) right-hand side,
    gram: (k, k) full matrix whose every row must vanish on the extended
    solution, supports: (num, s) strictly increasing column indices.

    Returns (ok, sols) where ok[t] means the restriction of the system to
    support t has a unique solution, strictly above pos_tol in every entry,
    satisfying both the restricted rows and all gram rows within res_tol.
    """
    num, s = supports.shape
    ok = np.zeros(num, dtype=bool)
    sols = np.zeros((num, s))
    for t in range(num):
        cols = supports[t]
        a = system[:, cols]
        x, _, rk, _ = np.linalg.lstsq(a, rhs, rcond=None)
        if rk < s:
            continue
        if np.min(x) <= pos_tol:
            continue
        if np.max(np.abs(a @ x - rhs)) > res_tol:
            continue
        if np.max(np.abs(gram[:, cols] @ x)) > res_tol:
            continue
        ok[t] = True
        sols[t] = x
    return ok, sols
