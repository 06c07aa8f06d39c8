"""Pure-Python (numpy) fallback for the dictionary passes in ``_kernels.pyx``.

Same signatures and column/row conventions; rows are generated one swap at a
time so memory stays at O(columns per swap * 2**m).
"""
import numpy as np


def _swap_rows(lo_k, hi_k, m, radix):
    both = np.stack([lo_k, hi_k], axis=1)  # (half, 2)
    rows = np.zeros((1, 1), dtype=np.int64)
    for _ in range(m):
        # rows[c * half + d, s * 2 + bit] = rows[c, s] * radix + both[d, bit]
        rows = rows[:, None, :, None] * radix + both[None, :, None, :]
        rows = rows.reshape(rows.shape[0] * rows.shape[1], -1)
    return rows


def dictionary_rows(lo, hi, m, radix):
    return np.concatenate([_swap_rows(lo[k], hi[k], m, radix) for k in range(lo.shape[0])])


def dictionary_matvec(lo, hi, m, radix, scale, x, out):
    per_swap = lo.shape[1] ** m
    if x.shape[0] != lo.shape[0] * per_swap:
        raise ValueError("coefficient vector has the wrong length")
    for k in range(lo.shape[0]):
        xk = x[k * per_swap:(k + 1) * per_swap]
        if not xk.any():
            continue
        rows = _swap_rows(lo[k], hi[k], m, radix)
        out += np.bincount(rows.ravel(), weights=np.repeat(xk * scale, 2 ** m), minlength=out.shape[0])


def dictionary_rmatvec(lo, hi, m, radix, scale, y, out):
    per_swap = lo.shape[1] ** m
    if out.shape[0] != lo.shape[0] * per_swap:
        raise ValueError("output vector has the wrong length")
    for k in range(lo.shape[0]):
        rows = _swap_rows(lo[k], hi[k], m, radix)
        out[k * per_swap:(k + 1) * per_swap] = scale * y[rows].sum(axis=1)
