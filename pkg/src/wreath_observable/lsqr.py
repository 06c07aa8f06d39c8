"""LSQR (Paige & Saunders) for min ||A x - b|| with A given by two callables."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass
class LsqrResult:
    x: np.ndarray
    iterations: int
    converged: bool
    stop_reason: str
    residual_estimate: float
    gradient_ratio: float  # ||A^T r|| / (||A|| ||r||) estimate at exit


def lsqr(matvec: Callable[[np.ndarray], np.ndarray], rmatvec: Callable[[np.ndarray], np.ndarray],
         b: np.ndarray, n_columns: int, tol: float = 1e-10, btol: float | None = None,
         max_iters: int = 1000) -> LsqrResult:
    """Golub-Kahan bidiagonalization with Givens updates.

    Stops when ``||r|| <= btol ||b||`` (consistent systems) or when the
    relative normal-equation residual ``||A^T r|| / (||A|| ||r||) <= tol``.
    """
    btol = tol if btol is None else btol
    x = np.zeros(n_columns)
    u = np.array(b, dtype=float)
    beta = float(np.linalg.norm(u))
    if beta == 0.0:
        return LsqrResult(x, 0, True, "zero right-hand side", 0.0, 0.0)
    bnorm = beta
    u /= beta
    v = rmatvec(u)
    alpha = float(np.linalg.norm(v))
    if alpha == 0.0:
        return LsqrResult(x, 0, True, "b orthogonal to range", beta, 0.0)
    v /= alpha
    w = v.copy()
    phibar, rhobar = beta, alpha
    anorm_sq = 0.0
    tiny = np.finfo(float).eps * bnorm
    grad = math.inf
    for itn in range(1, max_iters + 1):
        u = matvec(v) - alpha * u
        beta = float(np.linalg.norm(u))
        anorm_sq += alpha * alpha + beta * beta
        if beta <= tiny:
            # bidiagonalization terminated: the projected system is solved exactly
            x += (phibar / rhobar) * w
            return LsqrResult(x, itn, True, "breakdown (exact solution)", 0.0, 0.0)
        u /= beta
        v = rmatvec(u) - beta * v
        alpha = float(np.linalg.norm(v))
        if alpha > 0.0:
            v /= alpha
        rho = math.hypot(rhobar, beta)
        c, s = rhobar / rho, beta / rho
        theta = s * alpha
        rhobar = -c * alpha
        phi = c * phibar
        phibar = s * phibar
        x += (phi / rho) * w
        w = v - (theta / rho) * w
        arnorm = phibar * alpha * abs(c)
        grad = arnorm / (math.sqrt(anorm_sq) * phibar) if phibar > 0 else 0.0
        if phibar <= btol * bnorm:
            return LsqrResult(x, itn, True, "residual below btol", phibar, grad)
        if grad <= tol:
            return LsqrResult(x, itn, True, "least-squares optimality below tol", phibar, grad)
        if alpha == 0.0:
            return LsqrResult(x, itn, True, "breakdown (range exhausted)", phibar, 0.0)
    return LsqrResult(x, max_iters, False, "iteration limit", phibar, grad)
