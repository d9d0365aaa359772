"""Dense numerical kernels shared by the transforms and the evaluation code."""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

logger = logging.getLogger(__name__)

CONDITION_CAP = 1e5


@dataclass(frozen=True)
class SvdResult:
    U: np.ndarray
    S: np.ndarray
    Vt: np.ndarray


def _finite_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def svd(M) -> SvdResult:
    """Thin SVD with singular values in descending order."""
    U, S, Vt = np.linalg.svd(_finite_matrix(M), full_matrices=False)
    return SvdResult(U, S, Vt)


def default_tolerance(shape: tuple[int, int], s_max: float) -> float:
    return max(shape) * s_max * np.finfo(np.float64).eps


def pseudoinverse(M, tol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse via SVD, dropping singular values at or below ``tol``."""
    M = _finite_matrix(M)
    if M.size == 0:
        return np.zeros(M.shape[::-1])
    r = svd(M)
    if tol is None:
        tol = default_tolerance(M.shape, r.S[0] if r.S.size else 0.0)
    inv = np.zeros_like(r.S)
    keep = r.S > tol
    inv[keep] = 1.0 / r.S[keep]
    return (r.Vt.T * inv) @ r.U.T


def condition_number(S, tol: float | None = None) -> float:
    """Largest singular value over the smallest one above ``tol``."""
    S = np.asarray(S, dtype=np.float64)
    if S.size == 0:
        raise ValueError("no singular values")
    if np.any(np.diff(S) > 0):
        raise ValueError("singular values must be sorted in descending order")
    if S[0] <= 0:
        raise ValueError("all singular values are zero")
    if tol is None:
        tol = S.size * S[0] * np.finfo(np.float64).eps
    effective = S[S > tol]
    if effective.size == 0:
        return math.inf
    return float(S[0] / effective[-1])


def format_condition(value: float, cap: float = CONDITION_CAP) -> str:
    if not math.isfinite(value) or value > cap:
        return f"> {cap:.0e}"
    return f"{value:.2f}"


def singular_values_streaming(chunks: Iterable[np.ndarray]) -> tuple[np.ndarray, int]:
    """Singular values of a tall matrix given as row blocks.

    Accumulates the ``D x D`` Gram matrix in float64, so the full matrix
    never has to be materialised. Returns ``(S, n_rows)``.
    """
    gram = None
    n_rows = 0
    for block in chunks:
        block = np.asarray(block, dtype=np.float64)
        if block.size == 0:
            continue
        if gram is None:
            gram = np.zeros((block.shape[1], block.shape[1]))
        gram += block.T @ block
        n_rows += block.shape[0]
    if gram is None:
        raise ValueError("no rows supplied")
    eig = np.linalg.eigvalsh(gram)[::-1]
    return np.sqrt(np.clip(eig, 0.0, None)), n_rows


def cosine(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0 or nb == 0:
        logger.debug("cosine with a zero vector, returning 0")
        return 0.0
    return float(np.clip(a @ b / (na * nb), -1.0, 1.0))


def cosine_rows(A, B) -> np.ndarray:
    """Row-wise cosine of two equally shaped matrices; zero rows give 0."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    denom = np.linalg.norm(A, axis=1) * np.linalg.norm(B, axis=1)
    num = np.einsum("ij,ij->i", A, B)
    out = np.zeros(len(A))
    ok = denom > 0
    out[ok] = num[ok] / denom[ok]
    return np.clip(out, -1.0, 1.0)


def spearman_rho(x, y) -> float:
    """Spearman correlation with average ranks for ties."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("spearman_rho expects two 1-D series of equal length")
    if x.size < 2:
        raise ValueError("need at least two observations")
    rx = stats.rankdata(x)
    ry = stats.rankdata(y)
    rx -= rx.mean()
    ry -= ry.mean()
    sx = np.sqrt(rx @ rx)
    sy = np.sqrt(ry @ ry)
    if sx == 0 or sy == 0:
        raise ValueError("constant series: rank variance is zero")
    return float(np.clip(rx @ ry / (sx * sy), -1.0, 1.0))


def pca_2d(X) -> np.ndarray:
    """Project centred rows onto the top two principal axes.

    Each axis is sign-fixed so its largest-magnitude loading is positive.
    """
    X = _finite_matrix(X)
    k, d = X.shape
    if d < 2:
        raise ValueError(f"need at least 2 input dimensions, got {d}")
    if k < 2:
        raise ValueError(f"need at least 2 points, got {k}")
    Xc = X - X.mean(axis=0)
    r = svd(Xc)
    axes = r.Vt[:2].copy()
    if axes.shape[0] < 2:
        axes = np.vstack([axes, np.zeros((2 - axes.shape[0], d))])
    for i in range(2):
        j = np.argmax(np.abs(axes[i]))
        if axes[i, j] < 0:
            axes[i] = -axes[i]
    return Xc @ axes.T


def student_t_cdf(t: float, df: int) -> float:
    """Lower-tail probability of Student's t via the regularized incomplete beta."""
    if df < 1:
        raise ValueError("df must be >= 1")
    if math.isnan(t):
        raise ValueError("t is NaN")
    if math.isinf(t):
        return 0.0 if t < 0 else 1.0
    tail = 0.5 * special.betainc(df / 2.0, 0.5, df / (df + t * t))
    return float(tail if t < 0 else 1.0 - tail)
