"""Dense linear algebra helpers: pseudoinverse, Schur complements, kernels.

All matrices here are symmetric, so symmetric eigendecompositions are used
throughout; this keeps symmetric inputs symmetric in the output.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
import scipy.linalg as sla

from . import errors
from .tolerances import rank_tol


def index_set(blocks: Iterable[int], n_blocks: int) -> np.ndarray:
    """Validate a set of 0-based block indices and return it sorted."""
    idx = sorted({int(b) for b in blocks})
    if not idx:
        raise errors.InvalidIndexSet("index set is empty")
    if idx[0] < 0 or idx[-1] >= n_blocks:
        raise errors.InvalidIndexSet(f"index set {idx} outside 0..{n_blocks - 1}")
    return np.array(idx, dtype=int)


def block_rows(blocks: Sequence[int], d: int) -> np.ndarray:
    """Scalar row indices of the listed 0-based blocks, in the listed order."""
    blocks = np.asarray(blocks, dtype=int)
    return (blocks[:, None] * d + np.arange(d)[None, :]).ravel()


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def pseudoinverse(m: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse of a symmetric matrix.

    Eigenvalues with ``|lam| <= tol * max|lam|`` are treated as zero.  The
    default ``tol`` is ``1e-10 * dim``.
    """
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return m.copy()
    tol = rank_tol(m.shape[0]) if tol is None else tol
    lam, vec = np.linalg.eigh(symmetrize(m))
    top = np.max(np.abs(lam))
    if top == 0:
        return np.zeros_like(m)
    keep = np.abs(lam) > tol * top
    out = (vec[:, keep] / lam[keep]) @ vec[:, keep].T
    return symmetrize(out)


def spd_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a x = b`` for symmetric ``a``, trying Cholesky first.

    Raises:
        SingularBlock: when ``a`` is numerically singular.
    """
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return np.zeros((0,) + np.shape(b)[1:])
    try:
        return sla.cho_solve(sla.cho_factor(a), b)
    except np.linalg.LinAlgError:
        pass
    lam = np.linalg.eigvalsh(symmetrize(a))
    top = max(np.max(np.abs(lam)), 1.0)
    if np.min(np.abs(lam)) <= rank_tol(a.shape[0]) * top:
        raise errors.SingularBlock(f"block is singular (smallest |eigenvalue| {np.min(np.abs(lam)):.3g})")
    return sla.solve(a, b, assume_a="sym")


def schur_complement(m: np.ndarray, eliminate: Iterable[int], d: int = 1,
                     use_pseudo: bool = False, tol: float | None = None) -> np.ndarray:
    """Generalized Schur complement ``M / M_DD`` onto the kept blocks.

    Args:
        m: ``(nb*d) x (nb*d)`` matrix.
        eliminate: 0-based block indices forming ``D``.
        d: block size.
        use_pseudo: use ``D^+`` instead of ``D^{-1}``.
        tol: relative rank tolerance for the pseudoinverse.

    Returns:
        ``A - B D^{-1} C`` on the remaining blocks, in increasing block order.
    """
    m = np.asarray(m, dtype=float)
    nb = m.shape[0] // d
    elim = index_set(eliminate, nb)
    keep = np.setdiff1d(np.arange(nb), elim)
    if keep.size == 0:
        raise errors.InvalidIndexSet("cannot eliminate every block")
    return schur_onto(m, keep, d=d, use_pseudo=use_pseudo, tol=tol)


def schur_onto(m: np.ndarray, keep: Sequence[int], d: int = 1,
               use_pseudo: bool = False, tol: float | None = None) -> np.ndarray:
    """Schur complement onto ``keep`` (0-based blocks, order preserved)."""
    m = np.asarray(m, dtype=float)
    nb = m.shape[0] // d
    keep = [int(k) for k in keep]
    if len(set(keep)) != len(keep) or not keep or min(keep) < 0 or max(keep) >= nb:
        raise errors.InvalidIndexSet(f"bad kept block list {keep}")
    elim = np.setdiff1d(np.arange(nb), keep)
    ki, ei = block_rows(keep, d), block_rows(elim, d)
    A = m[np.ix_(ki, ki)]
    if ei.size == 0:
        return A.copy()
    B, C, D = m[np.ix_(ki, ei)], m[np.ix_(ei, ki)], m[np.ix_(ei, ei)]
    if use_pseudo:
        out = A - B @ pseudoinverse(D, tol) @ C
    else:
        out = A - B @ spd_solve(D, C)
    if np.allclose(m, m.T, rtol=0, atol=0):
        out = symmetrize(out)
    return out


def kernel_basis(m: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the numerical kernel of a symmetric PSD matrix.

    The kernel is spanned by eigenvectors whose eigenvalue is at most
    ``tol * lambda_max`` (default ``tol = 1e-10 * dim``).
    """
    m = np.asarray(m, dtype=float)
    tol = rank_tol(m.shape[0]) if tol is None else tol
    lam, vec = np.linalg.eigh(symmetrize(m))
    top = np.max(np.abs(lam)) if lam.size else 0.0
    if top == 0:
        return np.eye(m.shape[0])
    return vec[:, lam <= tol * top]


def complete_orthonormal(partial: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Extend orthonormal columns to a full orthogonal matrix.

    The first ``rho`` columns of the result equal ``partial``; the rest span
    its orthogonal complement.  An empty input yields the identity.
    """
    partial = np.atleast_2d(np.asarray(partial, dtype=float))
    d, rho = partial.shape
    if rho == 0:
        return np.eye(d)
    if rho > d or np.max(np.abs(partial.T @ partial - np.eye(rho))) > tol:
        raise errors.NotOrthonormalInput("columns are not orthonormal")
    if rho == d:
        return partial.copy()
    comp = sla.null_space(partial.T)
    return np.hstack([partial, comp])
