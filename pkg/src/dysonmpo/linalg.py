"""Dense complex tensor kernels shared by all MPO/MPS routines.

All tensors are ``numpy.ndarray`` objects with ``complex128`` dtype and
row-major (C-order) data layout.  Axis bookkeeping follows the
``numpy.tensordot`` convention: the result carries the unpaired axes of the
first argument followed by those of the second.
"""

import numpy as np
import scipy.linalg


class RankDeficientError(np.linalg.LinAlgError):
    """Raised when a least-squares system does not have full column rank."""


def as_complex(a):
    """Return `a` as a C-contiguous complex128 array."""
    return np.ascontiguousarray(np.asarray(a, dtype=np.complex128))


def contract(a, b, pairs):
    """Contract tensors `a` and `b` over the given axis pairs.

    Parameters
    ----------
    a, b : ndarray
        Input tensors.
    pairs : list of (int, int)
        Pairs ``(axis_of_a, axis_of_b)``; paired axes must have equal extents.

    Returns
    -------
    ndarray with the unpaired axes of `a` followed by those of `b`.
    """
    a = as_complex(a)
    b = as_complex(b)
    if pairs:
        ax_a, ax_b = zip(*pairs)
    else:
        ax_a, ax_b = (), ()
    for i, j in pairs:
        if a.shape[i] != b.shape[j]:
            raise ValueError(
                f"axis {i} of a (dim {a.shape[i]}) does not match "
                f"axis {j} of b (dim {b.shape[j]})"
            )
    return np.tensordot(a, b, axes=(list(ax_a), list(ax_b)))


def svd_truncate(m, max_rank=None, tol=0.0):
    """Truncated SVD of a matrix.

    Singular values below ``tol * max(S)`` are dropped, and at most
    `max_rank` values are kept.  Returns ``(U, S, V, discarded_weight)``
    with ``U @ diag(S) @ V`` approximating `m` and `discarded_weight` the
    sum of squared discarded singular values.  A rank-0 input yields empty
    factors.
    """
    m = as_complex(m)
    if m.ndim != 2:
        raise ValueError("svd_truncate expects a matrix")
    if min(m.shape) == 0:
        return (np.zeros((m.shape[0], 0), dtype=complex), np.zeros(0),
                np.zeros((0, m.shape[1]), dtype=complex), 0.0)
    u, s, vh = scipy.linalg.svd(m, full_matrices=False, lapack_driver="gesvd")
    keep = len(s)
    if s[0] > 0.0 and tol > 0.0:
        keep = int(np.count_nonzero(s > tol * s[0]))
    if max_rank is not None:
        keep = min(keep, max_rank)
    discarded = float(np.sum(s[keep:] ** 2))
    return u[:, :keep], s[:keep], vh[:keep, :], discarded


def qr_column_pivoted(m, tol=1e-12):
    """Rank-revealing QR with column pivoting.

    The numerical rank counts diagonal entries of R exceeding
    ``tol * |R[0, 0]|``.  Returns ``(rank, pivot_columns, Q, R)`` where
    `pivot_columns` lists, in pivot order, the input columns that form a
    spanning set.
    """
    m = as_complex(m)
    if m.ndim != 2:
        raise ValueError("qr_column_pivoted expects a matrix")
    if m.size == 0 or not np.any(m):
        return 0, [], np.zeros((m.shape[0], 0), dtype=complex), \
            np.zeros((0, m.shape[1]), dtype=complex)
    q, r, piv = scipy.linalg.qr(m, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        return 0, [], q[:, :0], r[:0, :]
    rank = int(np.count_nonzero(diag > tol * diag[0]))
    return rank, [int(p) for p in piv[:rank]], q, r


def solve_least_squares(a, b, rank_tol=1e-12):
    """Solve ``min ||A X - B||_F`` for a full-column-rank A.

    Returns ``(X, residual)`` with `residual` the Frobenius norm of
    ``A X - B``.  Raises :class:`RankDeficientError` when A is rank
    deficient at `rank_tol` (relative to its largest singular value).
    """
    a = as_complex(a)
    b = as_complex(b)
    if b.ndim == 1:
        b = b[:, None]
    x, _, rank, sv = scipy.linalg.lstsq(a, b, cond=rank_tol)
    if rank < a.shape[1]:
        raise RankDeficientError(
            f"matrix has numerical rank {rank} < {a.shape[1]} columns")
    residual = float(np.linalg.norm(a @ x - b))
    return x, residual
