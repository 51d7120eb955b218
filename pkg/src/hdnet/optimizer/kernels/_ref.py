"""Pure-numpy kernel implementations (fallback backend)."""

from __future__ import annotations

import numpy as np

_CHUNK_ROWS = 16384


def _objective_chunk(kd, deltas: np.ndarray) -> np.ndarray:
    a = deltas / kd.n[None, :]
    d1 = kd.sum_bs2user[None, :] + a @ kd.user2user
    d2 = a @ kd.bs2user + kd.sum_user2user[None, :]
    u1 = kd.sum_bs2bs[None, :] + a @ kd.user2bs
    u2 = a @ kd.bs2bs + kd.sum_user2bs[None, :]

    cfu = kd.rsi_user + kd.sigma2
    cb = kd.rsi_bs[None, :] + kd.sigma2
    m_of = kd.cell_of_user
    l_u1_fd = np.log2(cb + u1)[:, m_of]
    l_u2_fd = np.log2(cb + u2)[:, m_of]
    l_u2_hd = np.log2(kd.sigma2 + u2)[:, m_of]

    r_fd = (
        2.0 * (kd.log2_pd + kd.log2_pu)[None, :]
        - np.log2(cfu + d1)
        - np.log2(cfu + d2)
        - l_u1_fd
        - l_u2_fd
    )
    r_hd = (
        (kd.log2_pd + kd.log2_pu)[None, :]
        - np.log2(kd.sigma2 + d1)
        - l_u2_hd
    )
    fd_mask = kd.rank_of_user[None, :] < deltas[:, m_of]
    per_user = np.where(fd_mask, r_fd, r_hd) * kd.omega[m_of][None, :]
    return per_user.sum(axis=1)


def objective_batch(kd, deltas: np.ndarray) -> np.ndarray:
    deltas = np.atleast_2d(deltas)
    out = np.empty(len(deltas))
    for start in range(0, len(deltas), _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, len(deltas))
        out[start:stop] = _objective_chunk(kd, deltas[start:stop])
    return out


def exhaustive_scan(kd) -> tuple:
    """Chunked lexicographic lattice scan; first max wins (lex-smallest)."""
    shape = tuple(int(c) + 1 for c in kd.n)
    total = int(np.prod([int(s) for s in shape], dtype=object))
    best_val = -np.inf
    best_delta = None
    for start in range(0, total, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, total)
        idx = np.arange(start, stop)
        deltas = np.stack(np.unravel_index(idx, shape), axis=1).astype(np.int64)
        vals = _objective_chunk(kd, deltas)
        i = int(vals.argmax())
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_delta = deltas[i].copy()
    return best_delta, best_val
