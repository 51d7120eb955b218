# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the duplex optimizer hot loops.

objective_batch recomputes the objective per candidate row. exhaustive_scan
walks the delta lattice in lexicographic order (last cell fastest) with
two levels of hoisted partial sums: denominator aggregates excluding the
last two cells are rebuilt only on odometer carries, so the per-step work
is dominated by the O(U) log evaluations. Bases are always rebuilt from
scratch on a carry (never incremented), keeping the scan free of float
drift.
"""

from libc.math cimport INFINITY, log2

import numpy as np


cdef inline double _eval_delta(
    const double[::1] omega,
    const long long[::1] user_start,
    const double[::1] log2_pd,
    const double[::1] log2_pu,
    const double[:, ::1] bs2user,
    const double[:, ::1] user2user,
    const double[:, ::1] bs2bs,
    const double[:, ::1] user2bs,
    const double[::1] rsi_bs,
    double cfu,
    double sigma2,
    const long long[::1] delta,
    double a_last,
    const double[::1] b1d1,
    const double[::1] b1d2,
    const double[::1] b1u1,
    const double[::1] b1u2,
    Py_ssize_t last,
) nogil:
    """Objective given base-1 aggregates (cells 0..last-1 folded in)."""
    cdef Py_ssize_t m_cells = omega.shape[0]
    cdef Py_ssize_t m, j
    cdef long long dm, rank
    cdef double val = 0.0
    cdef double u1m, u2m, lu1, lu2, lu2h, d1, d2, cell_fd, cell_hd
    for m in range(m_cells):
        u1m = b1u1[m] + a_last * user2bs[last, m]
        u2m = b1u2[m] + a_last * bs2bs[last, m]
        lu1 = log2(rsi_bs[m] + sigma2 + u1m)
        lu2 = log2(rsi_bs[m] + sigma2 + u2m)
        lu2h = log2(sigma2 + u2m)
        dm = delta[m]
        cell_fd = 0.0
        cell_hd = 0.0
        for j in range(user_start[m], user_start[m + 1]):
            rank = j - user_start[m]
            d1 = b1d1[j] + a_last * user2user[last, j]
            d2 = b1d2[j] + a_last * bs2user[last, j]
            if rank < dm:
                cell_fd += (
                    2.0 * (log2_pd[j] + log2_pu[j])
                    - log2(cfu + d1) - log2(cfu + d2) - lu1 - lu2
                )
            else:
                cell_hd += log2_pd[j] + log2_pu[j] - log2(sigma2 + d1) - lu2h
        val += omega[m] * (cell_fd + cell_hd)
    return val


cdef inline void _rebuild_base(
    const double[:, ::1] bs2user,
    const double[:, ::1] user2user,
    const double[:, ::1] bs2bs,
    const double[:, ::1] user2bs,
    const double[::1] sum_bs2user,
    const double[::1] sum_user2user,
    const double[::1] sum_bs2bs,
    const double[::1] sum_user2bs,
    const double[::1] a,
    Py_ssize_t upto,
    double[::1] d1,
    double[::1] d2,
    double[::1] u1,
    double[::1] u2,
) nogil:
    """Aggregates with cells 0..upto-1 folded in at their current activity."""
    cdef Py_ssize_t n_users = sum_bs2user.shape[0]
    cdef Py_ssize_t m_cells = sum_bs2bs.shape[0]
    cdef Py_ssize_t i, src
    cdef double w
    for i in range(n_users):
        d1[i] = sum_bs2user[i]
        d2[i] = sum_user2user[i]
    for i in range(m_cells):
        u1[i] = sum_bs2bs[i]
        u2[i] = sum_user2bs[i]
    for src in range(upto):
        w = a[src]
        if w == 0.0:
            continue
        for i in range(n_users):
            d1[i] += w * user2user[src, i]
            d2[i] += w * bs2user[src, i]
        for i in range(m_cells):
            u1[i] += w * user2bs[src, i]
            u2[i] += w * bs2bs[src, i]


cdef inline void _extend_base(
    const double[:, ::1] bs2user,
    const double[:, ::1] user2user,
    const double[:, ::1] bs2bs,
    const double[:, ::1] user2bs,
    const double[::1] a,
    Py_ssize_t src_lo,
    Py_ssize_t src_hi,
    const double[::1] in_d1,
    const double[::1] in_d2,
    const double[::1] in_u1,
    const double[::1] in_u2,
    double[::1] out_d1,
    double[::1] out_d2,
    double[::1] out_u1,
    double[::1] out_u2,
) nogil:
    """out = in + contributions of cells src_lo..src_hi-1."""
    cdef Py_ssize_t n_users = in_d1.shape[0]
    cdef Py_ssize_t m_cells = in_u1.shape[0]
    cdef Py_ssize_t i, src
    cdef double w
    for i in range(n_users):
        out_d1[i] = in_d1[i]
        out_d2[i] = in_d2[i]
    for i in range(m_cells):
        out_u1[i] = in_u1[i]
        out_u2[i] = in_u2[i]
    for src in range(src_lo, src_hi):
        w = a[src]
        if w == 0.0:
            continue
        for i in range(n_users):
            out_d1[i] += w * user2user[src, i]
            out_d2[i] += w * bs2user[src, i]
        for i in range(m_cells):
            out_u1[i] += w * user2bs[src, i]
            out_u2[i] += w * bs2bs[src, i]


def objective_batch(
    const double[::1] omega,
    const long long[::1] n,
    const long long[::1] user_start,
    const double[::1] log2_pd,
    const double[::1] log2_pu,
    const double[:, ::1] bs2user,
    const double[:, ::1] user2user,
    const double[:, ::1] bs2bs,
    const double[:, ::1] user2bs,
    const double[::1] sum_bs2user,
    const double[::1] sum_user2user,
    const double[::1] sum_bs2bs,
    const double[::1] sum_user2bs,
    const double[::1] rsi_bs,
    double rsi_user,
    double sigma2,
    const long long[:, ::1] deltas,
    double[::1] out,
):
    cdef Py_ssize_t m_cells = omega.shape[0]
    cdef Py_ssize_t n_users = log2_pd.shape[0]
    cdef Py_ssize_t n_rows = deltas.shape[0]
    cdef Py_ssize_t row, m
    cdef double cfu = rsi_user + sigma2
    a_arr = np.zeros(m_cells)
    drow_arr = np.zeros(m_cells, dtype=np.int64)
    d1_arr = np.zeros(n_users)
    d2_arr = np.zeros(n_users)
    u1_arr = np.zeros(m_cells)
    u2_arr = np.zeros(m_cells)
    cdef double[::1] a = a_arr
    cdef long long[::1] drow = drow_arr
    cdef double[::1] d1 = d1_arr
    cdef double[::1] d2 = d2_arr
    cdef double[::1] u1 = u1_arr
    cdef double[::1] u2 = u2_arr
    cdef Py_ssize_t last = m_cells - 1
    with nogil:
        for row in range(n_rows):
            for m in range(m_cells):
                drow[m] = deltas[row, m]
                a[m] = deltas[row, m] / (<double> n[m])
            _rebuild_base(
                bs2user, user2user, bs2bs, user2bs,
                sum_bs2user, sum_user2user, sum_bs2bs, sum_user2bs,
                a, last, d1, d2, u1, u2,
            )
            out[row] = _eval_delta(
                omega, user_start, log2_pd, log2_pu,
                bs2user, user2user, bs2bs, user2bs, rsi_bs,
                cfu, sigma2, drow, a[last], d1, d2, u1, u2, last,
            )


def exhaustive_scan(
    const double[::1] omega,
    const long long[::1] n,
    const long long[::1] user_start,
    const double[::1] log2_pd,
    const double[::1] log2_pu,
    const double[:, ::1] bs2user,
    const double[:, ::1] user2user,
    const double[:, ::1] bs2bs,
    const double[:, ::1] user2bs,
    const double[::1] sum_bs2user,
    const double[::1] sum_user2user,
    const double[::1] sum_bs2bs,
    const double[::1] sum_user2bs,
    const double[::1] rsi_bs,
    double rsi_user,
    double sigma2,
    long long[::1] best_delta_out,
):
    cdef Py_ssize_t m_cells = omega.shape[0]
    cdef Py_ssize_t n_users = log2_pd.shape[0]
    cdef double cfu = rsi_user + sigma2
    cdef Py_ssize_t last = m_cells - 1
    cdef Py_ssize_t base1_upto = last            # base1 folds cells 0..last-1
    cdef Py_ssize_t base0_upto = last - 1 if last >= 1 else 0

    delta_arr = np.zeros(m_cells, dtype=np.int64)
    a_arr = np.zeros(m_cells)
    b0d1_arr = np.zeros(n_users)
    b0d2_arr = np.zeros(n_users)
    b0u1_arr = np.zeros(m_cells)
    b0u2_arr = np.zeros(m_cells)
    b1d1_arr = np.zeros(n_users)
    b1d2_arr = np.zeros(n_users)
    b1u1_arr = np.zeros(m_cells)
    b1u2_arr = np.zeros(m_cells)
    cdef long long[::1] delta = delta_arr
    cdef double[::1] a = a_arr
    cdef double[::1] b0d1 = b0d1_arr
    cdef double[::1] b0d2 = b0d2_arr
    cdef double[::1] b0u1 = b0u1_arr
    cdef double[::1] b0u2 = b0u2_arr
    cdef double[::1] b1d1 = b1d1_arr
    cdef double[::1] b1d2 = b1d2_arr
    cdef double[::1] b1u1 = b1u1_arr
    cdef double[::1] b1u2 = b1u2_arr

    cdef double best = -INFINITY
    cdef double val
    cdef Py_ssize_t i, pos
    cdef bint running = True

    with nogil:
        _rebuild_base(
            bs2user, user2user, bs2bs, user2bs,
            sum_bs2user, sum_user2user, sum_bs2bs, sum_user2bs,
            a, base0_upto, b0d1, b0d2, b0u1, b0u2,
        )
        _extend_base(
            bs2user, user2user, bs2bs, user2bs, a, base0_upto, base1_upto,
            b0d1, b0d2, b0u1, b0u2, b1d1, b1d2, b1u1, b1u2,
        )
        while running:
            val = _eval_delta(
                omega, user_start, log2_pd, log2_pu,
                bs2user, user2user, bs2bs, user2bs, rsi_bs,
                cfu, sigma2, delta, a[last], b1d1, b1d2, b1u1, b1u2, last,
            )
            if val > best:  # lexicographic scan: strict > keeps lex-smallest tie
                best = val
                for i in range(m_cells):
                    best_delta_out[i] = delta[i]
            # odometer increment, last axis fastest (lexicographic order)
            pos = last
            while pos >= 0:
                if delta[pos] < n[pos]:
                    delta[pos] += 1
                    a[pos] = delta[pos] / (<double> n[pos])
                    break
                delta[pos] = 0
                a[pos] = 0.0
                pos -= 1
            if pos < 0:
                running = False
            elif pos == last:
                pass  # inner coordinate only; bases unchanged
            elif pos == last - 1:
                _extend_base(
                    bs2user, user2user, bs2bs, user2bs, a, base0_upto, base1_upto,
                    b0d1, b0d2, b0u1, b0u2, b1d1, b1d2, b1u1, b1u2,
                )
            else:
                _rebuild_base(
                    bs2user, user2user, bs2bs, user2bs,
                    sum_bs2user, sum_user2user, sum_bs2bs, sum_user2bs,
                    a, base0_upto, b0d1, b0d2, b0u1, b0u2,
                )
                _extend_base(
                    bs2user, user2user, bs2bs, user2bs, a, base0_upto, base1_upto,
                    b0d1, b0d2, b0u1, b0u2, b1d1, b1d2, b1u1, b1u2,
                )
    return best
