"""Finite-instance rate model: data container, extraction and benchmarks.

An instance holds, for M cells, the per-user average received powers and
the cross-cell interference matrices. Interference from users is the
eps-scaled BS interference (eps = P_u / P_tier(source cell)) -- that
assumption is used in the optimization instance ONLY; the achieved-rate
simulator below recomputes user interference from true positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..montecarlo import MIN_LINK_DISTANCE, Snapshot
from ..params import NetworkParams


@dataclass
class OptimizerInstance:
    """Per-cell user powers and cross-cell interference (all Watts, Hz)."""

    n: np.ndarray  # (M,) users per cell
    tier: np.ndarray  # (M,) 1|2 (reporting / baselines)
    omega: np.ndarray  # (M,) W / N_m
    rsi_bs: np.ndarray  # (M,)
    rsi_user: float
    sigma2: float
    p_down: np.ndarray  # (U,) sorted nonincreasing within each cell
    p_up: np.ndarray  # (U,)
    user_start: np.ndarray  # (M+1,) slice boundaries into the user axis
    bs2user: np.ndarray  # (M, U) I_{n,m,u}; zero for n == cell(u)
    user2user: np.ndarray  # (M, U) I'_{n,m,u}
    bs2bs: np.ndarray  # (M, M) I_{n,m,0}; zero diagonal
    user2bs: np.ndarray  # (M, M) I'_{n,m,0}
    bs_index: np.ndarray | None = None  # provenance: snapshot BS ids
    user_index: np.ndarray | None = None  # provenance: snapshot user ids

    def __post_init__(self):
        m = len(self.n)
        u = len(self.p_down)
        assert self.user_start.shape == (m + 1,) and self.user_start[-1] == u
        for mm in range(m):
            seg = self.p_down[self.user_start[mm]:self.user_start[mm + 1]]
            if np.any(np.diff(seg) > 1e-12 * seg[:-1]):
                raise ValueError(f"p_down must be nonincreasing within cell {mm}")
        if np.any(self.bs2user < 0) or np.any(self.bs2bs < 0):
            raise ValueError("interference entries must be nonnegative")
        if np.any(np.diag(self.bs2bs) != 0):
            raise ValueError("self-cell interference entries must be absent")

    @property
    def m_cells(self) -> int:
        return len(self.n)

    @property
    def n_users(self) -> int:
        return len(self.p_down)

    def cell_of_user(self) -> np.ndarray:
        return np.repeat(np.arange(self.m_cells), np.diff(self.user_start))

    def rank_of_user(self) -> np.ndarray:
        return np.concatenate([np.arange(c) for c in np.diff(self.user_start)])

    def users_of(self, m: int) -> slice:
        return slice(int(self.user_start[m]), int(self.user_start[m + 1]))

    def search_space(self) -> int:
        return int(np.prod([int(c) + 1 for c in self.n], dtype=object))


def extract_instance(snapshot: Snapshot, params: NetworkParams) -> OptimizerInstance:
    """Build the finite rate-model instance from a realized topology.

    Powers are fading-averaged P * d^-alpha; user-sourced interference uses
    the eps ratio of the source cell; cells without users are dropped.
    """
    if snapshot.n_users == 0:
        raise ValueError("snapshot has no users")
    serving = snapshot.serving_bs
    occupied = np.unique(serving)
    m_cells = len(occupied)
    tier = snapshot.bs_tier[occupied]
    bs_power = np.where(tier == 1, params.p1, params.p2)

    user_idx_parts = []
    user_start = [0]
    p_down_parts, p_up_parts = [], []
    for b in occupied:
        users = np.flatnonzero(serving == b)
        rx = snapshot.serving_rx[users]
        order = np.argsort(-rx, kind="stable")
        users = users[order]
        user_idx_parts.append(users)
        p_down_parts.append(rx[order])
        p_up_parts.append(params.pu * snapshot.serving_dist[users] ** (-params.alpha))
        user_start.append(user_start[-1] + len(users))
    user_index = np.concatenate(user_idx_parts)
    p_down = np.concatenate(p_down_parts)
    p_up = np.concatenate(p_up_parts)
    user_start = np.array(user_start, dtype=np.int64)
    n = np.diff(user_start)

    # BS -> victim path gains
    bs_pos = snapshot.bs_pos[occupied]
    d_bs_user = np.maximum(
        np.hypot(
            bs_pos[:, None, 0] - snapshot.user_pos[user_index][None, :, 0],
            bs_pos[:, None, 1] - snapshot.user_pos[user_index][None, :, 1],
        ),
        MIN_LINK_DISTANCE,
    )
    bs2user = bs_power[:, None] * d_bs_user ** (-params.alpha)
    d_bs_bs = np.maximum(
        np.hypot(
            bs_pos[:, None, 0] - bs_pos[None, :, 0],
            bs_pos[:, None, 1] - bs_pos[None, :, 1],
        ),
        MIN_LINK_DISTANCE,
    )
    bs2bs = bs_power[:, None] * d_bs_bs ** (-params.alpha)
    np.fill_diagonal(bs2bs, 0.0)
    cell_of = np.repeat(np.arange(m_cells), n)
    bs2user[cell_of[None, :] == np.arange(m_cells)[:, None]] = 0.0

    eps = params.pu / bs_power  # per source cell
    return OptimizerInstance(
        n=n,
        tier=tier,
        omega=params.bandwidth_hz / n,
        rsi_bs=params.beta * bs_power,
        rsi_user=params.beta * params.pu,
        sigma2=params.sigma2,
        p_down=p_down,
        p_up=p_up,
        user_start=user_start,
        bs2user=bs2user,
        user2user=eps[:, None] * bs2user,
        bs2bs=bs2bs,
        user2bs=eps[:, None] * bs2bs,
        bs_index=occupied,
        user_index=user_index,
    )


def synthetic_instance(
    seed: int,
    n_per_cell=None,
    m_cells: int = 5,
    n_max: int = 4,
    area_side: float = 1500.0,
    params: NetworkParams | None = None,
) -> OptimizerInstance:
    """Seeded geometry-backed instance for tests, fuzzing and benchmarks.

    Cells are spread on a jittered grid; each cell's users sit close to
    their BS so serving links dominate and the sum rate stays positive.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(7,)))
    p = params or NetworkParams.defaults()
    if n_per_cell is None:
        n_per_cell = rng.integers(1, n_max + 1, size=m_cells)
    n = np.asarray(n_per_cell, dtype=np.int64)
    m_cells = len(n)

    side = max(int(math.ceil(math.sqrt(m_cells))), 1)
    cell_w = area_side / side
    centers = np.array(
        [
            (
                (i % side + 0.5) * cell_w - area_side / 2,
                (i // side + 0.5) * cell_w - area_side / 2,
            )
            for i in range(m_cells)
        ]
    )
    bs_pos = centers + rng.uniform(-0.15 * cell_w, 0.15 * cell_w, size=(m_cells, 2))
    tier = rng.choice([1, 2], size=m_cells, p=[0.3, 0.7])
    bs_power = np.where(tier == 1, p.p1, p.p2)

    user_pos_parts = []
    for m in range(m_cells):
        radius = rng.uniform(20.0, 0.3 * cell_w, size=n[m])
        angle = rng.uniform(0.0, 2 * math.pi, size=n[m])
        user_pos_parts.append(
            bs_pos[m] + np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1)
        )
    user_pos = np.concatenate(user_pos_parts)
    user_start = np.concatenate([[0], np.cumsum(n)]).astype(np.int64)
    cell_of = np.repeat(np.arange(m_cells), n)

    d_serv = np.maximum(
        np.hypot(*(user_pos - bs_pos[cell_of]).T), MIN_LINK_DISTANCE
    )
    p_down = bs_power[cell_of] * d_serv ** (-p.alpha)
    p_up = p.pu * d_serv ** (-p.alpha)
    # sort users within cells by p_down descending
    order = np.concatenate(
        [
            user_start[m] + np.argsort(-p_down[user_start[m]:user_start[m + 1]], kind="stable")
            for m in range(m_cells)
        ]
    )
    p_down, p_up, user_pos = p_down[order], p_up[order], user_pos[order]

    d_bs_user = np.maximum(
        np.hypot(
            bs_pos[:, None, 0] - user_pos[None, :, 0],
            bs_pos[:, None, 1] - user_pos[None, :, 1],
        ),
        MIN_LINK_DISTANCE,
    )
    bs2user = bs_power[:, None] * d_bs_user ** (-p.alpha)
    bs2user[cell_of[None, :] == np.arange(m_cells)[:, None]] = 0.0
    d_bs_bs = np.maximum(
        np.hypot(
            bs_pos[:, None, 0] - bs_pos[None, :, 0],
            bs_pos[:, None, 1] - bs_pos[None, :, 1],
        ),
        MIN_LINK_DISTANCE,
    )
    bs2bs = bs_power[:, None] * d_bs_bs ** (-p.alpha)
    np.fill_diagonal(bs2bs, 0.0)
    eps = p.pu / bs_power
    return OptimizerInstance(
        n=n,
        tier=tier,
        omega=p.bandwidth_hz / n,
        rsi_bs=p.beta * bs_power,
        rsi_user=p.beta * p.pu,
        sigma2=p.sigma2,
        p_down=p_down,
        p_up=p_up,
        user_start=user_start,
        bs2user=bs2user,
        user2user=eps[:, None] * bs2user,
        bs2bs=bs2bs,
        user2bs=eps[:, None] * bs2bs,
    )


FIG2_USER_COUNTS = (6, 6, 8, 3, 8, 4, 4, 1, 1, 2, 1, 1, 1)


def fig2_family_instance(seed: int) -> OptimizerInstance:
    """13-cell instance family with the published per-cell user counts."""
    return synthetic_instance(seed, n_per_cell=FIG2_USER_COUNTS, area_side=2000.0)


# ---- fixed-duplex baselines ----------------------------------------------


def baseline_deltas(inst: OptimizerInstance) -> dict:
    """The four fixed duplex-mode sets used as benchmarks."""
    zeros = np.zeros(inst.m_cells, dtype=np.int64)
    full = inst.n.copy()
    return {
        "all_hd": zeros,
        "all_fd": full,
        "tier1_fd": np.where(inst.tier == 1, inst.n, 0),
        "tier2_fd": np.where(inst.tier == 2, inst.n, 0),
    }


class AchievedRateSimulator:
    """Per-slot achieved sum rate with true per-user interference.

    Round-robin phases are drawn once (from the given seed) and shared by
    every duplex assignment evaluated on this snapshot, so scheme
    comparisons are paired. Rates follow the average-power model: no
    small-scale fading, log2 of per-channel SINR, W/2 per channel.
    """

    def __init__(
        self,
        snapshot: Snapshot,
        params: NetworkParams,
        inst: OptimizerInstance,
        n_slots: int,
        seed: int,
        slot_chunk: int = 256,
    ):
        if inst.user_index is None:
            raise ValueError("instance must come from extract_instance (needs positions)")
        self.inst = inst
        self.params = params
        self.n_slots = n_slots
        self.slot_chunk = slot_chunk
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(2,)))
        self.offsets = rng.integers(0, inst.n)

        upos = snapshot.user_pos[inst.user_index]
        bpos = snapshot.bs_pos[inst.bs_index]
        d_uu = np.maximum(
            np.hypot(
                upos[:, None, 0] - upos[None, :, 0],
                upos[:, None, 1] - upos[None, :, 1],
            ),
            MIN_LINK_DISTANCE,
        )
        self.pl_uu = params.pu * d_uu ** (-params.alpha)  # true user->user power
        d_ub = np.maximum(
            np.hypot(
                upos[:, None, 0] - bpos[None, :, 0],
                upos[:, None, 1] - bpos[None, :, 1],
            ),
            MIN_LINK_DISTANCE,
        )
        self.pl_ub = params.pu * d_ub ** (-params.alpha)  # true user->BS power

    def sum_rates(self, deltas: list) -> list:
        """Average per-slot sum rate (bits/s) for each duplex assignment."""
        inst = self.inst
        m = inst.m_cells
        w_chan = self.params.bandwidth_hz / 2.0
        not_self = ~np.eye(m, dtype=bool)
        totals = [0.0 for _ in deltas]
        for start in range(0, self.n_slots, self.slot_chunk):
            chunk = min(self.slot_chunk, self.n_slots - start)
            slots = np.arange(start, start + chunk)
            sched_rank = (self.offsets[None, :] + slots[:, None]) % inst.n[None, :]
            sched = inst.user_start[:-1][None, :] + sched_rank  # (T, M) flat user ids

            # gathers shared by all schemes
            bs_to_sched = inst.bs2user[:, sched].transpose(1, 0, 2)  # (T, Msrc, Mvict)
            uu = self.pl_uu[sched[:, :, None], sched[:, None, :]]  # (T, Msrc, Mvict)
            ub = self.pl_ub[sched]  # (T, Msrc, Mvict) user -> victim BS
            uu = uu * not_self[None, :, :]
            ub = ub * not_self[None, :, :]

            pd = inst.p_down[sched]
            pu_ = inst.p_up[sched]
            log_pd = np.log2(pd)
            log_pu = np.log2(pu_)

            bs_sum = (bs_to_sched).sum(axis=1)  # ch1 DL BS interference (T, Mv)
            uu_sum = uu.sum(axis=1)
            ub_sum = ub.sum(axis=1)
            c_sum = inst.bs2bs.sum(axis=0)[None, :]  # static BS->BS (1, M)

            for i, delta in enumerate(deltas):
                fd_mode = sched_rank < np.asarray(delta)[None, :]  # (T, M)
                fd_src = fd_mode[:, :, None]
                i1d = bs_sum + (uu * fd_src).sum(axis=1)
                i2d = (bs_to_sched * fd_src).sum(axis=1) + uu_sum
                i1u = c_sum + (ub * fd_src).sum(axis=1)
                i2u = (inst.bs2bs[None, :, :] * fd_src).sum(axis=1) + ub_sum

                rsi_u = inst.rsi_user
                rsi_b = inst.rsi_bs[None, :]
                s2 = inst.sigma2
                r_fd = (
                    (log_pd - np.log2(rsi_u + s2 + i1d))
                    + (log_pd - np.log2(rsi_u + s2 + i2d))
                    + (log_pu - np.log2(rsi_b + s2 + i1u))
                    + (log_pu - np.log2(rsi_b + s2 + i2u))
                )
                r_hd = (log_pd - np.log2(s2 + i1d)) + (log_pu - np.log2(s2 + i2u))
                rate = np.where(fd_mode, r_fd, r_hd) * w_chan
                totals[i] += float(rate.sum())
        return [t / self.n_slots for t in totals]
