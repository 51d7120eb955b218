"""Ground-truth Monte Carlo simulator.

Samples PPP topologies on a square window, applies the max-received-power
association and threshold-based duplex policy exactly, then measures the
typical user (the one nearest the window center, required to lie in the
central 60% sub-window) over fading/scheduling slots. Interference is
assembled per slot from first principles: every non-tagged cell with at
least one associated user schedules one of them round-robin; a cell whose
scheduled user is full-duplex radiates BS+user power on both channels,
while a half-duplex cell radiates BS power on channel 1 and user power on
channel 2. Residual self-interference beta*P is added on full-duplex
receive links. Small-scale fading is exp(1), redrawn i.i.d. per slot, per
link and per channel.

Everything is deterministic given the snapshot seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import CcdfCurve, SpectralEfficiencyReport
from .params import DerivedScales, NetworkParams

MIN_LINK_DISTANCE = 1e-3  # meters; guards the d^-alpha singularity
TYPICAL_WINDOW_FRACTION = 0.6  # typical user must lie in the central 60% box
_Z95 = 1.959963984540054

_SLOT_CHUNK = 256


@dataclass
class Snapshot:
    """One realized topology with its association map and duplex flags."""

    region_side: float  # meters
    bs_pos: np.ndarray  # (n_bs, 2), tier-1 BSs first
    bs_tier: np.ndarray  # (n_bs,) 1|2
    user_pos: np.ndarray  # (n_users, 2)
    serving_bs: np.ndarray  # (n_users,) index into bs_pos
    serving_dist: np.ndarray  # (n_users,) meters, clipped at MIN_LINK_DISTANCE
    serving_rx: np.ndarray  # (n_users,) average downlink received power (W)
    fd_flag: np.ndarray  # (n_users,) bool
    seed: int
    resample_attempts: int = 0

    @property
    def n_users(self) -> int:
        return len(self.user_pos)

    def serving_tier(self) -> np.ndarray:
        return self.bs_tier[self.serving_bs]

    def reclassified(self, params: NetworkParams) -> "Snapshot":
        """Same topology and association, duplex flags from new thresholds.

        Reuses positions and the fading seed, so sweeps over gamma are
        paired (common random numbers)."""
        gamma = np.where(self.serving_tier() == 1, params.gamma1, params.gamma2)
        return Snapshot(
            region_side=self.region_side,
            bs_pos=self.bs_pos,
            bs_tier=self.bs_tier,
            user_pos=self.user_pos,
            serving_bs=self.serving_bs,
            serving_dist=self.serving_dist,
            serving_rx=self.serving_rx,
            fd_flag=self.serving_rx >= gamma,
            seed=self.seed,
            resample_attempts=self.resample_attempts,
        )


def sample_snapshot(params: NetworkParams, region_side: float, seed: int) -> Snapshot:
    """Draw one topology (meters). Resamples with a sub-seed if no BS lands."""
    min_lam = min(params.lambda1, params.lambda2)
    if region_side < 5.0 / math.sqrt(min_lam) - 1e-9:
        raise ValueError(
            f"region side {region_side:.0f} m too small for the sparsest tier; "
            f"need >= {5.0 / math.sqrt(min_lam):.0f} m"
        )
    area = region_side * region_side
    attempt = 0
    while True:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(attempt,)))
        n1 = rng.poisson(params.lambda1 * area)
        n2 = rng.poisson(params.lambda2 * area)
        n_u = rng.poisson(params.lambda_u * area)
        if n1 + n2 > 0:
            break
        attempt += 1
    half = region_side / 2.0
    bs_pos = rng.uniform(-half, half, size=(n1 + n2, 2))
    bs_tier = np.concatenate([np.ones(n1, dtype=np.int64), np.full(n2, 2, dtype=np.int64)])
    user_pos = rng.uniform(-half, half, size=(n_u, 2))

    bs_power = np.where(bs_tier == 1, params.p1, params.p2)
    if n_u:
        diff = user_pos[:, None, :] - bs_pos[None, :, :]
        dist = np.maximum(np.sqrt((diff * diff).sum(axis=2)), MIN_LINK_DISTANCE)
        rx = bs_power[None, :] * dist ** (-params.alpha)
        serving = rx.argmax(axis=1)  # ties: first (tier-1 BSs ordered first)
        rows = np.arange(n_u)
        serving_dist = dist[rows, serving]
        serving_rx = rx[rows, serving]
    else:
        serving = np.zeros(0, dtype=np.int64)
        serving_dist = np.zeros(0)
        serving_rx = np.zeros(0)
    gamma = np.where(bs_tier[serving] == 1, params.gamma1, params.gamma2)
    return Snapshot(
        region_side=region_side,
        bs_pos=bs_pos,
        bs_tier=bs_tier,
        user_pos=user_pos,
        serving_bs=serving,
        serving_dist=serving_dist,
        serving_rx=serving_rx,
        fd_flag=serving_rx >= gamma,
        seed=seed,
        resample_attempts=attempt,
    )


@dataclass
class SinrSamples:
    """Array-backed collection of labeled SINR measurements.

    One row per (slot, channel, link); sinr equals signal divided by the
    interference breakdown (i_bs + i_user + rsi + noise) exactly.
    """

    seed: np.ndarray
    slot: np.ndarray
    channel: np.ndarray
    duplex: np.ndarray  # "FD"/"HD"
    link: np.ndarray  # "D"/"U"
    tier: np.ndarray
    signal: np.ndarray
    i_bs: np.ndarray
    i_user: np.ndarray
    rsi: np.ndarray
    noise: np.ndarray

    @property
    def sinr(self) -> np.ndarray:
        return self.signal / (self.i_bs + self.i_user + self.rsi + self.noise)

    @property
    def sinr_db(self) -> np.ndarray:
        return 10.0 * np.log10(self.sinr)

    def __len__(self) -> int:
        return len(self.signal)

    def select(self, channel=None, duplex=None, link=None, tier=None) -> "SinrSamples":
        mask = np.ones(len(self), dtype=bool)
        if channel is not None:
            mask &= self.channel == channel
        if duplex is not None:
            mask &= self.duplex == duplex
        if link is not None:
            mask &= self.link == link
        if tier is not None and tier != "mixture":
            mask &= self.tier == tier
        return SinrSamples(**{k: getattr(self, k)[mask] for k in _SAMPLE_FIELDS})

    @staticmethod
    def concat(parts: list) -> "SinrSamples":
        parts = [p for p in parts if len(p)]
        if not parts:
            return _empty_samples()
        return SinrSamples(
            **{k: np.concatenate([getattr(p, k) for p in parts]) for k in _SAMPLE_FIELDS}
        )


_SAMPLE_FIELDS = (
    "seed", "slot", "channel", "duplex", "link", "tier",
    "signal", "i_bs", "i_user", "rsi", "noise",
)


def _empty_samples() -> SinrSamples:
    return SinrSamples(
        seed=np.zeros(0, dtype=np.int64),
        slot=np.zeros(0, dtype=np.int64),
        channel=np.zeros(0, dtype=np.int64),
        duplex=np.zeros(0, dtype="<U2"),
        link=np.zeros(0, dtype="<U1"),
        tier=np.zeros(0, dtype=np.int64),
        signal=np.zeros(0),
        i_bs=np.zeros(0),
        i_user=np.zeros(0),
        rsi=np.zeros(0),
        noise=np.zeros(0),
    )


def measure_typical(snapshot: Snapshot, params: NetworkParams, n_slots: int) -> SinrSamples:
    """Per-slot SINR samples of the typical (center-most) user."""
    if snapshot.n_users == 0:
        raise ValueError("snapshot has no users")
    half_win = TYPICAL_WINDOW_FRACTION * snapshot.region_side / 2.0
    inside = np.all(np.abs(snapshot.user_pos) <= half_win, axis=1)
    if not inside.any():
        raise ValueError("no eligible typical user in the central window")
    center_dist = np.hypot(snapshot.user_pos[:, 0], snapshot.user_pos[:, 1])
    center_dist[~inside] = np.inf
    typical = int(center_dist.argmin())

    tier_k = int(snapshot.bs_tier[snapshot.serving_bs[typical]])
    is_fd = bool(snapshot.fd_flag[typical])
    tagged = int(snapshot.serving_bs[typical])
    r = float(snapshot.serving_dist[typical])
    p = params
    p_k = p.bs_power(tier_k)
    signal_dl = p_k * r ** (-p.alpha)
    signal_ul = p.pu * r ** (-p.alpha)

    # interfering cells: every other BS with at least one associated user
    cell_users: dict = {}
    for u, b in enumerate(snapshot.serving_bs):
        if u == typical or b == tagged:
            continue  # the tagged cell is occupied by the typical user
        cell_users.setdefault(int(b), []).append(u)
    cells = sorted(cell_users)
    n_cells = len(cells)

    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=snapshot.seed, spawn_key=(snapshot.resample_attempts, 1))
    )
    tpos = snapshot.user_pos[typical]
    bpos = snapshot.bs_pos[tagged]

    if n_cells:
        cell_bs = np.array(cells)
        cell_power = np.where(snapshot.bs_tier[cell_bs] == 1, p.p1, p.p2)
        d_bs_typ = np.maximum(
            np.hypot(*(snapshot.bs_pos[cell_bs] - tpos).T), MIN_LINK_DISTANCE
        )
        d_bs_tag = np.maximum(
            np.hypot(*(snapshot.bs_pos[cell_bs] - bpos).T), MIN_LINK_DISTANCE
        )
        pl_bs_typ = cell_power * d_bs_typ ** (-p.alpha)
        pl_bs_tag = cell_power * d_bs_tag ** (-p.alpha)
        d_u_typ = np.maximum(np.hypot(*(snapshot.user_pos - tpos).T), MIN_LINK_DISTANCE)
        d_u_tag = np.maximum(np.hypot(*(snapshot.user_pos - bpos).T), MIN_LINK_DISTANCE)
        pl_u_typ = p.pu * d_u_typ ** (-p.alpha)
        pl_u_tag = p.pu * d_u_tag ** (-p.alpha)
        members = [np.array(cell_users[b]) for b in cells]
        n_members = np.array([len(m) for m in members])
        offsets = rng.integers(0, n_members)  # round-robin phase per cell
    else:
        offsets = np.zeros(0, dtype=np.int64)

    n_rows_per_slot = 4 if is_fd else 2
    rows_signal = np.empty(n_slots * n_rows_per_slot)
    rows_ibs = np.empty_like(rows_signal)
    rows_iuser = np.empty_like(rows_signal)
    rows_rsi = np.empty_like(rows_signal)
    rows_chan = np.empty(n_slots * n_rows_per_slot, dtype=np.int64)
    rows_link = np.empty(n_slots * n_rows_per_slot, dtype="<U1")
    rows_slot = np.empty(n_slots * n_rows_per_slot, dtype=np.int64)

    rsi_user = p.rsi_user if is_fd else 0.0
    rsi_bs = p.rsi_bs(tier_k) if is_fd else 0.0

    out = 0
    for start in range(0, n_slots, _SLOT_CHUNK):
        chunk = min(_SLOT_CHUNK, n_slots - start)
        slots = np.arange(start, start + chunk)
        if n_cells:
            sched_rank = (offsets[None, :] + slots[:, None]) % n_members[None, :]
            sched_user = np.empty((chunk, n_cells), dtype=np.int64)
            for c in range(n_cells):
                sched_user[:, c] = members[c][sched_rank[:, c]]
            fd_cell = snapshot.fd_flag[sched_user]  # (chunk, n_cells)

            h = rng.exponential(1.0, size=(8, chunk, n_cells))
            bs_typ = h[0] * pl_bs_typ[None, :]
            bs_typ2 = h[1] * pl_bs_typ[None, :]
            bs_tag = h[2] * pl_bs_tag[None, :]
            bs_tag2 = h[3] * pl_bs_tag[None, :]
            u_typ = h[4] * pl_u_typ[sched_user]
            u_typ2 = h[5] * pl_u_typ[sched_user]
            u_tag = h[6] * pl_u_tag[sched_user]
            u_tag2 = h[7] * pl_u_tag[sched_user]

            # channel 1: all active BSs transmit; only FD users transmit
            i1d_bs = bs_typ.sum(axis=1)
            i1d_u = (u_typ * fd_cell).sum(axis=1)
            i1u_bs = bs_tag.sum(axis=1)
            i1u_u = (u_tag * fd_cell).sum(axis=1)
            # channel 2: only FD BSs transmit; all scheduled users transmit
            i2d_bs = (bs_typ2 * fd_cell).sum(axis=1)
            i2d_u = u_typ2.sum(axis=1)
            i2u_bs = (bs_tag2 * fd_cell).sum(axis=1)
            i2u_u = u_tag2.sum(axis=1)
        else:
            z = np.zeros(chunk)
            i1d_bs = i1d_u = i1u_bs = i1u_u = z
            i2d_bs = i2d_u = i2u_bs = i2u_u = z

        h_sig = rng.exponential(1.0, size=(4, chunk))
        if is_fd:
            per = [
                (1, "D", signal_dl * h_sig[0], i1d_bs, i1d_u, rsi_user),
                (1, "U", signal_ul * h_sig[1], i1u_bs, i1u_u, rsi_bs),
                (2, "D", signal_dl * h_sig[2], i2d_bs, i2d_u, rsi_user),
                (2, "U", signal_ul * h_sig[3], i2u_bs, i2u_u, rsi_bs),
            ]
        else:
            per = [
                (1, "D", signal_dl * h_sig[0], i1d_bs, i1d_u, 0.0),
                (2, "U", signal_ul * h_sig[3], i2u_bs, i2u_u, 0.0),
            ]
        for chan, link, sig, ibs, iu, rsi in per:
            sl = slice(out, out + chunk)
            rows_signal[sl] = sig
            rows_ibs[sl] = ibs
            rows_iuser[sl] = iu
            rows_rsi[sl] = rsi
            rows_chan[sl] = chan
            rows_link[sl] = link
            rows_slot[sl] = slots
            out += chunk

    n = out
    return SinrSamples(
        seed=np.full(n, snapshot.seed, dtype=np.int64),
        slot=rows_slot[:n],
        channel=rows_chan[:n],
        duplex=np.full(n, "FD" if is_fd else "HD", dtype="<U2"),
        link=rows_link[:n],
        tier=np.full(n, tier_k, dtype=np.int64),
        signal=rows_signal[:n],
        i_bs=rows_ibs[:n],
        i_user=rows_iuser[:n],
        rsi=rows_rsi[:n],
        noise=np.full(n, p.sigma2),
    )


def wilson_upper_margin(successes: np.ndarray, n: int) -> np.ndarray:
    """Wilson 95% upper bound minus the point estimate."""
    p_hat = successes / n
    z2 = _Z95 * _Z95
    center = (p_hat + z2 / (2 * n)) / (1 + z2 / n)
    hw = _Z95 * np.sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n)) / (1 + z2 / n)
    return center + hw - p_hat


def empirical_ccdf(
    samples: SinrSamples,
    t_grid_db,
    *,
    channel: int,
    duplex: str,
    link: str,
    tier="mixture",
) -> CcdfCurve:
    """Empirical CCDF with Wilson 95% upper-margin per point."""
    group = samples.select(channel=channel, duplex=duplex, link=link, tier=tier)
    n = len(group)
    if n == 0:
        raise ValueError(
            f"no samples for group (channel={channel}, duplex={duplex}, "
            f"link={link}, tier={tier})"
        )
    t_grid_db = np.asarray(t_grid_db, dtype=float)
    sinr_db = np.sort(group.sinr_db)
    exceed = n - np.searchsorted(sinr_db, t_grid_db, side="right")
    probs = exceed / n
    return CcdfCurve(
        t_grid_db, probs, channel, duplex, link, tier,
        ci_halfwidth=wilson_upper_margin(exceed.astype(float), n),
        n_samples=n,
    )


@dataclass
class AssociationCounts:
    """Observed class counts; typical-user classes for SE weights, or
    per-user counts for Lemma-1 validation."""

    counts: dict = field(default_factory=dict)  # (tier, duplex) -> int

    def add(self, tier: int, duplex: str, n: int = 1):
        key = (tier, duplex)
        self.counts[key] = self.counts.get(key, 0) + n

    def merge(self, other: "AssociationCounts"):
        for key, n in other.counts.items():
            self.counts[key] = self.counts.get(key, 0) + n

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def frequency(self, tier: int, duplex: str) -> float:
        return self.counts.get((tier, duplex), 0) / self.total


def count_user_classes(snapshot: Snapshot, margin_frac: float = 0.6) -> AssociationCounts:
    """Class counts of all users inside the central margin_frac window."""
    half_win = margin_frac * snapshot.region_side / 2.0
    inside = np.all(np.abs(snapshot.user_pos) <= half_win, axis=1)
    tiers = snapshot.serving_tier()
    out = AssociationCounts()
    for tier in (1, 2):
        for duplex, flag in (("FD", True), ("HD", False)):
            n = int(np.sum(inside & (tiers == tier) & (snapshot.fd_flag == flag)))
            if n:
                out.add(tier, duplex, n)
    return out


def empirical_spectral_efficiency(
    samples: SinrSamples, assoc_stats: AssociationCounts
) -> SpectralEfficiencyReport:
    """Per-class (1/2)E[log2(1+sinr)] combined with observed class weights."""
    if len(samples) == 0:
        raise ValueError("no samples")
    breakdown = {}
    for tier in (1, 2):
        for channel in (1, 2):
            for duplex, links in (("FD", ("D", "U")), ("HD", ("D" if channel == 1 else "U",))):
                for link in links:
                    grp = samples.select(channel=channel, duplex=duplex, link=link, tier=tier)
                    if len(grp) == 0:
                        continue
                    breakdown[(channel, duplex, link, tier)] = float(
                        0.5 * np.mean(np.log2(1.0 + grp.sinr))
                    )

    a_fd = {k: assoc_stats.frequency(k, "FD") for k in (1, 2)}
    a_hd = {k: assoc_stats.frequency(k, "HD") for k in (1, 2)}

    def get(channel, duplex, link, k):
        return breakdown.get((channel, duplex, link, k), 0.0)

    s_down = sum(
        a_fd[k] * (get(1, "FD", "D", k) + get(2, "FD", "D", k)) + a_hd[k] * get(1, "HD", "D", k)
        for k in (1, 2)
    )
    s_up = sum(
        a_fd[k] * (get(1, "FD", "U", k) + get(2, "FD", "U", k)) + a_hd[k] * get(2, "HD", "U", k)
        for k in (1, 2)
    )
    s_tier = {}
    for k in (1, 2):
        a_k = a_fd[k] + a_hd[k]
        if a_k == 0.0:
            s_tier[k] = 0.0
            continue
        s_tier[k] = (
            a_fd[k]
            * (
                get(1, "FD", "D", k) + get(1, "FD", "U", k)
                + get(2, "FD", "D", k) + get(2, "FD", "U", k)
            )
            + a_hd[k] * (get(1, "HD", "D", k) + get(2, "HD", "U", k))
        ) / a_k
    total = sum(
        (a_fd[k] if dup == "FD" else a_hd[k]) * val
        for (ch, dup, link, k), val in breakdown.items()
    )
    return SpectralEfficiencyReport(
        s_total=total, s_downlink=s_down, s_uplink=s_up, s_tier=s_tier, breakdown=breakdown
    )


def snapshot_seeds(master_seed: int, count: int) -> list:
    """Counter-based expansion of a master seed into per-snapshot seeds."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(master_seed).spawn(count)]


def _simulate_one(args) -> tuple:
    params, region_side, seed, n_slots = args
    snap = sample_snapshot(params, region_side, seed)
    try:
        samples = measure_typical(snap, params, n_slots)
    except ValueError:
        return _empty_samples(), AssociationCounts(), count_user_classes(snap)
    stats = AssociationCounts()
    stats.add(int(samples.tier[0]), str(samples.duplex[0]))
    return samples, stats, count_user_classes(snap)


def run_simulation(
    params: NetworkParams,
    n_snapshots: int,
    n_slots: int,
    region_side: float,
    master_seed: int,
    workers: int = 1,
):
    """Map snapshots over seeds (optionally in parallel), merge in seed order."""
    seeds = snapshot_seeds(master_seed, n_snapshots)
    jobs = [(params, region_side, s, n_slots) for s in seeds]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_simulate_one, jobs, chunksize=8))
    else:
        results = [_simulate_one(j) for j in jobs]
    all_samples = SinrSamples.concat([r[0] for r in results])
    typical_stats = AssociationCounts()
    user_stats = AssociationCounts()
    for _, t_stats, u_stats in results:
        typical_stats.merge(t_stats)
        user_stats.merge(u_stats)
    return all_samples, typical_stats, user_stats
