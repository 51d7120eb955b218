"""Duplex-mode selection: objective, greedy search, exhaustive oracle.

The decision variable is the per-cell count of full-duplex users delta_m;
users are pre-sorted by downlink received power, so the strongest delta_m
users of cell m run full-duplex. Rates follow the printed average-power
model: log2 of per-channel SINR with cross-cell activity weights
delta_n / N_n in the denominators, and the objective is
sum_m omega_m (R_m^FD + R_m^HD).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .instance import OptimizerInstance


class BudgetExceededError(RuntimeError):
    """Exhaustive search refused: lattice larger than the budget."""

    def __init__(self, product: int, budget: int):
        super().__init__(
            f"exhaustive search space {product} exceeds budget {budget}"
        )
        self.product = product
        self.budget = budget


@dataclass
class DuplexAssignment:
    delta: np.ndarray
    objective: float
    thresholds: np.ndarray  # printed-convention gamma_m (W, 0/inf sentinels)
    trace: list = field(default_factory=list)  # (iteration, objective)
    evaluations: int = 0


def _check_delta(inst: OptimizerInstance, delta) -> np.ndarray:
    delta = np.asarray(delta, dtype=np.int64)
    if delta.shape != (inst.m_cells,) or np.any(delta < 0) or np.any(delta > inst.n):
        raise ValueError(f"infeasible delta {delta} for cell sizes {inst.n}")
    return delta


def user_rates(inst: OptimizerInstance, delta, m: int, u: int) -> tuple:
    """(r_fd_d, r_fd_u, r_hd) in bits/s/Hz for user u (0-based rank) of cell m."""
    delta = _check_delta(inst, delta)
    j = int(inst.user_start[m]) + u
    if not (0 <= u < inst.n[m]):
        raise IndexError(f"user {u} out of range for cell {m}")
    a = delta / inst.n
    d1 = float(inst.bs2user[:, j].sum() + a @ inst.user2user[:, j])
    d2 = float(a @ inst.bs2user[:, j] + inst.user2user[:, j].sum())
    u1 = float(inst.bs2bs[:, m].sum() + a @ inst.user2bs[:, m])
    u2 = float(a @ inst.bs2bs[:, m] + inst.user2bs[:, m].sum())
    s2 = inst.sigma2
    pd, pu = float(inst.p_down[j]), float(inst.p_up[j])
    r_fd_d = math.log2(pd / (inst.rsi_user + s2 + d1)) + math.log2(
        pd / (inst.rsi_user + s2 + d2)
    )
    r_fd_u = math.log2(pu / (inst.rsi_bs[m] + s2 + u1)) + math.log2(
        pu / (inst.rsi_bs[m] + s2 + u2)
    )
    r_hd = math.log2(pd / (s2 + d1)) + math.log2(pu / (s2 + u2))
    return r_fd_d, r_fd_u, r_hd


def objective(inst: OptimizerInstance, delta) -> float:
    """Sum rate U (bits/s) of a duplex assignment."""
    delta = _check_delta(inst, delta)
    kd = kernels.prepare(inst)
    return float(kernels.objective_batch(kd, delta[None, :])[0])


def objective_reference(inst: OptimizerInstance, delta) -> float:
    """Slow direct transcription of the sums; oracle for the kernels."""
    delta = _check_delta(inst, delta)
    total = 0.0
    for m in range(inst.m_cells):
        r_fd_sum = 0.0
        r_hd_sum = 0.0
        for u in range(int(inst.n[m])):
            r_fd_d, r_fd_u, r_hd = user_rates(inst, delta, m, u)
            if u < delta[m]:
                r_fd_sum += r_fd_d + r_fd_u
            else:
                r_hd_sum += r_hd
        total += inst.omega[m] * (r_fd_sum + r_hd_sum)
    return total


def greedy_select(inst: OptimizerInstance) -> DuplexAssignment:
    """The +-1 neighborhood ascent: per iteration every cell's delta_m +- 1
    is scored (2M evaluations); the best strict improvement is accepted,
    preferring the +1 side on ties; stops when no candidate improves."""
    kd = kernels.prepare(inst)
    delta = np.zeros(inst.m_cells, dtype=np.int64)
    best = float(kernels.objective_batch(kd, delta[None, :])[0])
    trace = [(0, best)]
    evaluations = 1
    iteration = 0
    while True:
        iteration += 1
        plus_rows = []
        minus_rows = []
        for m in range(inst.m_cells):
            if delta[m] + 1 <= inst.n[m]:
                cand = delta.copy()
                cand[m] += 1
                plus_rows.append(cand)
            if delta[m] - 1 >= 0:
                cand = delta.copy()
                cand[m] -= 1
                minus_rows.append(cand)
        rows = plus_rows + minus_rows
        vals = kernels.objective_batch(kd, np.array(rows))
        evaluations += len(rows)
        u_plus = vals[: len(plus_rows)].max() if plus_rows else -math.inf
        u_minus = vals[len(plus_rows):].max() if minus_rows else -math.inf
        if u_plus >= u_minus and u_plus > best:
            best = float(u_plus)
            delta = plus_rows[int(vals[: len(plus_rows)].argmax())]
        elif u_minus > best:
            best = float(u_minus)
            delta = minus_rows[int(vals[len(plus_rows):].argmax())]
        else:
            break
        trace.append((iteration, best))
    return DuplexAssignment(
        delta=delta,
        objective=best,
        thresholds=thresholds_from_delta(inst, delta),
        trace=trace,
        evaluations=evaluations,
    )


def exhaustive_search(inst: OptimizerInstance, budget: int = 1_000_000) -> DuplexAssignment:
    """Global maximizer over the full delta lattice; refuses above budget.

    Ties break to the lexicographically smallest delta (the scan honors
    first-found-wins in lexicographic enumeration order)."""
    product = inst.search_space()
    if product > budget:
        raise BudgetExceededError(product, budget)
    kd = kernels.prepare(inst)
    best_delta, _ = kernels.exhaustive_scan(kd)
    best_delta = np.asarray(best_delta, dtype=np.int64)
    return DuplexAssignment(
        delta=best_delta,
        objective=float(kernels.objective_batch(kd, best_delta[None, :])[0]),
        thresholds=thresholds_from_delta(inst, best_delta),
        evaluations=product,
    )


def thresholds_from_delta(
    inst: OptimizerInstance, delta, convention: str = "as_printed"
) -> np.ndarray:
    """Per-cell received-power thresholds realizing a duplex assignment.

    "as_printed" follows the published mapping (delta=0 -> 0, delta=N ->
    inf); "policy" swaps the endpoints so that classifying users by
    received power >= gamma reproduces delta (the printed endpoints invert
    the association policy's meaning of gamma). The midpoint branch is
    identical under both conventions.
    """
    if convention not in ("as_printed", "policy"):
        raise ValueError(f"unknown threshold convention: {convention}")
    delta = _check_delta(inst, delta)
    out = np.empty(inst.m_cells)
    for m in range(inst.m_cells):
        d = int(delta[m])
        n_m = int(inst.n[m])
        if d == 0:
            out[m] = 0.0 if convention == "as_printed" else math.inf
        elif d == n_m:
            out[m] = math.inf if convention == "as_printed" else 0.0
        else:
            seg = inst.p_down[inst.users_of(m)]
            if seg[d - 1] == seg[d]:
                warnings.warn(
                    f"duplicate received powers straddle the cut in cell {m}; "
                    "threshold classification may differ from delta",
                    stacklevel=2,
                )
            out[m] = 0.5 * (seg[d - 1] + seg[d])
    return out


def classify_by_thresholds(inst: OptimizerInstance, gamma: np.ndarray) -> np.ndarray:
    """delta implied by per-cell thresholds under the association policy
    (user u is full-duplex iff p_down >= gamma_m)."""
    out = np.empty(inst.m_cells, dtype=np.int64)
    for m in range(inst.m_cells):
        out[m] = int(np.sum(inst.p_down[inst.users_of(m)] >= gamma[m]))
    return out
