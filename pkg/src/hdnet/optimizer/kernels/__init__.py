"""Hot-loop kernels for the duplex optimizer.

Two interchangeable backends: the Cython extension hdnet.optimizer._core
(built by setup.py) and a vectorized numpy fallback. The compiled backend
is selected at import when available; HDNET_KERNELS=fallback|compiled
forces a choice (raising if a forced compiled backend is missing).
benchmarks/bench_kernels.py compares the two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

try:
    from .. import _core  # compiled extension, optional

    _HAVE_COMPILED = True
except ImportError:
    _core = None
    _HAVE_COMPILED = False

_FORCED = os.environ.get("HDNET_KERNELS", "").strip().lower()
if _FORCED == "compiled" and not _HAVE_COMPILED:
    raise ImportError("HDNET_KERNELS=compiled but hdnet.optimizer._core is not built")
USE_COMPILED = _HAVE_COMPILED if _FORCED == "" else _FORCED == "compiled"


def backend_name() -> str:
    return "compiled" if USE_COMPILED else "fallback"


@dataclass
class KernelData:
    """Contiguous packed view of an OptimizerInstance."""

    n: np.ndarray
    omega: np.ndarray
    cell_of_user: np.ndarray
    rank_of_user: np.ndarray
    user_start: np.ndarray
    log2_pd: np.ndarray
    log2_pu: np.ndarray
    bs2user: np.ndarray
    user2user: np.ndarray
    bs2bs: np.ndarray
    user2bs: np.ndarray
    sum_bs2user: np.ndarray
    sum_user2user: np.ndarray
    sum_bs2bs: np.ndarray
    sum_user2bs: np.ndarray
    rsi_bs: np.ndarray
    rsi_user: float
    sigma2: float


def prepare(inst) -> KernelData:
    c = np.ascontiguousarray
    return KernelData(
        n=c(inst.n, dtype=np.int64),
        omega=c(inst.omega, dtype=np.float64),
        cell_of_user=c(inst.cell_of_user(), dtype=np.int64),
        rank_of_user=c(inst.rank_of_user(), dtype=np.int64),
        user_start=c(inst.user_start, dtype=np.int64),
        log2_pd=np.log2(c(inst.p_down, dtype=np.float64)),
        log2_pu=np.log2(c(inst.p_up, dtype=np.float64)),
        bs2user=c(inst.bs2user, dtype=np.float64),
        user2user=c(inst.user2user, dtype=np.float64),
        bs2bs=c(inst.bs2bs, dtype=np.float64),
        user2bs=c(inst.user2bs, dtype=np.float64),
        sum_bs2user=c(inst.bs2user.sum(axis=0), dtype=np.float64),
        sum_user2user=c(inst.user2user.sum(axis=0), dtype=np.float64),
        sum_bs2bs=c(inst.bs2bs.sum(axis=0), dtype=np.float64),
        sum_user2bs=c(inst.user2bs.sum(axis=0), dtype=np.float64),
        rsi_bs=c(inst.rsi_bs, dtype=np.float64),
        rsi_user=float(inst.rsi_user),
        sigma2=float(inst.sigma2),
    )


def objective_batch(kd: KernelData, deltas: np.ndarray) -> np.ndarray:
    """Objective for a (K, M) batch of assignments."""
    deltas = np.ascontiguousarray(deltas, dtype=np.int64)
    if USE_COMPILED:
        out = np.empty(len(deltas))
        _core.objective_batch(
            kd.omega, kd.n, kd.user_start, kd.log2_pd, kd.log2_pu,
            kd.bs2user, kd.user2user, kd.bs2bs, kd.user2bs,
            kd.sum_bs2user, kd.sum_user2user, kd.sum_bs2bs, kd.sum_user2bs,
            kd.rsi_bs, kd.rsi_user, kd.sigma2, deltas, out,
        )
        return out
    from . import _ref

    return _ref.objective_batch(kd, deltas)


def exhaustive_scan(kd: KernelData) -> tuple:
    """(best_delta, best_value) over the full lattice, lexicographic order."""
    if USE_COMPILED:
        best_delta = np.zeros(len(kd.n), dtype=np.int64)
        best = _core.exhaustive_scan(
            kd.omega, kd.n, kd.user_start, kd.log2_pd, kd.log2_pu,
            kd.bs2user, kd.user2user, kd.bs2bs, kd.user2bs,
            kd.sum_bs2user, kd.sum_user2user, kd.sum_bs2bs, kd.sum_user2bs,
            kd.rsi_bs, kd.rsi_user, kd.sigma2, best_delta,
        )
        return best_delta, float(best)
    from . import _ref

    return _ref.exhaustive_scan(kd)
