"""Inhomogeneous-PPP intensity measures of the interfering node processes.

Conditioned on the serving distance r of a tier-k user, interfering BSs and
scheduled users of tier t are modeled as inhomogeneous PPPs whose densities
thin the parent density by (a) the probability the interfering BS is active
(a user falls in its coverage disc of radius zeta) and (b) the duplex mode
of its scheduled user. zeta = +inf whenever P_t >= P_k (the max{.,0}
denominator vanishes), taken as the explicit limiting branch so integrands
stay NaN-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DerivedScales, NetworkParams

DOWNLINK = "D"
UPLINK = "U"

BS_FD = "bs_fd"
BS_HD = "bs_hd"
USER_FD = "user_fd"
USER_HD = "user_hd"

NODE_CLASSES = (BS_FD, BS_HD, USER_FD, USER_HD)


@dataclass(frozen=True)
class IntensityQuery:
    direction: str  # "D" | "U"
    node_class: str  # bs_fd | bs_hd | user_fd | user_hd
    k: int  # serving tier
    t: int  # interfering tier
    r: float  # serving distance (m)
    y: float  # distance to the victim (m)


def thinned_densities(params: NetworkParams) -> dict:
    """Densities of BSs scheduling FD / HD users, per tier.

    Each BS schedules independently, so the FD share of tier t equals the
    conditional probability a_fd[t] / a_tier[t]. Sums to lambda_t exactly.
    """
    from .association import association_probabilities

    probs = association_probabilities(params)
    out = {}
    for t in (1, 2):
        frac_fd = probs.a_fd[t] / probs.a_tier[t]
        lam = params.bs_density(t)
        out[(t, "FD")] = lam * frac_fd
        out[(t, "HD")] = lam * (1.0 - frac_fd)
    return out


def _zeta_sq(params: NetworkParams, k: int, t: int, base: np.ndarray) -> np.ndarray:
    """zeta^2 with zeta = base / max{(P_k/P_t)^(1/alpha) - 1, 0}."""
    denom = (params.bs_power(k) / params.bs_power(t)) ** (1.0 / params.alpha) - 1.0
    if denom <= 0.0:
        return np.full_like(base, np.inf)
    return (base / denom) ** 2


def intensity_profile(
    direction: str,
    node_class: str,
    k: int,
    t: int,
    r: float,
    y,
    params: NetworkParams,
    thinned: dict | None = None,
) -> np.ndarray:
    """Vectorized intensity (per m^2) at distances y from the victim."""
    y = np.asarray(y, dtype=float)
    if thinned is None:
        thinned = thinned_densities(params)
    scales = DerivedScales(params)

    if node_class in (BS_FD, BS_HD):
        base = (r + y) if direction == DOWNLINK else y
        zsq = _zeta_sq(params, k, t, base)
        if node_class == BS_FD:
            lam = thinned[(t, "FD")]
            return lam * (-np.expm1(-params.lambda_u * math.pi * zsq))
        lam = thinned[(t, "HD")]
        if lam == 0.0:
            # gamma_t = 0: no HD users exist, also avoids inf - inf below
            return np.zeros_like(y)
        dt = scales.delta_k(t)
        gap = zsq - dt * dt  # zeta <= delta_t cannot host an HD-scheduling BS
        active = -np.expm1(-params.lambda_u * math.pi * np.maximum(gap, 0.0))
        return lam * np.where(gap > 0.0, active, 0.0)

    if node_class in (USER_FD, USER_HD):
        lam = thinned[(t, "FD" if node_class == USER_FD else "HD")]
        base = (r + y) if direction == DOWNLINK else y
        expo = (
            math.pi
            * base**2
            * params.bs_density(t)
            * (params.bs_power(t) / params.bs_power(k)) ** (2.0 / params.alpha)
        )
        return lam * (-np.expm1(-expo))

    raise ValueError(f"unknown node class: {node_class}")


def intensity(q: IntensityQuery, params: NetworkParams) -> float:
    """Scalar intensity for a single query."""
    if q.r < 0.0 or q.y < 0.0:
        raise ValueError("r and y must be nonnegative")
    if q.direction not in (DOWNLINK, UPLINK):
        raise ValueError(f"unknown direction: {q.direction}")
    val = intensity_profile(q.direction, q.node_class, q.k, q.t, q.r, q.y, params)
    return float(val)
