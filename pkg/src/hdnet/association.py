"""Cell association, duplex switching policy and the duplex-gain function.

A user attaches to the BS with the strongest average downlink received
power P_k * d^-alpha; it runs full-duplex iff that power is at least the
tier threshold gamma_k, i.e. iff the serving distance is within delta_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import DerivedScales, NetworkParams, other_tier

FD = "FD"
HD = "HD"


@dataclass(frozen=True)
class UserClass:
    tier: int
    duplex: str  # "FD" | "HD"


@dataclass(frozen=True)
class AssociationProbabilities:
    """Closed-form class probabilities; a_fd[k] + a_hd[k] == a_tier[k]."""

    a_fd: dict
    a_hd: dict
    a_tier: dict

    def p_fd(self) -> float:
        return self.a_fd[1] + self.a_fd[2]

    def p_hd(self) -> float:
        return self.a_hd[1] + self.a_hd[2]


def classify_user(d1: float, d2: float, params: NetworkParams) -> UserClass:
    """Classify a user at distances d1, d2 (m) from its nearest tier-1/2 BS.

    Ties in received power break toward tier 1 (measure-zero event, fixed
    for reproducibility). Boundary received power == gamma counts as FD.
    """
    if not (d1 > 0.0 and d2 > 0.0):
        raise ValueError("distances must be positive")
    rx1 = params.p1 * d1 ** (-params.alpha)
    rx2 = params.p2 * d2 ** (-params.alpha)
    tier = 1 if rx1 >= rx2 else 2
    rx = rx1 if tier == 1 else rx2
    duplex = FD if rx >= params.gamma(tier) else HD
    return UserClass(tier=tier, duplex=duplex)


def association_probabilities(params: NetworkParams) -> AssociationProbabilities:
    """Per-tier FD/HD association probabilities (closed form)."""
    scales = DerivedScales(params)
    weight = {
        k: params.bs_density(k) * params.bs_power(k) ** (2.0 / params.alpha)
        for k in (1, 2)
    }
    total = weight[1] + weight[2]
    a_fd, a_hd, a_tier = {}, {}, {}
    for k in (1, 2):
        kk = other_tier(k)
        a_tier[k] = weight[k] / total
        dk = scales.delta_k(k)
        if dk == math.inf:
            hd_frac = 0.0
        else:
            exponent = (
                math.pi * params.bs_density(k) * dk * dk
                + math.pi * params.bs_density(kk) * scales.mu_k(k, dk) ** 2
            )
            hd_frac = math.exp(-exponent)
        a_hd[k] = a_tier[k] * hd_frac
        a_fd[k] = a_tier[k] * (1.0 - hd_frac)
    return AssociationProbabilities(a_fd=a_fd, a_hd=a_hd, a_tier=a_tier)


def duplex_gain(
    xi: float,
    eps: float,
    n_d: float,
    n_u: float,
    rsi_d: float,
    rsi_u: float,
) -> float:
    """Half-duplex minus full-duplex rate (bits/s/Hz) at received power xi.

    Positive means half-duplex is the better mode for this link. eps is the
    user-to-BS transmit power ratio; n_d/n_u the interference-plus-noise at
    the user/BS; rsi_d/rsi_u the residual self-interference at each end.
    """
    if n_d <= 0.0 or n_u <= 0.0:
        raise ValueError("interference-plus-noise must be positive")
    half = 0.5 * math.log2(1.0 + xi / n_d) + 0.5 * math.log2(1.0 + eps * xi / n_u)
    full = math.log2(1.0 + xi / (rsi_d + n_d)) + math.log2(1.0 + eps * xi / (rsi_u + n_u))
    return half - full
