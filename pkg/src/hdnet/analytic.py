"""Numerical evaluation of the SINR CCDFs and spectral efficiencies.

Each conditional CCDF is an outer integral over the serving distance r of
exp(-T/SSINR_or_SNR) * F(r) * (product of interference Laplace factors),
normalized by the matching association probability; each Laplace factor is
itself an exponential of an intensity-weighted integral over interferer
distance y. The normalization constant is folded into the outer integrand
so the stated tolerances apply on the probability scale.

Performance hinges on batching: the outer integrand is vectorized over the
r panel nodes, and every Laplace inner integral is evaluated for a whole
batch of r values at once on a shared adaptive panel grid in t-space
(t in [0,1] maps to y via lower + t/(1-t) or an affine map for finite
segments). Factors are memoized per (component, tier, direction, r, T)
because several curves share them at identical nodes.

Spectral efficiencies reweight the CCDFs by 1/(1+T); the T-integral runs
in s = ln(1+T) space where the power-law SINR tail decays exponentially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import intensity as intens
from .association import association_probabilities
from .params import DerivedScales, NetworkParams, other_tier
from .quadrature import (
    _NODES,
    _W_GAUSS,
    _W_KRON,
    QuadratureError,
    QuadratureSpec,
    geometric_seeds,
    integrate,
)

LN2 = math.log(2.0)

# the six defined (channel, duplex, link) curves
CURVE_LABELS = (
    (1, "FD", "D"),
    (1, "FD", "U"),
    (2, "FD", "D"),
    (2, "FD", "U"),
    (1, "HD", "D"),
    (2, "HD", "U"),
)


class TailTruncationError(RuntimeError):
    """T_max too small for the requested spectral-efficiency accuracy."""


@dataclass
class CcdfCurve:
    """A sampled complementary CDF over a strictly increasing dB grid."""

    thresholds_db: np.ndarray
    probabilities: np.ndarray
    channel: int
    duplex: str
    link: str
    tier: object  # 1 | 2 | "mixture"
    ci_halfwidth: np.ndarray | None = None
    n_samples: int | None = None

    def __post_init__(self):
        self.thresholds_db = np.asarray(self.thresholds_db, dtype=float)
        self.probabilities = np.asarray(self.probabilities, dtype=float)
        if self.thresholds_db.ndim != 1 or np.any(np.diff(self.thresholds_db) <= 0):
            raise ValueError("threshold grid must be strictly increasing")
        if self.probabilities.shape != self.thresholds_db.shape:
            raise ValueError("grid/probability shape mismatch")
        if np.any(self.probabilities < -1e-9) or np.any(self.probabilities > 1 + 1e-9):
            raise ValueError("probabilities outside [0, 1]")
        if np.any(np.diff(self.probabilities) > 1e-6):
            raise ValueError("CCDF must be nonincreasing in T")

    @property
    def label(self) -> tuple:
        return (self.channel, self.duplex, self.link, self.tier)


@dataclass
class SpectralEfficiencyReport:
    """Aggregate and per-class spectral efficiencies in bits/s/Hz.

    breakdown maps (channel, duplex, link, tier) to the per-class value
    (1/2)E[log2(1+theta)]; the aggregates are association-weighted sums.
    """

    s_total: float
    s_downlink: float
    s_uplink: float
    s_tier: dict
    breakdown: dict = field(default_factory=dict)

    def as_items(self) -> list:
        items = [
            ("s_total", self.s_total),
            ("s_downlink", self.s_downlink),
            ("s_uplink", self.s_uplink),
            ("s_tier1", self.s_tier[1]),
            ("s_tier2", self.s_tier[2]),
        ]
        for (ch, dup, link, tier), val in sorted(self.breakdown.items(), key=str):
            items.append((f"s_ch{ch}_{dup.lower()}_{link.lower()}_tier{tier}", val))
        return items


def _validate_label(channel: int, duplex: str, link: str):
    if (channel, duplex, link) not in CURVE_LABELS:
        raise ValueError(
            f"undefined SINR curve (channel={channel}, duplex={duplex}, link={link})"
        )


# seed edges for the shared inner t-grid: log-spread toward 0 plus a coarse body
_INNER_SEEDS = (1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.15, 0.35, 0.65)


class SinrModel:
    """Shared evaluation context: association weights, scales, factor cache."""

    def __init__(self, params: NetworkParams, spec: QuadratureSpec | None = None):
        self.params = params
        self.spec = spec or QuadratureSpec()
        self.assoc = association_probabilities(params)
        self.scales = DerivedScales(params)
        self.thinned = intens.thinned_densities(params)
        self._cache: dict = {}

    # ---- batched PGFL exponents -------------------------------------------

    def _pgfl_exponent_batch(
        self,
        component: str,
        k: int,
        t: int,
        direction: str,
        r: np.ndarray,
        s_coef: np.ndarray,
        lower: np.ndarray,
        upper: np.ndarray | None,
    ) -> np.ndarray:
        """2*pi * int lambda(y) y s/(1+s) dy per row, s = s_coef * y^-alpha.

        upper None means +inf (mapped via y = lower + t/(1-t)); otherwise a
        per-row finite upper bound (affine map). Shared adaptive t-panels:
        a panel is accepted once every row meets its width-proportional
        error budget.
        """
        p = self.params
        n = r.size
        tol = self.spec.inner_tol

        def eval_panels(lo_t: np.ndarray, hi_t: np.ndarray):
            half = 0.5 * (hi_t - lo_t)
            mid = 0.5 * (hi_t + lo_t)
            tt = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()  # (P*15,)
            if upper is None:
                one_m = 1.0 - tt
                y = lower[:, None] + tt[None, :] / one_m[None, :]
                jac = 1.0 / one_m**2
            else:
                width = upper - lower
                y = lower[:, None] + width[:, None] * tt[None, :]
                jac = np.broadcast_to(width[:, None], y.shape)
            lam = intens.intensity_profile(
                direction, component, k, t, r[:, None], y, p, self.thinned
            )
            with np.errstate(over="ignore"):
                s = s_coef[:, None] * y ** (-p.alpha)
            g = 2.0 * math.pi * lam * y * (1.0 - 1.0 / (1.0 + s))
            if upper is None:
                g = g * jac[None, :]
            else:
                g = g * jac
            g = g.reshape(n, lo_t.size, 15)
            kron = (g * _W_KRON).sum(axis=2) * half[None, :]
            gauss = (g * _W_GAUSS).sum(axis=2) * half[None, :]
            return kron, np.abs(kron - gauss)

        edges = np.array([0.0, *_INNER_SEEDS, 1.0])
        lo_t, hi_t = edges[:-1], edges[1:]
        result = np.zeros(n)
        for _ in range(self.spec.max_rounds):
            kron, err = eval_panels(lo_t, hi_t)
            budget = tol * (hi_t - lo_t)
            # width budget plus a per-row round-off floor at the integral scale
            scale = np.abs(result) + np.abs(kron).sum(axis=1)
            done = (err <= np.maximum(budget[None, :], 1e-14 * scale[:, None])).all(axis=0)
            result += kron[:, done].sum(axis=1)
            if done.all():
                return result
            lo_t, hi_t = lo_t[~done], hi_t[~done]
            mids = 0.5 * (lo_t + hi_t)
            lo_t = np.concatenate([lo_t, mids])
            hi_t = np.concatenate([mids, hi_t])
            if lo_t.size > self.spec.max_panels:
                break
        kron, err = eval_panels(lo_t, hi_t)
        raise QuadratureError(
            "inner Laplace integral did not converge",
            estimate=float((result + kron.sum(axis=1)).max()),
            error_bound=float(err.sum(axis=1).max()),
        )

    def _factor_compute(
        self, component: str, k: int, t: int, direction: str, r: np.ndarray, T: float
    ) -> np.ndarray:
        """Laplace factors for a batch of serving distances r."""
        p = self.params
        duplex = "FD" if component in (intens.BS_FD, intens.USER_FD) else "HD"
        if self.thinned[(t, duplex)] == 0.0 or T == 0.0:
            return np.ones_like(r)
        ratio_tk = (p.bs_power(t) / p.bs_power(k)) ** (1.0 / p.alpha)
        delta_t = self.scales.delta_k(t)
        r_alpha = r**p.alpha

        if direction == "D":
            if component in (intens.BS_FD, intens.BS_HD):
                lower = r * ratio_tk
                s_coef = (p.bs_power(t) / p.bs_power(k)) * T * r_alpha
            elif component == intens.USER_FD:
                lower = np.maximum(r * ratio_tk - delta_t, 0.0)
                s_coef = (p.pu / p.bs_power(k)) * T * r_alpha
            else:  # USER_HD
                if not math.isfinite(delta_t):
                    return np.ones_like(r)  # unreachable: HD class empty
                lower = np.maximum(delta_t / ratio_tk - r, 0.0)
                s_coef = (p.pu / p.bs_power(k)) * T * r_alpha
            expo = self._pgfl_exponent_batch(component, k, t, direction, r, s_coef, lower, None)
            return np.exp(-expo)

        # uplink: victim is the tagged BS
        if component in (intens.BS_FD, intens.BS_HD):
            s_coef = (p.bs_power(t) / p.pu) * T * r_alpha
            split = r * (ratio_tk + 1.0)
            pk_root = p.bs_power(k) ** (1.0 / p.alpha)
            pt_root = p.bs_power(t) ** (1.0 / p.alpha)
            p_interf = 1.0 - (pt_root / (pt_root + pk_root)) ** 2
            seg1 = self._pgfl_exponent_batch(
                component, k, t, direction, r, s_coef, np.zeros_like(r), split
            )
            seg2 = self._pgfl_exponent_batch(component, k, t, direction, r, s_coef, split, None)
            return np.exp(-(p_interf * seg1 + seg2))
        if component == intens.USER_FD:
            lower = np.maximum((ratio_tk - 1.0) * r - delta_t, 0.0)
        else:  # USER_HD
            if not math.isfinite(delta_t):
                return np.ones_like(r)
            lower = np.full_like(r, delta_t / ratio_tk)
        s_coef = T * r_alpha
        expo = self._pgfl_exponent_batch(component, k, t, direction, r, s_coef, lower, None)
        return np.exp(-expo)

    def _factor_batch(
        self, component: str, k: int, t: int, direction: str, r: np.ndarray, T: float
    ) -> np.ndarray:
        """Memoized wrapper around _factor_compute."""
        vals = np.empty_like(r)
        missing: list = []
        for i, ri in enumerate(r):
            hit = self._cache.get((component, k, t, direction, ri, T))
            if hit is None:
                missing.append(i)
            else:
                vals[i] = hit
        if missing:
            idx = np.array(missing)
            fresh = self._factor_compute(component, k, t, direction, r[idx], T)
            vals[idx] = fresh
            for i, v in zip(missing, fresh):
                self._cache[(component, k, t, direction, r[i], T)] = float(v)
        return vals

    # ---- conditional CCDF curves ------------------------------------------

    def _serving_pdf_scale(self, k: int) -> float:
        """Lambda of the exp(-pi*Lambda*r^2) decay of F(r) for tier k."""
        p = self.params
        kk = other_tier(k)
        return p.bs_density(k) + p.bs_density(kk) * (
            p.bs_power(kk) / p.bs_power(k)
        ) ** (2.0 / p.alpha)

    def _f_decay_radius(self, k: int) -> float:
        """r beyond which F(r) < 1e-12 of its peak (outer truncation)."""
        lam = self._serving_pdf_scale(k)
        r_peak = 1.0 / math.sqrt(2.0 * math.pi * lam)
        f_peak = r_peak * math.exp(-math.pi * lam * r_peak**2)
        r = 2.0 * r_peak
        while r * math.exp(-math.pi * lam * r * r) > 1e-12 * f_peak:
            r *= 1.2
        return r

    def _factor_components(self, channel: int) -> tuple:
        # channel 1 carries HD downlink (BS interferers); channel 2 carries
        # HD uplink (user interferers); FD nodes interfere on both.
        third = intens.BS_HD if channel == 1 else intens.USER_HD
        return (intens.BS_FD, intens.USER_FD, third)

    def _signal_gate_coef(self, duplex: str, link: str, k: int) -> float:
        """c such that exp(-T/{SSINR|SNR}(r)) = exp(-T * c * r^alpha)."""
        p = self.params
        if duplex == "FD":
            if link == "D":
                return (p.rsi_user + p.sigma2) / p.bs_power(k)
            return (p.rsi_bs(k) + p.sigma2) / p.pu
        if link == "D":
            return p.sigma2 / p.bs_power(k)
        return p.sigma2 / p.pu

    def ccdf_point(
        self,
        channel: int,
        duplex: str,
        link: str,
        k: int,
        T: float,
        *,
        components: tuple | None = None,
        force_snr_gate: bool = False,
    ) -> float:
        """P(theta > T) for one tier-k conditional curve, T linear."""
        _validate_label(channel, duplex, link)
        p = self.params
        kk = other_tier(k)
        delta_k = self.scales.delta_k(k)
        if duplex == "FD":
            weight = self.assoc.a_fd[k]
            if weight == 0.0:
                raise ValueError(f"FD curve undefined: association weight is 0 for tier {k}")
            lo, hi = 0.0, min(delta_k, self._f_decay_radius(k))
        else:
            weight = self.assoc.a_hd[k]
            if weight == 0.0:
                raise ValueError(f"HD curve undefined: association weight is 0 for tier {k}")
            lo, hi = delta_k, self._f_decay_radius(k)
            if lo >= hi:
                return 0.0
        comps = components if components is not None else self._factor_components(channel)
        gate_c = self._signal_gate_coef("HD" if force_snr_gate else duplex, link, k)
        direction = "D" if link == "D" else "U"
        norm = 2.0 * math.pi * p.bs_density(k) / weight
        lam_f = self._serving_pdf_scale(k)

        def outer(r_arr):
            r = np.asarray(r_arr, dtype=float)
            f_r = r * np.exp(-math.pi * lam_f * r * r)
            gate = np.exp(-T * gate_c * r**p.alpha)
            vals = norm * gate * f_r
            live = vals > 0.0
            if np.any(live):
                prod = np.ones(live.sum())
                r_live = r[live]
                for t in (k, kk):
                    for comp in comps:
                        prod *= self._factor_batch(comp, k, t, direction, r_live, T)
                vals[live] *= prod
            return vals

        val = integrate(
            outer, lo, hi, self.spec.outer_tol,
            initial_points=geometric_seeds(lo, hi),
            max_rounds=self.spec.max_rounds, max_panels=self.spec.max_panels,
        )
        return min(max(val, 0.0), 1.0)

    def ccdf(self, channel: int, duplex: str, link: str, k: int, t_grid_db) -> CcdfCurve:
        t_grid_db = np.asarray(t_grid_db, dtype=float)
        probs = np.array(
            [self.ccdf_point(channel, duplex, link, k, 10.0 ** (tdb / 10.0)) for tdb in t_grid_db]
        )
        return CcdfCurve(t_grid_db, probs, channel, duplex, link, k)

    def ccdf_mixture(self, channel: int, duplex: str, link: str, t_grid_db) -> CcdfCurve:
        t_grid_db = np.asarray(t_grid_db, dtype=float)
        weights = self.assoc.a_fd if duplex == "FD" else self.assoc.a_hd
        wsum = weights[1] + weights[2]
        if wsum == 0.0:
            raise ValueError(f"{duplex} mixture undefined: total association weight is 0")
        acc = np.zeros_like(t_grid_db)
        for k in (1, 2):
            if weights[k] == 0.0:
                continue
            acc += weights[k] * self.ccdf(channel, duplex, link, k, t_grid_db).probabilities
        return CcdfCurve(t_grid_db, acc / wsum, channel, duplex, link, "mixture")

    # ---- spectral efficiency ------------------------------------------------

    def _se_component(self, channel, duplex, link, k, s_max, **kw) -> float:
        """(1/(2 ln 2)) * int_0^s_max CCDF(e^s - 1) ds  (s = ln(1+T))."""

        def integrand(s_arr):
            return np.array(
                [
                    self.ccdf_point(channel, duplex, link, k, math.expm1(s), **kw)
                    for s in np.asarray(s_arr, dtype=float)
                ]
            )

        val = integrate(
            integrand, 0.0, s_max, self.spec.outer_tol,
            initial_points=[s_max * 0.05, s_max * 0.15, s_max * 0.3, s_max * 0.5],
            max_rounds=self.spec.max_rounds, max_panels=self.spec.max_panels,
        )
        return val / (2.0 * LN2)

    def _check_tail(self, channel, duplex, link, k, t_max, accum, **kw):
        c_end = self.ccdf_point(channel, duplex, link, k, t_max, **kw)
        tail = c_end * self.params.alpha / 2.0 / (2.0 * LN2)
        if accum > 0.0 and tail > 1e-6 * accum:
            raise TailTruncationError(
                f"T_max={t_max:g} too small for curve {(channel, duplex, link, k)}: "
                f"CCDF(T_max)={c_end:.3e}, est. tail {tail:.3e} vs accumulated {accum:.3e}"
            )

    def spectral_efficiency(self, t_max: float = 1e13) -> SpectralEfficiencyReport:
        """Theorem-3 spectral efficiencies (per-class breakdown and aggregates)."""
        s_max = math.log1p(t_max)
        a_fd, a_hd = self.assoc.a_fd, self.assoc.a_hd
        breakdown = {}
        for k in (1, 2):
            for channel in (1, 2):
                if a_fd[k] > 0.0:
                    for link in ("D", "U"):
                        breakdown[(channel, "FD", link, k)] = self._se_component(
                            channel, "FD", link, k, s_max
                        )
                if a_hd[k] > 0.0:
                    link = "D" if channel == 1 else "U"
                    breakdown[(channel, "HD", link, k)] = self._se_component(
                        channel, "HD", link, k, s_max
                    )
        for (channel, duplex, link, k), val in breakdown.items():
            self._check_tail(channel, duplex, link, k, t_max, val)
        return self._assemble_report(breakdown)

    def _assemble_report(self, breakdown) -> SpectralEfficiencyReport:
        a_fd, a_hd, a_tier = self.assoc.a_fd, self.assoc.a_hd, self.assoc.a_tier

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
            s_k = (
                a_fd[k]
                * (
                    get(1, "FD", "D", k) + get(1, "FD", "U", k)
                    + get(2, "FD", "D", k) + get(2, "FD", "U", k)
                )
                + a_hd[k] * (get(1, "HD", "D", k) + get(2, "HD", "U", k))
            )
            s_tier[k] = s_k / a_tier[k]
        total = sum(
            (a_fd[k] if dup == "FD" else a_hd[k]) * val
            for (ch, dup, link, k), val in breakdown.items()
        )
        return SpectralEfficiencyReport(
            s_total=total, s_downlink=s_down, s_uplink=s_up, s_tier=s_tier,
            breakdown=dict(breakdown),
        )


# ---- corollary regimes (specialized code paths) ------------------------------


@dataclass
class CorollaryResult:
    curves: dict  # (link, tier) -> CcdfCurve, tier in {1, 2, "mixture"}
    se_total: float
    se_downlink: float
    se_uplink: float


class _HalfOnlyModel(SinrModel):
    """Pure-HD network (gamma = inf): only the HD factor survives per channel."""

    def __init__(self, params, spec=None):
        super().__init__(replace(params, gamma1=math.inf, gamma2=math.inf), spec)

    def point(self, link, k, T):
        comp = (intens.BS_HD,) if link == "D" else (intens.USER_HD,)
        channel = 1 if link == "D" else 2
        return self.ccdf_point(channel, "HD", link, k, T, components=comp)


class _FullOnlyApproxModel(SinrModel):
    """Pure-FD network, perfect SIC, FD-user interference neglected."""

    def __init__(self, params, spec=None):
        super().__init__(replace(params, gamma1=0.0, gamma2=0.0, beta=0.0), spec)

    def point(self, link, k, T):
        # only the FD BS factor; with beta = 0 the SSINR gate equals SNR
        return self.ccdf_point(
            1 if link == "D" else 2, "FD", link, k, T,
            components=(intens.BS_FD,), force_snr_gate=True,
        )


def corollary_limits(
    mode: str,
    params: NetworkParams,
    t_grid_db,
    spec: QuadratureSpec | None = None,
    t_max: float = 1e13,
) -> CorollaryResult:
    """Closed-regime curves and spectral efficiency.

    mode "half_only": gamma = inf everywhere (Corollary-1/3 forms). mode
    "full_only_approx": gamma = 0, perfect SIC, FD-user interference
    dropped (Corollary-2/4 forms). Curves are channel-degenerate in both
    regimes; the D curve is labeled channel 1, the U curve channel 2.
    """
    if mode not in ("half_only", "full_only_approx"):
        raise ValueError(f"unknown corollary mode: {mode}")
    model = _HalfOnlyModel(params, spec) if mode == "half_only" else _FullOnlyApproxModel(params, spec)
    duplex = "HD" if mode == "half_only" else "FD"
    t_grid_db = np.asarray(t_grid_db, dtype=float)
    a_tier = model.assoc.a_tier

    curves = {}
    for link in ("D", "U"):
        channel = 1 if link == "D" else 2
        mix = np.zeros_like(t_grid_db)
        for k in (1, 2):
            probs = np.array(
                [model.point(link, k, 10.0 ** (tdb / 10.0)) for tdb in t_grid_db]
            )
            curves[(link, k)] = CcdfCurve(t_grid_db, probs, channel, duplex, link, k)
            mix += a_tier[k] * probs
        curves[(link, "mixture")] = CcdfCurve(t_grid_db, mix, channel, duplex, link, "mixture")

    # Corollary 3: S = 1/(2 ln2) sum_k A_k int (C_D + C_U)/(1+T) dT;
    # Corollary 4: the same with prefactor 1/ln2 (each channel doubles).
    s_max = math.log1p(t_max)
    chan_factor = 1.0 if mode == "half_only" else 2.0
    se_d = se_u = 0.0
    for k in (1, 2):
        for link in ("D", "U"):

            def integrand(s_arr, _k=k, _link=link):
                return np.array(
                    [model.point(_link, _k, math.expm1(s)) for s in np.asarray(s_arr, dtype=float)]
                )

            val = (
                integrate(
                    integrand, 0.0, s_max, model.spec.outer_tol,
                    initial_points=[s_max * 0.05, s_max * 0.15, s_max * 0.3, s_max * 0.5],
                    max_rounds=model.spec.max_rounds, max_panels=model.spec.max_panels,
                )
                / (2.0 * LN2)
                * chan_factor
            )
            c_end = model.point(link, k, t_max)
            tail = c_end * params.alpha / 2.0 / (2.0 * LN2) * chan_factor
            if val > 0 and tail > 1e-6 * val:
                raise TailTruncationError(
                    f"T_max={t_max:g} too small in corollary mode {mode} ({link}, tier {k})"
                )
            if link == "D":
                se_d += a_tier[k] * val
            else:
                se_u += a_tier[k] * val
    return CorollaryResult(
        curves=curves, se_total=se_d + se_u, se_downlink=se_d, se_uplink=se_u
    )


# ---- module-level spec operations (thin wrappers) ----------------------------


def laplace(
    component: str,
    k: int,
    t: int,
    direction: str,
    r: float,
    T: float,
    params: NetworkParams,
    spec: QuadratureSpec | None = None,
) -> float:
    """One interference Laplace factor; value in (0, 1]."""
    if r <= 0.0 or T < 0.0:
        raise ValueError("require r > 0 and T >= 0")
    if component not in intens.NODE_CLASSES:
        raise ValueError(f"unknown component: {component}")
    if direction not in ("D", "U"):
        raise ValueError(f"unknown direction: {direction}")
    model = SinrModel(params, spec)
    return float(model._factor_compute(component, k, t, direction, np.array([r]), T)[0])


def ccdf(
    channel: int,
    duplex: str,
    link: str,
    k: int,
    t_grid_db,
    params: NetworkParams,
    spec: QuadratureSpec | None = None,
) -> CcdfCurve:
    return SinrModel(params, spec).ccdf(channel, duplex, link, k, t_grid_db)


def ccdf_mixture(
    channel: int,
    duplex: str,
    link: str,
    t_grid_db,
    params: NetworkParams,
    spec: QuadratureSpec | None = None,
) -> CcdfCurve:
    return SinrModel(params, spec).ccdf_mixture(channel, duplex, link, t_grid_db)


def spectral_efficiency(
    params: NetworkParams,
    t_max: float = 1e13,
    spec: QuadratureSpec | None = None,
) -> SpectralEfficiencyReport:
    return SinrModel(params, spec).spectral_efficiency(t_max)


def default_t_grid_db(lo: float = -20.0, hi: float = 40.0, step: float = 0.5) -> np.ndarray:
    n = int(round((hi - lo) / step))
    return np.linspace(lo, hi, n + 1)
