"""Network parameters, unit conversions and derived distance scales.

All internal computation is in SI units: Watts, meters, densities per m^2.
dBm / dB / per-km^2 appear only at the I/O boundary (config files, CLI).
The duplex thresholds gamma are stored linear in Watts; gamma = 0 and
gamma = +inf are legal sentinels encoding the pure-FD and pure-HD regimes.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field


class ConfigError(Exception):
    """Invalid configuration file or parameter set."""


def dbm_to_watts(x: float) -> float:
    """Power conversion, e.g. 30 dBm -> 1 W."""
    return 10.0 ** ((x - 30.0) / 10.0)


def watts_to_dbm(x: float) -> float:
    return 10.0 * math.log10(x) + 30.0


def db_to_linear(x: float) -> float:
    """Ratio conversion, e.g. 0 dB -> 1.0. Accepts +-inf sentinels."""
    if x == math.inf:
        return math.inf
    if x == -math.inf:
        return 0.0
    return 10.0 ** (x / 10.0)


def linear_to_db(x: float) -> float:
    if x == 0.0:
        return -math.inf
    if x == math.inf:
        return math.inf
    return 10.0 * math.log10(x)


def path_loss(d, alpha: float):
    """Distance-power gain d^-alpha (d in meters). Scalar or ndarray.

    d = 0 is singular; callers (the simulator) enforce a minimum separation.
    """
    import numpy as np

    if np.any(np.asarray(d) <= 0.0):
        raise ValueError("path_loss requires d > 0 (singular at d = 0)")
    return np.asarray(d, dtype=float) ** (-alpha) if not np.isscalar(d) else float(d) ** (-alpha)


def noise_power(channel_bandwidth_hz: float, noise_dbm_hz: float) -> float:
    """Thermal noise power in W over one channel's bandwidth."""
    if channel_bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return dbm_to_watts(noise_dbm_hz + 10.0 * math.log10(channel_bandwidth_hz))


# Spec'd config keys -> internal construction. Section names are free-form;
# every key must be one of these, anywhere in the file.
CONFIG_KEYS = (
    "lambda1_per_km2",
    "lambda2_per_km2",
    "lambda_u_per_km2",
    "p1_dbm",
    "p2_dbm",
    "pu_dbm",
    "alpha",
    "beta_db",
    "gamma1_db",
    "gamma2_db",
    "bandwidth_hz",
    "noise_dbm_hz",
)

# Section V defaults (lambda_u = 150 for the optimization experiments).
DEFAULT_CONFIG = {
    "lambda1_per_km2": 1.0,
    "lambda2_per_km2": 10.0,
    "lambda_u_per_km2": 50.0,
    "p1_dbm": 46.0,
    "p2_dbm": 30.0,
    "pu_dbm": 23.0,
    "alpha": 3.5,
    "beta_db": -70.0,
    "gamma1_db": -71.0,
    "gamma2_db": -76.0,
    "bandwidth_hz": 20e6,
    "noise_dbm_hz": -174.0,
}

_PER_KM2 = 1e-6  # per km^2 -> per m^2


@dataclass(frozen=True)
class NetworkParams:
    """Immutable parameter set, all fields linear SI.

    lambda1/lambda2/lambda_u: node densities per m^2.
    p1/p2/pu: transmit powers in W.
    beta: linear RSI ratio; rsi_k = beta * p_k, rsi_u = beta * pu.
    gamma1/gamma2: duplex thresholds in W (0 => all-FD tier, inf => all-HD).
    sigma2: thermal noise power over one channel (bandwidth_hz / 2).
    """

    lambda1: float
    lambda2: float
    lambda_u: float
    p1: float
    p2: float
    pu: float
    alpha: float
    beta: float
    gamma1: float
    gamma2: float
    bandwidth_hz: float
    noise_dbm_hz: float
    sigma2: float = field(init=False)

    def __post_init__(self):
        if not self.alpha > 2.0:
            raise ConfigError(f"alpha must be > 2 for convergence, got {self.alpha}")
        for name in ("lambda1", "lambda2"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive")
        if self.lambda_u < 0.0:
            raise ConfigError("lambda_u must be nonnegative")
        for name in ("p1", "p2", "pu"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive (W)")
        if self.beta < 0.0:
            raise ConfigError("beta must be >= 0")
        for name in ("gamma1", "gamma2"):
            g = getattr(self, name)
            if math.isnan(g) or g < 0.0:
                raise ConfigError(f"{name} must be in [0, +inf]")
        if self.bandwidth_hz <= 0:
            raise ConfigError("bandwidth_hz must be positive")
        object.__setattr__(
            self, "sigma2", noise_power(self.bandwidth_hz / 2.0, self.noise_dbm_hz)
        )

    # -- boundary constructors -------------------------------------------------

    @classmethod
    def from_config_values(cls, values: dict) -> "NetworkParams":
        """Build from the boundary-unit key set (per-km^2, dBm, dB)."""
        unknown = set(values) - set(CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        v = dict(DEFAULT_CONFIG)
        v.update(values)
        return cls(
            lambda1=v["lambda1_per_km2"] * _PER_KM2,
            lambda2=v["lambda2_per_km2"] * _PER_KM2,
            lambda_u=v["lambda_u_per_km2"] * _PER_KM2,
            p1=dbm_to_watts(v["p1_dbm"]),
            p2=dbm_to_watts(v["p2_dbm"]),
            pu=dbm_to_watts(v["pu_dbm"]),
            alpha=v["alpha"],
            beta=db_to_linear(v["beta_db"]),
            gamma1=db_to_linear(v["gamma1_db"]),
            gamma2=db_to_linear(v["gamma2_db"]),
            bandwidth_hz=v["bandwidth_hz"],
            noise_dbm_hz=v["noise_dbm_hz"],
        )

    @classmethod
    def defaults(cls, **overrides) -> "NetworkParams":
        """Section-V defaults; override with boundary-unit keys."""
        return cls.from_config_values(overrides)

    def with_thresholds(self, gamma1: float, gamma2: float) -> "NetworkParams":
        """Copy with new linear thresholds (W); positions/densities unchanged."""
        return NetworkParams(
            lambda1=self.lambda1, lambda2=self.lambda2, lambda_u=self.lambda_u,
            p1=self.p1, p2=self.p2, pu=self.pu, alpha=self.alpha, beta=self.beta,
            gamma1=gamma1, gamma2=gamma2,
            bandwidth_hz=self.bandwidth_hz, noise_dbm_hz=self.noise_dbm_hz,
        )

    # -- per-tier accessors ----------------------------------------------------

    def bs_density(self, k: int) -> float:
        return self.lambda1 if k == 1 else self.lambda2

    def bs_power(self, k: int) -> float:
        return self.p1 if k == 1 else self.p2

    def gamma(self, k: int) -> float:
        return self.gamma1 if k == 1 else self.gamma2

    def rsi_bs(self, k: int) -> float:
        return self.beta * self.bs_power(k)

    @property
    def rsi_user(self) -> float:
        return self.beta * self.pu

    @property
    def channel_bandwidth_hz(self) -> float:
        return self.bandwidth_hz / 2.0


def other_tier(k: int) -> int:
    return 2 if k == 1 else 1


@dataclass(frozen=True)
class DerivedScales:
    """Distance scales derived from the parameter set (meters).

    delta_k: duplex-switch radius (P_k/gamma_k)^(1/alpha); inf when gamma=0,
    0 when gamma=inf. mu_k(x): equal-received-power distance in the rival
    tier. cap_delta(k, t, r): minimum distance of a tier-t interferer when
    the serving tier-k BS is at distance r.
    """

    params: NetworkParams

    def delta_k(self, k: int) -> float:
        p = self.params
        g = p.gamma(k)
        if g == 0.0:
            return math.inf
        if g == math.inf:
            return 0.0
        return (p.bs_power(k) / g) ** (1.0 / p.alpha)

    def mu_k(self, k: int, x: float) -> float:
        p = self.params
        if x == math.inf:
            return math.inf
        return x * (p.bs_power(other_tier(k)) / p.bs_power(k)) ** (1.0 / p.alpha)

    def cap_delta(self, k: int, t: int, r: float) -> float:
        p = self.params
        return r * (p.bs_power(t) / p.bs_power(k)) ** (1.0 / p.alpha)


def load_config(path: str) -> NetworkParams:
    """Parse an INI-style config; rejects unknown keys, fills defaults."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file: {path}")
    values: dict = {}
    for section in cp.sections():
        for key, raw in cp.items(section):
            if key not in CONFIG_KEYS:
                raise ConfigError(f"unknown config key '{key}' in section [{section}]")
            if key in values:
                raise ConfigError(f"duplicate config key '{key}'")
            try:
                values[key] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"invalid value for '{key}': {raw!r}") from exc
    # keys in the DEFAULT section (outside any [section]) are also accepted
    for key, raw in cp.defaults().items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{key}'")
        try:
            values.setdefault(key, float(raw))
        except ValueError as exc:
            raise ConfigError(f"invalid value for '{key}': {raw!r}") from exc
    return NetworkParams.from_config_values(values)
