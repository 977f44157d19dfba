"""Flat key=value experiment configs, one dataclass per subcommand.

A config file holds ``key = value`` lines (``#`` comments allowed); lists are
comma separated. Every numeric field is validated before any computation.
"""
from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path


class ConfigError(ValueError):
    """Unparseable config or a parameter outside its operation's preconditions."""


def _require(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


@dataclass
class BaseConfig:
    seed: int = 0

    def validate(self) -> None:
        _require(self.seed >= 0, "seed must be >= 0")


@dataclass
class NodesConfig(BaseConfig):
    c: float = 0.2
    a: float = 0.5
    count: int = 256
    symmetric: bool = True
    s: float = 1.0
    tail_window: int = 64
    subcritical_threshold: float = 0.5
    envelope_C: float = 2.0
    envelope_eps: float = 0.1
    burn_in: int = 0
    jitter: float = 0.0

    def validate(self):
        super().validate()
        _require(self.c > 0, "c must be positive")
        _require(0 < self.a <= 1, "a must lie in (0, 1]")
        _require(self.count >= 2, "count must be >= 2")
        _require(self.s >= 0, "s must be >= 0")
        _require(1 <= self.tail_window < self.count, "tail_window must lie in [1, count)")
        _require(self.envelope_C > 0 and self.envelope_eps > 0, "envelope_C and envelope_eps must be positive")
        _require(0 <= self.jitter < 0.4, "jitter must lie in [0, 0.4)")


@dataclass
class KernelConfig(BaseConfig):
    u_values: list = field(default_factory=lambda: [1.0, 2.0])
    k_values: list = field(default_factory=lambda: [2, 3, 5])
    xi_max: float = 4.0
    xi_count: int = 161
    step: float = 2.0 ** -10
    fourier_tol: float = 1e-6
    invariant_tol: float = 1e-10

    def validate(self):
        super().validate()
        _require(len(self.u_values) > 0 and all(u > 0 for u in self.u_values), "u_values must be positive")
        _require(len(self.k_values) > 0 and all(int(k) == k and k >= 1 for k in self.k_values),
                 "k_values must be positive integers")
        _require(self.xi_max > 0 and self.xi_count >= 2, "need xi_max > 0 and xi_count >= 2")
        _require(0 < self.step <= 0.01, "step must lie in (0, 0.01]")


@dataclass
class BatteryConfig(BaseConfig):
    trials: int = 200
    convex_phi_trials: int = 200

    def validate(self):
        super().validate()
        _require(self.trials >= 1, "trials must be >= 1")
        _require(self.convex_phi_trials >= 0, "convex_phi_trials must be >= 0")


@dataclass
class MomentsConfig(BaseConfig):
    profile: str = "psi0"
    n: int = 0
    a: float = math.pi
    p_max: float = 40.0
    p_step: float = 1.0
    side: str = "space"
    radius: float = 12.0
    step: float = 1 / 64

    def validate(self):
        super().validate()
        _require(self.profile in ("psi0", "hermite", "gaussian"), "profile must be psi0, hermite or gaussian")
        _require(self.n >= 0, "n must be >= 0")
        _require(self.a > 0, "a must be positive")
        _require(self.p_max >= 1, "p_max must be >= 1")
        _require(self.p_step > 0, "p_step must be positive")
        _require(self.side in ("space", "frequency"), "side must be space or frequency")
        _require(self.radius > 0 and self.step > 0, "radius and step must be positive")


@dataclass
class ScanConfig(BaseConfig):
    c_values: list = field(default_factory=lambda: [0.2, 1.6])
    N_values: list = field(default_factory=lambda: [32, 64, 128, 192, 256])
    node_exponent: float = 0.5
    margin: float = 0.25
    tol: float = 1e-8

    def validate(self):
        super().validate()
        _require(len(self.c_values) > 0 and all(c > 0 for c in self.c_values), "c_values must be positive")
        _require(len(self.N_values) > 0 and all(int(N) == N and N >= 1 for N in self.N_values),
                 "N_values must be positive integers")
        _require(0 < self.node_exponent <= 1, "node_exponent must lie in (0, 1]")
        _require(self.margin >= 0, "margin must be >= 0")
        _require(self.tol > 0, "tol must be positive")


@dataclass
class HardyConfig(BaseConfig):
    A_values: list = field(default_factory=lambda: [1.0, 1.5])
    c: float = 0.2
    N_values: list = field(default_factory=lambda: [32, 64, 128, 256])
    margin: float = 0.25

    def validate(self):
        super().validate()
        _require(len(self.A_values) > 0 and all(A > 0 for A in self.A_values), "A_values must be positive")
        _require(self.c > 0, "c must be positive")
        _require(len(self.N_values) > 0 and all(int(N) == N and N >= 1 for N in self.N_values),
                 "N_values must be positive integers")
        _require(self.margin >= 0, "margin must be >= 0")


@dataclass
class CounterexampleConfig(BaseConfig):
    c: float = 1.6
    N: int = 192
    margin: float = 0.25
    tol: float = 1e-8
    window_radius: float = 0.0
    per_unit: int = 64

    def validate(self):
        super().validate()
        _require(self.c > 0, "c must be positive")
        _require(self.N >= 1, "N must be >= 1")
        _require(self.margin >= 0 and self.tol > 0, "need margin >= 0 and tol > 0")
        _require(self.window_radius >= 0, "window_radius must be >= 0 (0 selects the default)")
        _require(self.per_unit >= 1, "per_unit must be >= 1")


@dataclass
class NegativeDemoConfig(BaseConfig):
    spacing: float = 1.0
    node_radius: float = 256.0
    radius: float = 256.0
    step: float = 1 / 32
    g_scale: float = 1.0
    psi_amplitude: float = 1.0
    freq_window: float = 4.0
    freq_step: float = 1 / 4096
    space_tol: float = 1e-12
    freq_tol: float = 1e-5
    min_global_dev: float = 0.05

    def validate(self):
        super().validate()
        _require(self.spacing > 0 and self.node_radius >= self.spacing, "need spacing > 0 and node_radius >= spacing")
        _require(self.radius > 0 and self.step > 0, "radius and step must be positive")
        _require(self.freq_window > 0 and self.freq_step > 0, "freq_window and freq_step must be positive")
        _require(self.g_scale != 0, "g_scale must be nonzero")


@dataclass
class CertificateConfig(BaseConfig):
    alpha: float = math.pi
    c_values: list = field(default_factory=lambda: [0.2])
    count: int = 4000
    tail_fraction: float = 0.5

    def validate(self):
        super().validate()
        _require(self.alpha > 0, "alpha must be positive")
        _require(len(self.c_values) > 0 and all(c > 0 for c in self.c_values), "c_values must be positive")
        _require(self.count >= 16, "count must be >= 16")
        _require(0 < self.tail_fraction <= 1, "tail_fraction must lie in (0, 1]")


COMMAND_CONFIGS = {
    "nodes": NodesConfig,
    "kernel": KernelConfig,
    "wirtinger": BatteryConfig,
    "moments": MomentsConfig,
    "chain": BatteryConfig,
    "uniqueness-scan": ScanConfig,
    "hardy-scan": HardyConfig,
    "counterexample": CounterexampleConfig,
    "negative-demo": NegativeDemoConfig,
    "certificate": CertificateConfig,
    "annulus": BatteryConfig,
}

_BATTERY_DEFAULT_TRIALS = {"wirtinger": 500, "chain": 100, "annulus": 200}


def _coerce(raw: str, default, name: str):
    raw = raw.strip()
    try:
        if isinstance(default, bool):
            low = raw.lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return low in ("true", "1", "yes")
        if isinstance(default, list):
            vals = [eval_fraction(v.strip()) for v in raw.split(",") if v.strip()]
            if default and all(isinstance(v, int) for v in default):
                if any(v != int(v) for v in vals):
                    raise ValueError(raw)
                return [int(v) for v in vals]
            return vals
        if isinstance(default, int):
            v = float(raw)
            if v != int(v):
                raise ValueError(raw)
            return int(v)
        if isinstance(default, float):
            return float(eval_fraction(raw))
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {name!r}: {raw!r}") from exc


def eval_fraction(raw: str) -> float:
    """Float literal or a fraction such as 1/32."""
    if "/" in raw:
        num, den = raw.split("/", 1)
        return float(num) / float(den)
    return float(raw)


def parse_text(text: str) -> dict:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"config does not parse: {exc}") from exc
    return dict(parser["run"])


def load_config(command: str, path=None, overrides: dict | None = None):
    if command not in COMMAND_CONFIGS:
        raise ConfigError(f"unknown command {command!r}")
    cls = COMMAND_CONFIGS[command]
    cfg = cls()
    if command in _BATTERY_DEFAULT_TRIALS:
        cfg.trials = _BATTERY_DEFAULT_TRIALS[command]
    raw = {}
    if path is not None:
        try:
            raw = parse_text(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown keys for {command}: {', '.join(unknown)}")
    for k, v in raw.items():
        setattr(cfg, k, _coerce(v, getattr(cfg, k), k))
    for k, v in (overrides or {}).items():
        if v is not None:
            setattr(cfg, k, v)
    cfg.validate()
    return cfg
