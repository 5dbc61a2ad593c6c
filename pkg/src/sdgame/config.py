"""Line-oriented ``key = value`` configuration files.

Recognized keys (missing keys take the documented defaults):

    n, area_side_m, isolation_fraction, timesteps, slot_minutes,
    alpha, beta, alpha_raw, beta_raw, omega, z, log_base,
    proximity_mode, proximity_c, proximity_radius_m,
    delta_max_m, d_min_m, runs, seed, r0, r_tilde_mode, r_tilde_value

Blank lines and ``#`` comment lines are ignored.  ``alpha_raw``, ``beta_raw``
and ``omega`` must appear together; they derive ``alpha = alpha_raw * omega``
and ``beta = beta_raw * (1 - omega)`` and may not contradict explicit
``alpha``/``beta`` values.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError, ParameterError
from .game import PayoffParams
from .geometry import ProximityRule
from .objective import ConstraintBounds
from .scenarios import DEFAULT_HEADROOM_M, ScenarioConfig


@dataclass(frozen=True)
class Settings:
    """Resolved configuration; field names match the file keys."""

    n: int = 500
    area_side_m: float = 1000.0
    isolation_fraction: float = 1.0
    timesteps: int = 6
    slot_minutes: int = 30
    alpha: float = 3.0
    beta: float = 1.0
    alpha_raw: float | None = None
    beta_raw: float | None = None
    omega: float | None = None
    z: float = 1400.0
    log_base: str = "natural"
    proximity_mode: str = "count"
    proximity_c: int = 10
    proximity_radius_m: float = 100.0
    delta_max_m: float = 500.0
    d_min_m: float = 2.0
    runs: int = 50
    seed: int = 42
    r0: float = 5e23
    r_tilde_mode: str = "fraction"
    r_tilde_value: float = 0.10

    def payoff_params(self) -> PayoffParams:
        if self.omega is not None and self.alpha_raw is not None:
            return PayoffParams.from_weights(self.alpha_raw, self.beta_raw, self.omega,
                                             self.z, self.log_base)
        return PayoffParams(alpha=self.alpha, beta=self.beta, z=self.z,
                            omega=self.omega, log_base=self.log_base)

    def proximity_rule(self) -> ProximityRule:
        if self.proximity_mode == "count":
            return ProximityRule.fixed_count(self.proximity_c)
        return ProximityRule.radius(self.proximity_radius_m)

    def constraint_bounds(self) -> ConstraintBounds:
        return ConstraintBounds(delta_max=self.delta_max_m, d_min=self.d_min_m)

    def scenario_config(self, **overrides) -> ScenarioConfig:
        config = ScenarioConfig(
            n=self.n, area_side=self.area_side_m,
            isolation_fraction=self.isolation_fraction, timesteps=self.timesteps,
            params=self.payoff_params(), rule=self.proximity_rule(),
            bounds=self.constraint_bounds(), runs=self.runs,
            master_seed=self.seed, headroom_m=DEFAULT_HEADROOM_M)
        return replace(config, **overrides) if overrides else config

    def r_tilde(self, u_daily: float) -> float:
        """Daily collections, resolving fraction mode against ``u_daily``."""
        if self.r_tilde_mode == "fraction":
            return self.r_tilde_value * u_daily
        return self.r_tilde_value

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_INT_KEYS = {"n", "timesteps", "slot_minutes", "proximity_c", "runs", "seed"}
_FLOAT_KEYS = {"area_side_m", "isolation_fraction", "alpha", "beta", "alpha_raw",
               "beta_raw", "omega", "z", "proximity_radius_m", "delta_max_m",
               "d_min_m", "r0", "r_tilde_value"}
_STR_KEYS = {"log_base", "proximity_mode", "r_tilde_mode"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS

_CHOICES = {
    "log_base": ("natural", "decimal"),
    "proximity_mode": ("count", "radius"),
    "r_tilde_mode": ("fraction", "absolute"),
}

# (low, high, low_inclusive, high_inclusive); None means unbounded
_RANGES = {
    "n": (1, None, True, True),
    "area_side_m": (0, None, False, True),
    "isolation_fraction": (0, 1, True, True),
    "timesteps": (1, None, True, True),
    "slot_minutes": (1, 1440, True, True),
    "alpha": (0, None, True, True),
    "beta": (0, None, True, True),
    "alpha_raw": (0, None, False, True),
    "beta_raw": (0, None, False, True),
    "omega": (0, 1, True, True),
    "z": (0, None, False, True),
    "proximity_c": (1, None, True, True),
    "proximity_radius_m": (0, None, False, True),
    "delta_max_m": (0, None, True, True),
    "d_min_m": (0, None, False, True),
    "runs": (1, None, True, True),
    "seed": (0, 2 ** 64 - 1, True, True),
    "r0": (0, None, True, True),
    "r_tilde_value": (0, None, True, True),
}


def _range_text(key: str) -> str:
    low, high, low_inc, high_inc = _RANGES[key]
    left = "[" if low_inc else "("
    right = "]" if high_inc else ")"
    return f"{left}{low}, {'inf' if high is None else high}{right}"


def _check_range(key: str, value) -> None:
    if key not in _RANGES or value is None:
        return
    low, high, low_inc, high_inc = _RANGES[key]
    ok = (value >= low if low_inc else value > low)
    if high is not None:
        ok = ok and (value <= high if high_inc else value < high)
    if not ok:
        raise ConfigError(f"key {key!r}: value {value} outside allowed range {_range_text(key)}")


def parse_config(text: str) -> Settings:
    """Parse config text; unknown keys, bad values and duplicates are errors."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value_text = line.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r}; valid keys: {', '.join(sorted(_ALL_KEYS))}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value_text)
            elif key in _FLOAT_KEYS:
                values[key] = float(value_text)
            else:
                values[key] = value_text
        except ValueError:
            kind = "an integer" if key in _INT_KEYS else "a number"
            raise ConfigError(f"line {lineno}: key {key!r} needs {kind}, got {value_text!r}") from None
    return build_settings(values)


def build_settings(values: dict) -> Settings:
    """Validate a key/value mapping and fill in defaults."""
    for key, value in values.items():
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}; valid keys: {', '.join(sorted(_ALL_KEYS))}")
        if key in _CHOICES and value not in _CHOICES[key]:
            raise ConfigError(
                f"key {key!r}: value {value!r} not one of {', '.join(_CHOICES[key])}")
        _check_range(key, value)
    raw_given = [k for k in ("alpha_raw", "beta_raw", "omega") if values.get(k) is not None]
    if raw_given and ("alpha_raw" in raw_given or "beta_raw" in raw_given):
        missing = {"alpha_raw", "beta_raw", "omega"} - set(raw_given)
        if missing:
            raise ConfigError(
                f"base incentives need alpha_raw, beta_raw and omega together; missing {', '.join(sorted(missing))}")
    settings = Settings(**values)
    if settings.alpha_raw is not None:
        derived_alpha = settings.alpha_raw * settings.omega
        derived_beta = settings.beta_raw * (1 - settings.omega)
        if "alpha" in values and values["alpha"] != derived_alpha:
            raise ConfigError(
                f"key 'alpha': {values['alpha']} contradicts alpha_raw*omega = {derived_alpha}")
        if "beta" in values and values["beta"] != derived_beta:
            raise ConfigError(
                f"key 'beta': {values['beta']} contradicts beta_raw*(1-omega) = {derived_beta}")
        settings = replace(settings, alpha=derived_alpha, beta=derived_beta)
    try:
        settings.payoff_params()
        settings.proximity_rule()
        settings.constraint_bounds()
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc
    return settings


def load_config(path) -> Settings:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)


def format_config(settings: Settings) -> str:
    """Serialize settings so that parsing the result reproduces them."""
    lines = []
    for f in fields(Settings):
        value = getattr(settings, f.name)
        if value is None:
            continue
        lines.append(f"{f.name} = {value!r}" if isinstance(value, float)
                     else f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def save_config(settings: Settings, path) -> None:
    Path(path).write_text(format_config(settings), encoding="utf-8")
