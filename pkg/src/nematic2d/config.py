"""Run configuration and the line-based `key = value` config file format."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path


from .diagnostics import SerrinExponents
from .fields import Grid2D

_FLOAT_KEYS = {"lx", "ly", "dt", "cfl", "t_end", "rho_bar", "e1", "e2", "e3",
               "serrin_r", "serrin_s", "tol_unit", "cg_tol"}
_INT_KEYS = {"nx", "ny", "cadence", "cg_max_iter", "seed"}
_STR_KEYS = {"scenario", "out_dir"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS


@dataclass
class SimConfig:
    nx: int = 64
    ny: int = 64
    lx: float = 1.0
    ly: float = 1.0
    t_end: float = 1.0
    dt: float | None = None        # None selects CFL-adaptive stepping
    cfl: float = 0.9
    rho_bar: float = 1.0
    e: tuple[float, float, float] = (0.0, 0.0, 1.0)
    serrin_r: float = 4.0
    serrin_s: float = 4.0
    cadence: int = 1
    tol_unit: float = 1e-6
    cg_tol: float = 1e-10
    cg_max_iter: int = 500
    scenario: str = "rest"
    scenario_params: dict = field(default_factory=dict)
    seed: int = 0
    out_dir: str = "out"

    def __post_init__(self) -> None:
        if self.rho_bar <= 0.0:
            raise ValueError("rho_bar must be positive")
        if self.t_end <= 0.0:
            raise ValueError("t_end must be positive")
        if self.dt is not None and self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.cadence < 1:
            raise ValueError("cadence must be at least 1")
        n = math.sqrt(sum(c * c for c in self.e))
        if abs(n - 1.0) > 1e-9:
            raise ValueError("far-field director must be a unit vector")
        self.e = tuple(c / n for c in self.e)
        self.serrin_exponents()  # validates (r, s)

    def grid(self) -> Grid2D:
        return Grid2D(self.nx, self.ny, self.lx, self.ly)

    def serrin_exponents(self) -> SerrinExponents:
        return SerrinExponents(self.serrin_r, self.serrin_s)


def parse_config(path: str | Path) -> SimConfig:
    """Read a UTF-8 `key = value` file; unknown keys are errors.

    Scenario parameters use the `scenario.<name>` prefix. Blank lines and
    lines starting with '#' are skipped. `serrin_r = inf` is accepted.
    """
    kwargs: dict = {}
    scen: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8")
                                 .splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key.startswith("scenario."):
            pname = key[len("scenario."):]
            if not pname:
                raise ValueError(f"{path}:{lineno}: empty scenario parameter")
            scen[pname] = _parse_scalar(value)
        elif key in _FLOAT_KEYS:
            kwargs[key] = float(value)
        elif key in _INT_KEYS:
            kwargs[key] = int(value)
        elif key in _STR_KEYS:
            kwargs[key] = value
        else:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")

    e = (kwargs.pop("e1", 0.0), kwargs.pop("e2", 0.0), kwargs.pop("e3", 1.0))
    return SimConfig(e=e, scenario_params=scen, **kwargs)


def _parse_scalar(value: str):
    try:
        return float(value)
    except ValueError:
        return value
