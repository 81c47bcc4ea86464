"""Grid densities used by sweeps, figures and verification.

``TILTSTAB_GRID`` overrides the defaults.  A bare integer sets every
density; ``key=value`` pairs separated by commas set individual ones, for
example ``TILTSTAB_GRID="star=96,brute=32"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "TILTSTAB_GRID"


@dataclass(frozen=True)
class GridConfig:
    star: int = 48  # denominator of the star-shapedness grid
    samples: int = 200  # t-values per case interval in closed-form checks
    wall: int = 50  # t-values per branch in first-wall checks
    brute: int = 64  # lattice size of the brute-force polygon search
    plot: int = 64  # samples per unit length in figures

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def parse_grid(text: str, base: GridConfig | None = None) -> GridConfig:
    base = base or GridConfig()
    text = text.strip()
    if not text:
        return base
    if text.isdigit():
        n = int(text)
        if n <= 0:
            raise ValueError(f"{ENV_VAR} must be positive")
        return replace(base, **{f.name: n for f in fields(base)})
    names = {f.name for f in fields(base)}
    updates = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"bad {ENV_VAR} entry {item!r}; keys are {sorted(names)}")
        n = int(value)
        if n <= 0:
            raise ValueError(f"{ENV_VAR} entry {key} must be positive")
        updates[key] = n
    return replace(base, **updates)


def grid_config(env=None) -> GridConfig:
    env = os.environ if env is None else env
    return parse_grid(env.get(ENV_VAR, ""))
