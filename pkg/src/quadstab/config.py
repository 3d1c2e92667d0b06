"""Runtime configuration: caps, budgets, census defaults, PRNG seed.

Every cap can be overridden by a QUADSTAB_* environment variable or a
key=value config file passed to the CLI.  The seed is recorded in every
report so randomized steps (equal-degree splitting, probable-prime bases)
are reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

_ENV_PREFIX = "QUADSTAB_"


@dataclass(frozen=True)
class Config:
    orbit_depth_cap: int = 12
    iterate_degree_cap: int = 2**14
    factor_degree_cap: int = 2**10
    trial_bound: int = 10**6
    rho_iterations: int = 10**7
    factor_time_cap_ms: int = 30_000
    census_prefix_depth: int = 20
    census_kill_depth: int = 25
    census_segment_size: int = 1 << 21
    seed: int = 20259
    workers: int = 1

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"config field {f.name} must be positive")

    @classmethod
    def from_env(cls, base: "Config | None" = None) -> "Config":
        cfg = base or cls()
        overrides = {}
        for f in fields(cls):
            raw = os.environ.get(_ENV_PREFIX + f.name.upper())
            if raw is not None:
                overrides[f.name] = int(raw)
        return replace(cfg, **overrides) if overrides else cfg

    @classmethod
    def from_file(cls, path: str, base: "Config | None" = None) -> "Config":
        """Read key=value lines; '#' starts a comment; unknown keys rejected."""
        cfg = base or cls()
        names = {f.name for f in fields(cls)}
        overrides = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in names:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                overrides[key] = int(value.strip())
        return replace(cfg, **overrides)


DEFAULT_CONFIG = Config()
