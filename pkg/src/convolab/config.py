"""Order caps and float tolerances, overridable via config file or environment."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

ENV_MAX_ORDER = "CONVOLAB_MAX_ORDER"


@dataclass(frozen=True)
class ToolConfig:
    # order caps
    max_order: int = 64
    subgroup_max_order: int = 48
    closure_budget: int = 10_000
    # float tolerances
    rep_tol: float = 1e-10          # homomorphism / unitarity / transform identities
    penrose_tol: float = 1e-9       # Penrose identities for blockwise pseudoinverses
    positivity_tol: float = 1e-9    # nonnegativity slack for inverse-transform candidates
    char_tol: float = 1e-8          # character orthogonality / irreducibility / Plancherel
    min_singular: float = 1e-6      # smallest singular value for a certified-invertible block
    pinv_rtol: float = 1e-9         # relative cutoff for singular values in pseudoinverses
    rationalize_max_den: int = 10**6


def load_config(path: str | None = None) -> ToolConfig:
    """Build a ToolConfig from defaults, an optional JSON file, and the environment.

    The JSON file may override any field by name.  CONVOLAB_MAX_ORDER, when
    set, overrides max_order last.
    """
    cfg = ToolConfig()
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(ToolConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(cfg, **data)
    env = os.environ.get(ENV_MAX_ORDER)
    if env is not None:
        cfg = replace(cfg, max_order=int(env))
    return cfg


DEFAULT_CONFIG = ToolConfig()
