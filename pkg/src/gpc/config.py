"""Runtime limits, configurable via environment variables.

GPC_NODE_BUDGET   search-tree node budget for the homomorphism solver
GPC_VERTEX_CAP    vertex cap for combinatorial constructions
GPC_COLOR_BUDGET  partial-node budget for coloring enumeration
GPC_JOBS          worker processes for lattice sweeps (1 = serial)
"""

import os

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_VERTEX_CAP = 200_000
DEFAULT_COLOR_BUDGET = 10_000_000
DEFAULT_JOBS = 1


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def node_budget(override: int | None = None) -> int:
    return override if override is not None else _env_int("GPC_NODE_BUDGET", DEFAULT_NODE_BUDGET)


def vertex_cap(override: int | None = None) -> int:
    return override if override is not None else _env_int("GPC_VERTEX_CAP", DEFAULT_VERTEX_CAP)


def color_budget(override: int | None = None) -> int:
    return override if override is not None else _env_int("GPC_COLOR_BUDGET", DEFAULT_COLOR_BUDGET)


def jobs(override: int | None = None) -> int:
    return max(1, override if override is not None else _env_int("GPC_JOBS", DEFAULT_JOBS))
