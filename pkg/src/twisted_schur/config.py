"""Run configuration: resource budgets, output format, caching, parallelism."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import InputError


@dataclass(frozen=True)
class RunConfig:
    """Budgets and knobs shared by the engine operations and the CLI.

    All budgets are positive.  ``seed`` only influences randomized self-test
    suites; every other operation is fully deterministic.
    """

    max_group_order: int = 20000      # cap for permutation/semilinear closures
    max_cochain_basis: int = 40000    # cap on (|G|-1)^n for any materialized degree
    max_closure_order: int = 10000    # cap for semilinear group closures
    max_iso_order: int = 128          # per-group cap for isomorphism testing
    max_module_order: int = 64        # cap on |A| in module-structure enumeration
    output_format: str = "text"       # "text" | "json"
    cache_dir: Optional[str] = None   # directory for the optional disk cache
    parallelism: int = 1              # candidate fan-out width in repgroups
    seed: int = 0                     # RNG seed for self-test suites

    def __post_init__(self):
        for name in ("max_group_order", "max_cochain_basis", "max_closure_order",
                     "max_iso_order", "max_module_order", "parallelism"):
            if getattr(self, name) <= 0:
                raise InputError(f"config budget {name!r} must be positive")
        if self.output_format not in ("text", "json"):
            raise InputError(f"output_format must be 'text' or 'json', got {self.output_format!r}")

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)


DEFAULT_CONFIG = RunConfig()
