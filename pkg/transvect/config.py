"""
Configuration settings for the transvection orbit toolkit.

Loads limits, budgets and defaults from environment variables.
"""

import os
from dataclasses import dataclass


@dataclass
class Settings:
    """Toolkit settings loaded from environment variables"""

    # Linear algebra
    max_dim: int = max(24, int(os.getenv("TRANSVECT_MAX_DIM", "24")))

    # Orbit enumeration
    visited_budget: int = int(os.getenv("TRANSVECT_VISITED_BUDGET", str(2**24)))

    # Graph machinery
    clique_bound: int = int(os.getenv("TRANSVECT_CLIQUE_BOUND", "32"))
    equivalence_vertex_bound: int = int(os.getenv("TRANSVECT_EQUIVALENCE_VERTICES", "7"))
    equivalence_budget: int = int(os.getenv("TRANSVECT_EQUIVALENCE_BUDGET", "200000"))
    normalize_budget: int = int(os.getenv("TRANSVECT_NORMALIZE_BUDGET", "100000"))

    # Verification
    seed: int = int(os.getenv("TRANSVECT_SEED", "20240601"))
    quick_trials: int = int(os.getenv("TRANSVECT_QUICK_TRIALS", "64"))
    full_trials: int = int(os.getenv("TRANSVECT_FULL_TRIALS", "1000"))

    # Class cache
    cache_path: str = os.getenv("TRANSVECT_CACHE_PATH", "")

    # Logging
    log_level: str = os.getenv("TRANSVECT_LOG_LEVEL", "WARNING").upper()


# Singleton settings instance
settings = Settings()
