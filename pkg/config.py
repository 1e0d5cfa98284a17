"""
Configuration for kron runs.

Module-level constants are the defaults; RunConfig is the immutable value
passed through the CLI, the Flask app and the selftest.
"""

import hashlib
import os
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

from errors import InvalidInputError

# Run defaults
DEFAULT_SEED = 0
DEFAULT_TRIALS = 32
DEFAULT_FORMAT = "json"
OUTPUT_FORMATS = ("json", "csv", "text")
SEED_ENV_VAR = "KRON_SEED"
SEED_BITS = 64

# Random curves: integer coefficients in [-COEFF_BOUND, COEFF_BOUND]
COEFF_BOUND = 9
MAX_REJECTIONS = 1000

# Randomized slice certificates sample integer points in [-SAMPLE_BOUND, SAMPLE_BOUND]^r
SAMPLE_BOUND = 1000

# Sample counts of the acceptance criteria (scaled by RunConfig.scale)
SAMPLE_SIZES: Dict[str, int] = {
    "ghione_sacchiero": 100,
    "pn_dimensions": 25,
    "recursion_curves": 50,
    "alpha_directions": 20,
    "blowup_sections": 500,
    "quadric_lines": 200,
    "quaternionic_reduction": 200,
    "metric_points": 200,
}


def parse_seed(value) -> int:
    """Parse a seed from text or int; seeds are unsigned 64-bit."""
    try:
        seed = int(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f"Seed must be an integer, got {value!r}.")
    if not 0 <= seed < 2 ** SEED_BITS:
        raise InvalidInputError(f"Seed must lie in [0, 2^{SEED_BITS}).")
    return seed


def derive_seed(master: int, index: int) -> int:
    """Seed of batch `index`, independent of the order batches run in."""
    digest = hashlib.blake2b(f"{master}:{index}".encode("ascii"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


@dataclass(frozen=True)
class RunConfig:
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    twist_range: Optional[Tuple[int, int]] = None
    output_format: str = DEFAULT_FORMAT
    inputs: Tuple[str, ...] = field(default_factory=tuple)
    scale: float = 1.0

    def __post_init__(self):
        parse_seed(self.seed)
        if self.trials <= 0:
            raise InvalidInputError("Trial count must be positive.")
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidInputError(f"Output format must be one of {', '.join(OUTPUT_FORMATS)}.")
        if self.twist_range is not None and self.twist_range[0] > self.twist_range[1]:
            raise InvalidInputError("Twist range must be given as (low, high) with low <= high.")
        if self.scale <= 0:
            raise InvalidInputError("Sample scale must be positive.")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        """Defaults, then KRON_SEED from the environment, then explicit overrides."""
        raw = os.environ.get(SEED_ENV_VAR)
        base = cls(seed=parse_seed(raw)) if raw not in (None, "") else cls()
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **overrides)

    def sample_size(self, name: str) -> int:
        return max(1, int(SAMPLE_SIZES[name] * self.scale))

    def batch_seed(self, index: int) -> int:
        return derive_seed(self.seed, index)
