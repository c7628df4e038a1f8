"""Environment-backed settings for the kernel and the harness."""

import os
from dataclasses import dataclass


@dataclass
class Settings:
    """Environment-backed settings."""
    sqrt_depth_cap: int = int(os.getenv('SDG_SQRT_DEPTH_CAP', '8'))
    max_refine_bits: int = int(os.getenv('SDG_MAX_REFINE_BITS', '8192'))
    workers: int = int(os.getenv('SDG_WORKERS', '1'))
    max_retries: int = int(os.getenv('SDG_MAX_RETRIES', '1000'))
    max_numerator: int = int(os.getenv('SDG_MAX_NUMERATOR', '100'))


settings = Settings()
