"""Configuration for the API server."""

import os
from dataclasses import dataclass


@dataclass
class Settings:
    """Environment-backed settings."""
    host: str = os.getenv('SDG_SERVER_HOST', '127.0.0.1')
    port: int = int(os.getenv('SDG_SERVER_PORT', '8000'))
    max_trials: int = int(os.getenv('SDG_SERVER_MAX_TRIALS', '200'))  # per check, per request


settings = Settings()
