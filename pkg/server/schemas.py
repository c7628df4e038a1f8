"""Pydantic schemas for API."""

from typing import Optional

from pydantic import BaseModel, Field


class RunRequest(BaseModel):
    """Verification run payload.

    Fields mirror Scenario in the kernel so the API can forward every
    supported option. A ``scene`` switches the run to scene-driven checks.
    """
    name: str = 'api'
    dim: int = Field(2, ge=1, le=6)
    seed: int = 0
    trials: int = Field(25, ge=0)
    checks: list[str] = Field(default_factory=list)
    corrupt: bool = False
    scene: Optional[dict] = None


class PlotRequest(BaseModel):
    """Scene to render plus the overlays to draw (default: all)."""
    scene: dict
    overlays: Optional[list[str]] = None
