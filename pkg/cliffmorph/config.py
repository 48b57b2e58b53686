"""Kernel configuration settings."""

from functools import lru_cache

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings


class KernelSettings(BaseSettings):
    """Kernel configuration settings."""

    # Dimension limits
    n_max: int = Field(
        default=8, ge=1, le=12, description="Largest supported dimension p+q"
    )
    dense_limit: int = Field(
        default=8,
        ge=1,
        le=12,
        description="Tables up to this dimension are precomputed as dense arrays",
    )
    lazy_cache_size: int = Field(
        default=1 << 16, ge=0, description="LRU size for lazily computed entries"
    )

    # Debug checks
    check_associativity: bool = Field(
        default=False, description="Sample associativity when building tables"
    )
    associativity_samples: int = Field(
        default=64, ge=1, description="Blade triples sampled per table"
    )

    # Runtime
    default_seed: int = Field(default=0, description="Seed for property commands")
    log_level: str = Field(default="WARNING", description="Logging level")

    model_config = {"env_prefix": "CLIFFMORPH_", "case_sensitive": False}

    @model_validator(mode="after")
    def _dense_within_max(self) -> "KernelSettings":
        """Clamp the dense limit to the maximum dimension."""
        if self.dense_limit > self.n_max:
            self.dense_limit = self.n_max
        return self


@lru_cache(maxsize=1)
def get_settings() -> KernelSettings:
    """Get kernel settings (cached singleton)."""
    return KernelSettings()
