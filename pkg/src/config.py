"""Runtime settings, overridable from the environment and the CLI."""

import os
from dataclasses import dataclass

ENV_PREFIX = "SHIFTMORPH_"
# binary image indices are int64 bit patterns
MAX_ENUMERATION_CAP = 62


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from exc


@dataclass(frozen=True)
class Settings:
    """Knobs for the exhaustive oracle and the parallel scans."""
    enumeration_cap: int = 20
    jobs: int = 1
    chunk_size: int = 4096
    random_seed: int = 0

    def __post_init__(self):
        if not 1 <= self.enumeration_cap <= MAX_ENUMERATION_CAP:
            raise ValueError(f"enumeration_cap must be between 1 and {MAX_ENUMERATION_CAP}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")

    @classmethod
    def from_env(cls) -> "Settings":
        defaults = cls()
        return cls(
            enumeration_cap=_env_int("CAP", defaults.enumeration_cap),
            jobs=_env_int("JOBS", defaults.jobs),
            chunk_size=_env_int("CHUNK", defaults.chunk_size),
            random_seed=_env_int("SEED", defaults.random_seed),
        )


DEFAULT_SETTINGS = Settings()
