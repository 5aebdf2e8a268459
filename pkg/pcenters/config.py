# pcenters/config.py

import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Load .env just once, here.
load_dotenv()


@dataclass(frozen=True)
class Settings:
    # Env
    THREADS: int
    LOG_LEVEL: str

    # Code defaults
    DEFAULT_GRID_RESOLUTION: int
    DEFAULT_GRID_RESOLUTION_3D: int
    DEFAULT_UF_GRID_RESOLUTION: int
    DEFAULT_UF_GRID_RESOLUTION_3D: int
    CSV_DIGITS: int
    NEAR_SUBDIVISION_DEPTH: int


def _threads_from_env() -> int:
    raw = os.getenv("PC_THREADS")
    if not raw:
        return max(1, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise RuntimeError(f"PC_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise RuntimeError(f"PC_THREADS must be >= 1, got {n}")
    return n


settings = Settings(
    THREADS=_threads_from_env(),
    LOG_LEVEL=os.getenv("PC_LOG_LEVEL", "INFO").upper(),
    DEFAULT_GRID_RESOLUTION=512,
    DEFAULT_GRID_RESOLUTION_3D=96,
    DEFAULT_UF_GRID_RESOLUTION=160,
    DEFAULT_UF_GRID_RESOLUTION_3D=40,
    CSV_DIGITS=17,
    NEAR_SUBDIVISION_DEPTH=4,
)
