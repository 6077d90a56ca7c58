"""
Runtime settings
================

Values come from the environment (optionally a ``.env`` file). A single
``Settings`` instance is shared by the whole process.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

from utils.singleton import singleton

load_dotenv()  # take environment variables

PACKAGE_DATA_DIR = Path(__file__).resolve().parent / "data"


@singleton
class Settings:
    """Caps, seeds and paths used by the computational modules."""

    def __init__(self):
        self.order_cap = int(os.getenv("SIMFLAT_ORDER_CAP", 10_000_000))
        self.node_cap = int(os.getenv("SIMFLAT_NODE_CAP", 512))
        self.chain_cap = int(os.getenv("SIMFLAT_CHAIN_CAP", 64))
        self.reduce_cap = int(os.getenv("SIMFLAT_REDUCE_CAP", 1_000_000))
        self.seed = int(os.getenv("SIMFLAT_SEED", 20240601))
        self.workers = int(os.getenv("SIMFLAT_WORKERS", 5))
        self.log_level = os.getenv("SIMFLAT_LOG_LEVEL", "INFO")
        self.db_dir = Path(os.getenv("SIMFLAT_DB_DIR", str(PACKAGE_DATA_DIR)))

    def as_dict(self) -> dict:
        return {
            "order_cap": self.order_cap,
            "node_cap": self.node_cap,
            "chain_cap": self.chain_cap,
            "reduce_cap": self.reduce_cap,
            "seed": self.seed,
            "workers": self.workers,
            "log_level": self.log_level,
            "db_dir": str(self.db_dir),
        }


def get_settings() -> Settings:
    return Settings()
