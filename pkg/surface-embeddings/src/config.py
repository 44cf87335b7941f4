"""Toolkit configuration loaded from a JSON file."""

import json
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToolkitConfig:
    """Caps and defaults shared by the CLI and the MCP server."""

    canonical_max_vertices: int = 10
    hamiltonian_max_degree: int = 12
    oracle_max_vertices: int = 8
    reconstruction_budget: int = 20000
    scheme_max_darts: int = 24
    labeled_space_limit: int = 5_000_000
    threads: int | None = None
    ranges: dict[str, dict[str, Any]] = field(default_factory=dict)


def default_config() -> dict[str, Any]:
    """Return default configuration."""
    return {
        "canonical_max_vertices": 10,
        "hamiltonian_max_degree": 12,
        "oracle_max_vertices": 8,
        "reconstruction_budget": 20000,
        "scheme_max_darts": 24,
        "labeled_space_limit": 5_000_000,
        "threads": None,
        "ranges": {
            "simple": {"max_n": 6, "max_multiplicity": 1},
            "multigraph": {"max_n": 5, "max_multiplicity": 2},
            "loops": {"max_n": 3, "max_multiplicity": 2, "allow_loops": True, "max_darts": 12},
        },
    }


def load_config(config_path: str | Path | None = None) -> ToolkitConfig:
    """Load configuration from file, falling back to defaults.

    Args:
        config_path: Path to a JSON config file. ``None`` means defaults.

    Returns:
        Parsed ToolkitConfig
    """
    raw = default_config()

    if config_path is not None:
        config_file = Path(config_path)
        if not config_file.exists():
            logger.warning(f"Config file not found: {config_path}, using defaults")
        else:
            try:
                with open(config_file, encoding="utf-8") as f:
                    loaded = json.load(f)
                raw.update({k: v for k, v in loaded.items() if k != "ranges"})
                for name, overrides in loaded.get("ranges", {}).items():
                    raw["ranges"].setdefault(name, {}).update(overrides)
                logger.info(f"Loaded config from {config_path}")
            except (json.JSONDecodeError, OSError, AttributeError) as e:
                logger.error(f"Error loading config: {e}, using defaults")
                raw = default_config()

    known = {f.name for f in fields(ToolkitConfig)}
    unknown = set(raw) - known
    if unknown:
        logger.warning(f"Ignoring unknown config keys: {sorted(unknown)}")

    return ToolkitConfig(**{k: v for k, v in raw.items() if k in known})
