import logging
import logging.config
from pathlib import Path
from typing import Optional

import yaml

# ==========================================
# Setup Logging
# ==========================================

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_DATEFMT = "%Y-%m-%d %H:%M:%S"


def setup_logging(
    config_path: Optional[Path] = None,
    level: Optional[str] = None,
) -> None:
    """Setup logging configuration from YAML file.

    Args:
        config_path: dictConfig YAML file (default: Config/logging.yaml)
        level: Optional override for the console handler and root level
    """
    # Create logs directory if it doesn't exist
    logs_dir = Path("logs")
    logs_dir.mkdir(exist_ok=True)

    config_path = Path(config_path or "Config/logging.yaml")

    if not config_path.exists():
        # Fallback to basic logging if config file doesn't exist
        logging.basicConfig(
            level=level or logging.INFO,
            format=DEFAULT_FORMAT,
            datefmt=DEFAULT_DATEFMT,
        )
        logging.warning(f"Logging config file not found at {config_path}. Using basic configuration.")
        return

    try:
        with open(config_path, "r") as f:
            config = yaml.safe_load(f)

        if level:
            config.setdefault("root", {})["level"] = level
            console = config.get("handlers", {}).get("console")
            if console is not None:
                console["level"] = level

        logging.config.dictConfig(config)
        logging.debug("Logging configured successfully from YAML file")
    except Exception as e:
        # Fallback to basic logging if config loading fails
        logging.basicConfig(
            level=level or logging.INFO,
            format=DEFAULT_FORMAT,
            datefmt=DEFAULT_DATEFMT,
        )
        logging.error(f"Failed to load logging configuration: {e}. Using basic configuration.")


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the specified name"""
    return logging.getLogger(name)
