"""
Logging setup for treecoh
"""

import logging

DEFAULT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_configured = False


def setup_logging(level: str = "WARNING", fmt: str = DEFAULT_FORMAT) -> None:
    """Configure the root logger once

    Args:
        level: Level name (DEBUG, INFO, WARNING, ERROR)
        fmt: Log record format
    """
    global _configured

    numeric = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {level}")

    root = logging.getLogger()
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(fmt))
        root.addHandler(handler)
        _configured = True
    root.setLevel(numeric)
