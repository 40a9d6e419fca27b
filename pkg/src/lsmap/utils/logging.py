"""
Logging Setup
Rich console handler for the lsmap logger hierarchy
"""

import logging
import os
from typing import Optional, Union

from rich.logging import RichHandler

from lsmap.config import LOG_ENV_VAR
from lsmap.errors import ConfigError

_HANDLER_NAME = "lsmap-rich"


def setup_logging(level: Optional[Union[int, str]] = None) -> logging.Logger:
    """Attach a RichHandler to the ``lsmap`` logger.

    Args:
        level: Explicit level name or number. Falls back to the LSMAP_LOG
            environment variable, then to WARNING.

    Returns:
        The configured ``lsmap`` logger. Calling this twice replaces the
        level but never stacks handlers.
    """
    if level is None:
        level = os.environ.get(LOG_ENV_VAR, "WARNING")
    if isinstance(level, str):
        resolved = logging.getLevelName(level.upper())
        if not isinstance(resolved, int):
            raise ConfigError(f"Unknown log level: {level}. Use DEBUG, INFO, WARNING or ERROR")
        level = resolved

    logger = logging.getLogger("lsmap")
    logger.setLevel(level)
    if not any(getattr(h, "name", None) == _HANDLER_NAME for h in logger.handlers):
        handler = RichHandler(show_path=False, rich_tracebacks=False)
        handler.name = _HANDLER_NAME
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.propagate = False
    return logger
