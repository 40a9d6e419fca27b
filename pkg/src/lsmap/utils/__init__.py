"""
Utilities
Logging setup, console tables and plots

- logging: setup_logging
- helpers: rich tables for stats, timing, checks and comparisons
- visualization: layout snapshots, comparison charts, HTML run report
"""

from lsmap.utils.logging import setup_logging

__all__ = ["setup_logging"]
