"""
Routing
SWAP insertion over a sliding instruction window

- router: route, Router, RoutedCircuit, LayoutSnapshot, PathRecord,
  validate_routed, swap_count, routed_latency
"""

from lsmap.routing.router import (
    LayoutSnapshot,
    PathRecord,
    RoutedCircuit,
    Router,
    route,
    routed_latency,
    swap_count,
    validate_routed,
)

__all__ = [
    "LayoutSnapshot",
    "PathRecord",
    "RoutedCircuit",
    "Router",
    "route",
    "routed_latency",
    "swap_count",
    "validate_routed",
]
