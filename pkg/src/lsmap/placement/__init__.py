"""
Placement
Initial qubit-to-location assignment

- qap: interaction_matrix, distance_matrix, qap_cost, place_smart, place_naive
"""

from lsmap.placement.qap import (
    DistanceMatrix,
    InteractionMatrix,
    Placement,
    distance_matrix,
    interaction_matrix,
    place_naive,
    place_smart,
    qap_cost,
)

__all__ = [
    "DistanceMatrix",
    "InteractionMatrix",
    "Placement",
    "distance_matrix",
    "interaction_matrix",
    "place_naive",
    "place_smart",
    "qap_cost",
]
