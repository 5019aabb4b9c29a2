"""Aloha games with spatial reuse."""

from ._core import (
    DimensionError,
    InstanceTooLarge,
    achieved_rate,
    best_response,
    chain,
    connectivity,
    fit_power_law,
    fully_connected,
    iterate_game,
    jacobian_at,
    kleene_lfp,
    krasovskii_verdict,
    max_common_rate,
    multistart_fixed_points,
    random_topology,
)

__all__ = [
    "DimensionError",
    "InstanceTooLarge",
    "achieved_rate",
    "best_response",
    "chain",
    "connectivity",
    "fit_power_law",
    "fully_connected",
    "iterate_game",
    "jacobian_at",
    "kleene_lfp",
    "krasovskii_verdict",
    "max_common_rate",
    "multistart_fixed_points",
    "random_topology",
]
