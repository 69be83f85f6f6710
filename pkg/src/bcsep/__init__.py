"""Separation-based bounds for lossy source broadcast over broadcast channels."""
from .binary_bc import BinaryBroadcastSpec, Kind, Regime, SideInfo, capacity_region
from .infotheory import binary_entropy, binary_entropy_inv, bconv, compound_capacity, discrete_capacity
from .regions import Region2D, contains_scaled, min_scale, oracle_min_scale
from .source_binary import (
    HammingDistortionPair,
    KappaVerdict,
    check_kappa_gap,
    kappa_dagger,
    kappa_star,
    kappa_star_closed_form,
)

__all__ = [
    "BinaryBroadcastSpec", "Kind", "Regime", "SideInfo", "capacity_region",
    "binary_entropy", "binary_entropy_inv", "bconv", "compound_capacity", "discrete_capacity",
    "Region2D", "contains_scaled", "min_scale", "oracle_min_scale",
    "HammingDistortionPair", "KappaVerdict", "check_kappa_gap", "kappa_dagger", "kappa_star",
    "kappa_star_closed_form",
]
