"""Computable oracles for infinite graphs and edge-colorings of K_N."""

from .core import (FINITE, INFINITE, ColoringOracle, DensityProfile, ExactForm, Finiteness,
                   GraphOracle, NotDecidable, Piece, VertexSet, WindowExhausted, cylinder,
                   density_profile, exact_density, extends, geometric_schedule,
                   nwd_witness_search, prefix_density, truncated_binary, zf_membership_profile)

__all__ = [
    "FINITE", "INFINITE", "ColoringOracle", "DensityProfile", "ExactForm", "Finiteness",
    "GraphOracle", "NotDecidable", "Piece", "VertexSet", "WindowExhausted", "cylinder",
    "density_profile", "exact_density", "extends", "geometric_schedule",
    "nwd_witness_search", "prefix_density", "truncated_binary", "zf_membership_profile",
]
