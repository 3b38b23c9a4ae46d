"""Exact diagonalization and pairwise quantum correlations for short
Fermi-Hubbard chains of quantum dots.

The package models a chain of up to six quantum dots as a one-dimensional
Hubbard system on the full 4**N Fock space, diagonalizes it exactly, builds
ground/thermal density matrices, and quantifies pairwise correlations:
lower bound of concurrence, relative-entropy coherence, mutual information
and von Neumann entanglement entropies.
"""

from .fock import (
    SPIN_UP,
    SPIN_DOWN,
    FockBasis,
    HubbardParams,
    apply_fermionic,
    build_basis,
    build_hamiltonian,
    total_number_operator,
    total_sz_operator,
)
from .spectral import (
    Band,
    BandStructure,
    Cluster,
    CrossingEvent,
    DegeneracyClusters,
    Spectrum,
    cluster_degeneracies,
    count_bands,
    crossing_scan,
    diagonalize,
)
from .states import (
    gibbs_state,
    ground_state_density,
    occupation_weights,
    partial_trace,
    purity,
    reflect_pair_state,
    trace_distance,
)
from .measures import (
    LbcResult,
    boltzmann_ratio,
    coherence,
    generalized_concurrence,
    lbc,
    local_entanglement,
    mutual_information,
    pair_correlations,
    so_generators,
    two_level_state,
    von_neumann_entropy,
)
from .sweep import CorrelationRecord, SweepConfig, run_sweep

__version__ = "0.1.0"

__all__ = [
    "SPIN_UP",
    "SPIN_DOWN",
    "FockBasis",
    "HubbardParams",
    "apply_fermionic",
    "build_basis",
    "build_hamiltonian",
    "total_number_operator",
    "total_sz_operator",
    "Band",
    "BandStructure",
    "Cluster",
    "CrossingEvent",
    "DegeneracyClusters",
    "Spectrum",
    "cluster_degeneracies",
    "count_bands",
    "crossing_scan",
    "diagonalize",
    "gibbs_state",
    "ground_state_density",
    "occupation_weights",
    "partial_trace",
    "purity",
    "reflect_pair_state",
    "trace_distance",
    "LbcResult",
    "boltzmann_ratio",
    "coherence",
    "generalized_concurrence",
    "lbc",
    "local_entanglement",
    "mutual_information",
    "pair_correlations",
    "so_generators",
    "two_level_state",
    "von_neumann_entropy",
    "CorrelationRecord",
    "SweepConfig",
    "run_sweep",
]
