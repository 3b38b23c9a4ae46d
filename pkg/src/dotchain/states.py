"""Ground-state and thermal density matrices, and reductions to site subsets.

Density matrices are plain complex ndarrays in the Fock basis of
:mod:`dotchain.fock`.  Partial traces treat each site as one four-level
tensor factor (the qudit picture); thanks to particle-number and S_z
conservation the states carry no coherence between different local fermion
parities, so this agrees with the fermionic mode reduction for the site
subsets used here.
"""

from __future__ import annotations

import string

import numpy as np

from .fock import FockBasis
from .spectral import Spectrum, DegeneracyClusters, cluster_degeneracies

__all__ = [
    "gibbs_state",
    "ground_state_density",
    "partial_trace",
    "occupation_weights",
    "reflect_pair_state",
    "trace_distance",
    "purity",
]


def gibbs_state(spectrum: Spectrum, kt: float) -> np.ndarray:
    """Thermal state exp(-H/kT)/Z built from a precomputed spectrum.

    kT is measured in units of t.  Weights are computed from energy-shifted
    exponentials exp(-(E_k - E_0)/kT), which is identical to the Gibbs form
    but immune to underflow at small kT.  kT = 0 returns the equal-weight
    ground-cluster mixture (the exact zero-temperature limit) rather than
    evaluating a huge inverse temperature.
    """
    if kt < 0:
        raise ValueError(f"kT must be non-negative, got {kt}")
    if kt == 0:
        return ground_state_density(spectrum)
    weights = np.exp(-(spectrum.energies - spectrum.energies[0]) / kt)
    weights /= weights.sum()
    v = spectrum.states
    return (v * weights) @ v.conj().T


def ground_state_density(spectrum: Spectrum,
                         clusters: DegeneracyClusters | None = None) -> np.ndarray:
    """Equal-weight mixture over the ground cluster: P0 / g0.

    P0 is the orthogonal projector onto the ground eigenspace, so the result
    does not depend on the eigenvector basis returned by the solver.
    """
    if clusters is None:
        clusters = cluster_degeneracies(spectrum)
    idx = list(clusters.ground.indices)
    v = spectrum.states[:, idx]
    return (v @ v.conj().T) / len(idx)


def partial_trace(rho: np.ndarray, basis: FockBasis, kept_sites) -> np.ndarray:
    """Reduce `rho` to the sites in `kept_sites` (1-based, strictly ascending).

    The reduced matrix keeps the global digit convention: the first kept
    site is the least significant base-4 digit of the reduced index.  For a
    pair (i, j) the element (n_i + 4 n_j, m_i + 4 m_j) is the matrix element
    between |n_i n_j> and |m_i m_j>.
    """
    kept = [int(s) for s in kept_sites]
    n = basis.n_sites
    if not kept:
        raise ValueError("kept_sites must be non-empty")
    if any(b <= a for a, b in zip(kept, kept[1:])):
        raise ValueError(f"kept_sites must be strictly ascending, got {kept}")
    if kept[0] < 1 or kept[-1] > n:
        raise ValueError(f"kept_sites {kept} outside 1..{n}")
    rho = np.asarray(rho)
    if rho.shape != (basis.dim, basis.dim):
        raise ValueError(f"expected a {basis.dim}x{basis.dim} matrix, got {rho.shape}")

    letters = string.ascii_lowercase
    ket = {site: letters[site - 1] for site in range(1, n + 1)}
    bra = {}
    next_letter = n
    for site in range(1, n + 1):
        if site in kept:
            bra[site] = letters[next_letter]
            next_letter += 1
        else:
            bra[site] = ket[site]
    # C-order axes run from the most significant digit (site n) down to site 1
    order = range(n, 0, -1)
    in_sub = "".join(ket[s] for s in order) + "".join(bra[s] for s in order)
    kept_desc = sorted(kept, reverse=True)
    out_sub = "".join(ket[s] for s in kept_desc) + "".join(bra[s] for s in kept_desc)
    reduced = np.einsum(f"{in_sub}->{out_sub}", rho.reshape((4,) * (2 * n)))
    dim = 4 ** len(kept)
    return reduced.reshape(dim, dim)


def occupation_weights(rho_site: np.ndarray) -> tuple[float, float, float, float]:
    """The four diagonal weights (w_0, w_up, w_dn, w_updn) of a single-site state."""
    rho = np.asarray(rho_site)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a single-site 4x4 reduced state, got {rho.shape}")
    w = rho.diagonal().real
    if abs(w.sum() - 1.0) > 1e-9:
        raise ValueError(f"weights sum to {w.sum()}, expected 1")
    return float(w[0]), float(w[1]), float(w[2]), float(w[3])


def reflect_pair_state(rho_pair: np.ndarray) -> np.ndarray:
    """Image of a two-site reduced state under the chain's mirror reflection.

    Reflecting the chain maps the pair (i, j) onto (N+1-j, N+1-i), which in
    the ascending-site digit convention exchanges the two tensor factors and
    reorders fermionic modes.  The reordering contributes a sign
    (-1)**(P_a * P_b) per basis ket, with P the electron count of each local
    state; for states of the number- and S_z-conserving chain this diagonal
    sign conjugation plus the factor swap is the exact mirror image.  For a
    mirror-symmetric state, partial_trace(rho, basis, (i, j)) equals
    reflect_pair_state(partial_trace(rho, basis, (N+1-j, N+1-i))).
    """
    rho = np.asarray(rho_pair)
    if rho.shape != (16, 16):
        raise ValueError(f"expected a 16x16 pair state, got {rho.shape}")
    swapped = rho.reshape(4, 4, 4, 4).transpose(1, 0, 3, 2).reshape(16, 16)
    electrons = np.array([0, 1, 1, 2])
    signs = np.array([(-1.0) ** (electrons[i % 4] * electrons[i // 4])
                      for i in range(16)])
    return swapped * np.outer(signs, signs)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) * trace norm of (a - b) for Hermitian matrices."""
    return float(0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum())


def purity(rho: np.ndarray) -> float:
    """Tr(rho^2)."""
    rho = np.asarray(rho)
    return float(np.einsum("ij,ji->", rho, rho).real)
