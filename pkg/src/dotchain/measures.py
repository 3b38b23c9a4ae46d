"""Correlation quantifiers for chain states.

Entropies are in bits (base-2 logarithms) throughout, which makes the
ceilings for a pair of four-level sites log2(4) = 2 for coherence and
2*log2(4) = 4 for mutual information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockBasis
from .states import partial_trace

EIGENVALUE_CLIP = 1e-12

__all__ = [
    "LbcResult",
    "von_neumann_entropy",
    "local_entanglement",
    "generalized_concurrence",
    "so_generators",
    "lbc",
    "coherence",
    "mutual_information",
    "boltzmann_ratio",
    "two_level_state",
]


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr(rho log2 rho), with eigenvalues clipped to [0, 1] before the log."""
    lam = np.linalg.eigvalsh(rho)
    lam = np.clip(lam.real, 0.0, 1.0)
    lam = lam[lam > EIGENVALUE_CLIP]
    return float(-(lam * np.log2(lam)).sum()) + 0.0


def local_entanglement(weights) -> float:
    """Entanglement of one site with the rest from its four occupation weights."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,):
        raise ValueError(f"expected four weights, got shape {w.shape}")
    if w.min() < -1e-9 or abs(w.sum() - 1.0) > 1e-9:
        raise ValueError(f"weights must be non-negative and sum to 1, got {w}")
    w = w[w > EIGENVALUE_CLIP]
    return float(-(w * np.log2(w)).sum()) + 0.0


def generalized_concurrence(psi: np.ndarray, basis: FockBasis) -> float:
    """Pure-state concurrence over all proper nonempty site subsets.

    C_N = 2**(1 - N/2) * sqrt((2**N - 2) - sum_a Tr(rho_a^2)), where a runs
    over the 2**N - 2 proper nonempty subsets of the N sites.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    n = basis.n_sites
    if psi.shape != (basis.dim,):
        raise ValueError(f"state has length {psi.size}, expected {basis.dim}")
    if n < 2:
        raise ValueError("generalized concurrence needs at least two sites")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValueError("state vector must be normalized")

    tensor = psi.reshape((4,) * n)  # axis k holds site n-k
    total_purity = 0.0
    for mask in range(1, 2**n - 1):
        sites = [s for s in range(1, n + 1) if mask & (1 << (s - 1))]
        axes = [n - s for s in sites]
        rest = [ax for ax in range(n) if ax not in axes]
        m = np.transpose(tensor, axes + rest).reshape(4 ** len(sites), -1)
        s = np.linalg.svd(m, compute_uv=False)
        total_purity += float((s**4).sum())
    inner = (2**n - 2) - total_purity
    return float(2 ** (1 - n / 2) * math.sqrt(max(0.0, inner)))


def so_generators(d: int) -> list[np.ndarray]:
    """The d(d-1)/2 antisymmetric +-1 generators of SO(d), lexicographic (j, k)."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"subsystem dimension must be an integer >= 2, got {d!r}")
    gens = []
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d))
            g[j, k] = 1.0
            g[k, j] = -1.0
            gens.append(g)
    return gens


@dataclass(frozen=True)
class LbcResult:
    """Lower bound of concurrence for a d x d bipartite mixed state."""

    tau2: float
    lbc: float
    c_matrix: np.ndarray


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    lam, v = np.linalg.eigh(rho)
    return (v * np.sqrt(np.clip(lam, 0.0, None))) @ v.conj().T


def lbc(rho_pair: np.ndarray, generators: list[np.ndarray] | None = None) -> LbcResult:
    """Lower bound of concurrence of a bipartite d x d mixed state.

    For every generator pair (a, b) the spin-flipped state
    rho~ = (G_a x G_b) rho* (G_a x G_b) is formed; the lambda's are the
    descending square roots of the eigenvalues of rho rho~, and
    C_ab = max(0, l1 - l2 - l3 - l4) uses exactly the four largest.  Then
    tau2 = d/(2(d-1)) * sum C_ab^2 and the bound is sqrt(tau2).  At d = 2
    this is exactly the Wootters construction.

    The lambda's are evaluated as the singular values of
    sqrt(rho) (G_a x G_b) sqrt(rho)*, whose squares are the eigenvalues of
    rho rho~; this avoids taking square roots of eigenvalues of the
    explicitly formed (squared-conditioning) product, so exact zeros come
    out at machine precision instead of its square root.
    """
    rho = np.asarray(rho_pair, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    d = math.isqrt(rho.shape[0])
    if d * d != rho.shape[0] or d < 2:
        raise ValueError(f"matrix dimension {rho.shape[0]} is not a square d**2 with d >= 2")
    if generators is None:
        generators = so_generators(d)
    n_gen = d * (d - 1) // 2
    if len(generators) != n_gen or any(g.shape != (d, d) for g in generators):
        raise ValueError(f"expected {n_gen} generators of shape ({d}, {d})")
    if np.abs(rho - rho.conj().T).max() > 1e-8:
        raise ValueError("state is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -1e-8:
        raise ValueError("state is not positive semidefinite")

    root = _sqrt_psd(rho)
    root_conj = root.conj()
    c = np.zeros((n_gen, n_gen))
    for a, ga in enumerate(generators):
        for b, gb in enumerate(generators):
            flip = np.kron(ga, gb)
            lam = np.linalg.svd(root @ flip @ root_conj, compute_uv=False)
            c[a, b] = max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))
    tau2 = d / (2.0 * (d - 1.0)) * float((c**2).sum())
    return LbcResult(tau2=tau2, lbc=math.sqrt(tau2), c_matrix=c)


def coherence(rho: np.ndarray) -> float:
    """Relative-entropy coherence E(rho_diag) - E(rho), in bits."""
    rho = np.asarray(rho)
    diag = np.diag(np.clip(rho.diagonal().real, 0.0, None))
    return max(0.0, von_neumann_entropy(diag) - von_neumann_entropy(rho))


def _pair_marginals(rho_pair: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    # index convention: element (i + d*j, i' + d*j') with i the first factor
    r = rho_pair.reshape(d, d, d, d)
    first = np.einsum("jajb->ab", r)
    second = np.einsum("ajbj->ab", r)
    return first, second


def mutual_information(rho_pair: np.ndarray, rho_i: np.ndarray,
                       rho_j: np.ndarray) -> float:
    """I = E(rho_i) + E(rho_j) - E(rho_pair), in bits.

    rho_i and rho_j must be the marginals of rho_pair (first and second
    factor respectively); a mismatch beyond 1e-9 raises.
    """
    rho = np.asarray(rho_pair, dtype=complex)
    d = math.isqrt(rho.shape[0])
    if d * d != rho.shape[0]:
        raise ValueError(f"pair state dimension {rho.shape[0]} is not a perfect square")
    first, second = _pair_marginals(rho, d)
    if np.abs(first - rho_i).max() > 1e-9 or np.abs(second - rho_j).max() > 1e-9:
        raise ValueError("rho_i/rho_j are not the marginals of rho_pair")
    info = (von_neumann_entropy(rho_i) + von_neumann_entropy(rho_j)
            - von_neumann_entropy(rho))
    return max(0.0, info)


def boltzmann_ratio(delta_e: float, kt: float, g_upper: int = 1,
                    g_lower: int = 1) -> float:
    """Population ratio (g_u/g_l) exp(-dE/kT) between two levels."""
    if kt <= 0:
        raise ValueError(f"kT must be positive, got {kt}")
    if g_upper < 1 or g_lower < 1:
        raise ValueError("degeneracies must be at least 1")
    return (g_upper / g_lower) * math.exp(-delta_e / kt)


def two_level_state(delta_e: float, kt: float) -> np.ndarray:
    """diag(p_lower, p_upper) for a two-level system with gap delta_e at kT."""
    if kt <= 0:
        raise ValueError(f"kT must be positive, got {kt}")
    x = delta_e / kt
    if x >= 0:
        p_upper = math.exp(-x) / (1.0 + math.exp(-x))
    else:
        p_upper = 1.0 / (1.0 + math.exp(x))
    return np.diag([1.0 - p_upper, p_upper])


def pair_correlations(rho_pair: np.ndarray) -> dict[str, float]:
    """Convenience bundle: lbc, coherence, mutual information and entropies."""
    d = math.isqrt(rho_pair.shape[0])
    rho_i, rho_j = _pair_marginals(np.asarray(rho_pair, dtype=complex), d)
    return {
        "lbc": lbc(rho_pair).lbc,
        "coherence": coherence(rho_pair),
        "mutual_info": mutual_information(rho_pair, rho_i, rho_j),
        "entropy_pair": von_neumann_entropy(rho_pair),
        "entropy_i": von_neumann_entropy(rho_i),
        "entropy_j": von_neumann_entropy(rho_j),
    }
