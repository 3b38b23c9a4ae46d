"""Fock space and Hamiltonian assembly for short Fermi-Hubbard chains.

Sites are labeled 1..N and each site carries two fermionic modes, one per
spin.  Modes are ordered (1up, 1dn, 2up, 2dn, ...): mode 2*(k-1) is the up
orbital of site k and mode 2*(k-1)+1 its down orbital.  A basis state is an
integer whose bit m holds the occupation of mode m, so the two bits of site
k give its local index n_k = up + 2*dn, i.e. the four local states are
0=|0>, 1=|up>, 2=|dn>, 3=|updn>, and the global basis index is
sum_k 4**(k-1) * n_k (site 1 is the least significant digit).

Fermionic anticommutation enters through Jordan-Wigner sign factors: acting
on mode m picks up (-1)**(number of occupied modes below m).  All partial
traces and operator matrix elements elsewhere in the package rely on this
fixed ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SPIN_UP = 0
SPIN_DOWN = 1

MIN_SITES = 1
MAX_SITES = 6

__all__ = [
    "SPIN_UP",
    "SPIN_DOWN",
    "MIN_SITES",
    "MAX_SITES",
    "FockBasis",
    "HubbardParams",
    "build_basis",
    "apply_fermionic",
    "build_hamiltonian",
    "total_number_operator",
    "total_sz_operator",
]


@dataclass(frozen=True)
class FockBasis:
    """Occupation basis of an N-site chain, dimension 4**N."""

    n_sites: int

    @property
    def n_modes(self) -> int:
        return 2 * self.n_sites

    @property
    def dim(self) -> int:
        return 4**self.n_sites

    @property
    def mode_order(self) -> list[tuple[int, str]]:
        """Modes as (site, spin) pairs in Jordan-Wigner order."""
        return [
            (site, "up" if spin == SPIN_UP else "down")
            for site in range(1, self.n_sites + 1)
            for spin in (SPIN_UP, SPIN_DOWN)
        ]

    @property
    def states(self) -> np.ndarray:
        """All occupation bitstrings, ascending."""
        return np.arange(self.dim, dtype=np.int64)

    def mode(self, site: int, spin: int) -> int:
        """Mode index of (site, spin); sites are 1-based."""
        if not 1 <= site <= self.n_sites:
            raise ValueError(f"site {site} outside 1..{self.n_sites}")
        if spin not in (SPIN_UP, SPIN_DOWN):
            raise ValueError(f"spin must be SPIN_UP or SPIN_DOWN, got {spin}")
        return 2 * (site - 1) + spin

    def site_occupation(self, state: int, site: int) -> int:
        """Local basis index (0..3) of `site` in `state`."""
        return (state >> (2 * (site - 1))) & 3

    def double_occupancy(self, state: int) -> int:
        """Number of doubly occupied sites in `state`."""
        up_mask = sum(1 << (2 * k) for k in range(self.n_sites))
        return (state & (state >> 1) & up_mask).bit_count()


def build_basis(n_sites: int) -> FockBasis:
    """Enumerate the Fock space of an `n_sites` chain.

    States are ordered by ascending bitstring value; see the module
    docstring for the mode and digit conventions.
    """
    if not isinstance(n_sites, int) or not MIN_SITES <= n_sites <= MAX_SITES:
        raise ValueError(
            f"n_sites must be an integer between {MIN_SITES} and {MAX_SITES}, "
            f"got {n_sites!r}"
        )
    return FockBasis(n_sites)


def apply_fermionic(state: int, mode: int, kind: str) -> tuple[int, int] | None:
    """Apply c_mode ('annihilate') or c_mode^dag ('create') to a basis state.

    Returns (sign, new_state) with sign = (-1)**(occupied modes below
    `mode`), or None when the operator annihilates the state (creating on
    an occupied mode / annihilating an empty one).
    """
    occupied = (state >> mode) & 1
    if kind == "create":
        if occupied:
            return None
    elif kind == "annihilate":
        if not occupied:
            return None
    else:
        raise ValueError(f"kind must be 'create' or 'annihilate', got {kind!r}")
    sign = -1 if (state & ((1 << mode) - 1)).bit_count() & 1 else 1
    return sign, state ^ (1 << mode)


@dataclass(frozen=True)
class HubbardParams:
    """Chain parameters.  t is the energy unit; u is the dimensionless U = u/t."""

    n_sites: int
    u: float
    t: float = 1.0
    boundary: str = "open"

    def __post_init__(self) -> None:
        if not MIN_SITES <= self.n_sites <= MAX_SITES:
            raise ValueError(
                f"n_sites must be between {MIN_SITES} and {MAX_SITES}, "
                f"got {self.n_sites}"
            )
        if self.u < 0:
            raise ValueError(f"u must be non-negative, got {self.u}")
        if self.t <= 0:
            raise ValueError(f"t must be positive, got {self.t}")
        if self.boundary != "open":
            raise ValueError("only open boundary conditions are supported")


def _add_bilinear(h: np.ndarray, coeff: float, state: int,
                  create_mode: int, annihilate_mode: int) -> None:
    # coeff * c^dag_create c_annihilate acting on |state>
    step = apply_fermionic(state, annihilate_mode, "annihilate")
    if step is None:
        return
    sign1, mid = step
    step = apply_fermionic(mid, create_mode, "create")
    if step is None:
        return
    sign2, out = step
    h[out, state] += coeff * sign1 * sign2


def build_hamiltonian(basis: FockBasis, params: HubbardParams) -> np.ndarray:
    """Assemble H = -t sum_{<i,i+1>,s} (c^dag_is c_(i+1)s + h.c.) + u sum_i n_iup n_idn.

    The matrix is dense, complex and Hermitian, and commutes with the total
    particle number and total S_z.
    """
    if basis.n_sites != params.n_sites:
        raise ValueError(
            f"basis has {basis.n_sites} sites but params expect {params.n_sites}"
        )
    dim = basis.dim
    h = np.zeros((dim, dim), dtype=np.complex128)
    for state in range(dim):
        docc = basis.double_occupancy(state)
        if docc:
            h[state, state] += params.u * docc
        for site in range(1, basis.n_sites):
            for spin in (SPIN_UP, SPIN_DOWN):
                here = basis.mode(site, spin)
                there = basis.mode(site + 1, spin)
                _add_bilinear(h, -params.t, state, here, there)
                _add_bilinear(h, -params.t, state, there, here)
    return h


def total_number_operator(basis: FockBasis) -> np.ndarray:
    """N_total = sum_m c^dag_m c_m, assembled from apply_fermionic."""
    op = np.zeros((basis.dim, basis.dim), dtype=np.complex128)
    for state in range(basis.dim):
        for mode in range(basis.n_modes):
            _add_bilinear(op, 1.0, state, mode, mode)
    return op


def total_sz_operator(basis: FockBasis) -> np.ndarray:
    """S_z = (1/2) sum_k (n_k_up - n_k_dn), assembled from apply_fermionic."""
    op = np.zeros((basis.dim, basis.dim), dtype=np.complex128)
    for state in range(basis.dim):
        for site in range(1, basis.n_sites + 1):
            _add_bilinear(op, +0.5, state, basis.mode(site, SPIN_UP),
                          basis.mode(site, SPIN_UP))
            _add_bilinear(op, -0.5, state, basis.mode(site, SPIN_DOWN),
                          basis.mode(site, SPIN_DOWN))
    return op
