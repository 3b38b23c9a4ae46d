"""Exact diagonalization and spectrum analysis.

Covers the full eigendecomposition of the chain Hamiltonian, clustering of
(near-)degenerate levels, splitting of the spectrum into energy bands at
strong coupling, and the location of ground-state level crossings as a
function of the Coulomb coupling U.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import FockBasis, HubbardParams, build_basis, build_hamiltonian

DEFAULT_DEGENERACY_TOL = 1e-9
DEFAULT_BAND_GAP_TOL = 5.0

__all__ = [
    "DEFAULT_DEGENERACY_TOL",
    "DEFAULT_BAND_GAP_TOL",
    "Spectrum",
    "Cluster",
    "DegeneracyClusters",
    "Band",
    "BandStructure",
    "CrossingEvent",
    "diagonalize",
    "cluster_degeneracies",
    "count_bands",
    "crossing_scan",
]


@dataclass(frozen=True)
class Spectrum:
    """Full eigendecomposition: ascending energies, orthonormal column vectors."""

    energies: np.ndarray
    states: np.ndarray
    params: HubbardParams | None = None

    @property
    def dim(self) -> int:
        return len(self.energies)


def diagonalize(h: np.ndarray, params: HubbardParams | None = None) -> Spectrum:
    """Dense Hermitian eigendecomposition of `h` (LAPACK eigh)."""
    try:
        energies, states = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        where = ""
        if params is not None:
            where = f" for N={params.n_sites}, U={params.u}"
        raise np.linalg.LinAlgError(f"eigensolver failed{where}: {exc}") from exc
    return Spectrum(energies=energies, states=states, params=params)


@dataclass(frozen=True)
class Cluster:
    """One group of numerically degenerate levels."""

    energy: float
    multiplicity: int
    indices: tuple[int, ...]


@dataclass(frozen=True)
class DegeneracyClusters:
    clusters: tuple[Cluster, ...]
    tol_rel: float

    @property
    def ground(self) -> Cluster:
        return self.clusters[0]

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.multiplicity for c in self.clusters)


def cluster_degeneracies(spectrum: Spectrum,
                         tol_rel: float = DEFAULT_DEGENERACY_TOL) -> DegeneracyClusters:
    """Greedy ascending clustering of the spectrum into degenerate groups.

    Two adjacent levels belong to the same cluster when their gap is below
    tol_rel * max(1, |E|), i.e. a relative tolerance floored at an absolute
    one for energies below the unit scale.
    """
    if tol_rel <= 0:
        raise ValueError(f"tol_rel must be positive, got {tol_rel}")
    e = np.asarray(spectrum.energies, dtype=float)
    clusters: list[Cluster] = []
    start = 0
    for k in range(1, len(e)):
        tol = tol_rel * max(1.0, abs(e[k]), abs(e[k - 1]))
        if e[k] - e[k - 1] > tol:
            clusters.append(_make_cluster(e, start, k))
            start = k
    clusters.append(_make_cluster(e, start, len(e)))
    return DegeneracyClusters(clusters=tuple(clusters), tol_rel=tol_rel)


def _make_cluster(e: np.ndarray, start: int, stop: int) -> Cluster:
    return Cluster(
        energy=float(e[start:stop].mean()),
        multiplicity=stop - start,
        indices=tuple(range(start, stop)),
    )


@dataclass(frozen=True)
class Band:
    e_min: float
    e_max: float
    count: int


@dataclass(frozen=True)
class BandStructure:
    bands: tuple[Band, ...]
    gap_tol: float

    def counts(self) -> tuple[int, ...]:
        return tuple(b.count for b in self.bands)


def count_bands(spectrum: Spectrum, gap_tol: float = DEFAULT_BAND_GAP_TOL,
                scale_floor: float = 1.0) -> BandStructure:
    """Split the sorted spectrum into energy bands.

    A new band starts at a spacing larger than gap_tol times the widest
    spacing seen inside the current band.  The comparison scale is floored
    at `scale_floor` (one hopping unit by default) so that exactly
    degenerate multiplets at weak coupling, whose internal spacings vanish,
    are not each promoted to a band of their own.
    """
    if gap_tol <= 1:
        raise ValueError(f"gap_tol must exceed 1, got {gap_tol}")
    e = np.asarray(spectrum.energies, dtype=float)
    bands: list[Band] = []
    start = 0
    widest = 0.0
    for k in range(1, len(e)):
        spacing = e[k] - e[k - 1]
        if spacing > gap_tol * max(widest, scale_floor):
            bands.append(Band(float(e[start]), float(e[k - 1]), k - start))
            start = k
            widest = 0.0
        else:
            widest = max(widest, spacing)
    bands.append(Band(float(e[start]), float(e[-1]), len(e) - start))
    return BandStructure(bands=tuple(bands), gap_tol=gap_tol)


@dataclass(frozen=True)
class CrossingEvent:
    """A ground-multiplicity change located on the U axis.

    g_below/g_above are the ground-cluster multiplicities on either side of
    the crossing; g_at is the multiplicity at the crossing point itself (the
    union of the clusters that meet there for a transversal crossing).
    """

    u_star: float
    g_below: int
    g_at: int
    g_above: int
    bracket: tuple[float, float]


def crossing_scan(n_sites: int, u_values, t: float = 1.0,
                  tol_rel: float = DEFAULT_DEGENERACY_TOL,
                  refine_tol: float = 1e-6) -> list[CrossingEvent]:
    """Scan an ascending U grid for ground-state multiplicity changes.

    Each change between adjacent grid points is refined by bisection on the
    multiplicity until the bracket is narrower than `refine_tol`.  A grid
    point whose multiplicity exceeds both neighbours is reported directly as
    a crossing hit by the grid.
    """
    us = [float(u) for u in u_values]
    if len(us) < 2:
        raise ValueError("need at least two U grid points")
    if any(b <= a for a, b in zip(us, us[1:])):
        raise ValueError("U grid must be strictly ascending")
    if refine_tol <= 0:
        raise ValueError(f"refine_tol must be positive, got {refine_tol}")

    basis = build_basis(n_sites)

    def ground(u: float) -> tuple[int, np.ndarray]:
        params = HubbardParams(n_sites=n_sites, u=u, t=t)
        spectrum = diagonalize(build_hamiltonian(basis, params), params)
        mult = cluster_degeneracies(spectrum, tol_rel).ground.multiplicity
        return mult, spectrum.energies

    evaluations = [ground(u) for u in us]
    mults = [m for m, _ in evaluations]

    # collapse the grid into plateaus of constant multiplicity
    plateaus: list[tuple[int, int, int]] = []  # (g, first index, last index)
    first = 0
    for k in range(1, len(mults)):
        if mults[k] != mults[first]:
            plateaus.append((mults[first], first, k - 1))
            first = k
    plateaus.append((mults[first], first, len(mults) - 1))

    events: list[CrossingEvent] = []
    k = 0
    while k < len(plateaus) - 1:
        g1, _, j1 = plateaus[k]
        g2, i2, j2 = plateaus[k + 1]
        spike = i2 == j2 and g2 > g1
        if spike and k + 2 < len(plateaus) and plateaus[k + 2][0] != g2 \
                and g2 > plateaus[k + 2][0]:
            # the grid landed on the crossing point itself
            g3, i3, _ = plateaus[k + 2]
            events.append(CrossingEvent(
                u_star=us[i2], g_below=g1, g_at=g2, g_above=g3,
                bracket=(us[j1], us[i3]),
            ))
            k += 2
            continue
        if spike and k + 2 >= len(plateaus):
            # crossing sits on the last grid point; no data beyond it
            events.append(CrossingEvent(
                u_star=us[i2], g_below=g1, g_at=g2, g_above=g2,
                bracket=(us[j1], us[j2]),
            ))
            k += 1
            continue
        events.append(_refine_crossing(
            ground, us[j1], us[i2], g1, g2, tol_rel, refine_tol))
        k += 1
    return events


def _refine_crossing(ground, lo: float, hi: float, g_lo: int, g_hi: int,
                     tol_rel: float, refine_tol: float) -> CrossingEvent:
    bracket = (lo, hi)
    while hi - lo > refine_tol:
        mid = 0.5 * (lo + hi)
        g_mid, _ = ground(mid)
        if g_mid == g_lo:
            lo = mid
        elif g_mid == g_hi:
            hi = mid
        else:
            # hit the (numerically) exact crossing point
            return CrossingEvent(u_star=mid, g_below=g_lo, g_at=g_mid,
                                 g_above=g_hi, bracket=(lo, hi))
    u_star = 0.5 * (lo + hi)
    # at a transversal crossing the point multiplicity is the union of the
    # ground clusters approaching from the two sides
    return CrossingEvent(u_star=u_star, g_below=g_lo, g_at=g_lo + g_hi,
                         g_above=g_hi, bracket=bracket)
