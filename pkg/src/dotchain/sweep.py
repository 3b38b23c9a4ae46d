"""Parameter sweeps over (U, kT) and CSV serialization.

For each U the Hamiltonian is built and diagonalized once; all kT points of
that U are then evaluated from the cached spectrum.  Records come out in
deterministic U-major, kT-minor order regardless of the worker count, and
the CSV writer uses a fixed 9-significant-digit float format so identical
configurations produce byte-identical files.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fock import HubbardParams, build_basis, build_hamiltonian
from .spectral import (
    DEFAULT_BAND_GAP_TOL,
    DEFAULT_DEGENERACY_TOL,
    CrossingEvent,
    cluster_degeneracies,
    diagonalize,
)
from .states import gibbs_state, ground_state_density, partial_trace
from .measures import (
    _pair_marginals,
    coherence,
    lbc,
    mutual_information,
    von_neumann_entropy,
)

MEASURE_NAMES = ("lbc", "coherence", "mutual_info", "entropy")

RECORD_HEADER = ("n_sites,U,kT,pair_i,pair_j,lbc,coherence,mutual_info,"
                 "entropy_pair,entropy_i,entropy_j,g0,error")
SPECTRUM_HEADER = "U,level,energy"
CROSSING_HEADER = "n_sites,u_star,g_below,g_at,g_above,bracket_lo,bracket_hi"

__all__ = [
    "MEASURE_NAMES",
    "RECORD_HEADER",
    "SPECTRUM_HEADER",
    "CROSSING_HEADER",
    "SweepConfig",
    "CorrelationRecord",
    "run_sweep",
    "spectrum_rows",
    "records_to_csv",
    "spectrum_to_csv",
    "crossings_to_csv",
]


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a chain size, a site pair, and (U, kT) grids."""

    n_sites: int
    pair: tuple[int, int]
    u_values: tuple[float, ...]
    kt_values: tuple[float, ...]
    measures: tuple[str, ...] = MEASURE_NAMES
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL
    band_gap_tol: float = DEFAULT_BAND_GAP_TOL
    workers: int = 1

    def __post_init__(self) -> None:
        i, j = self.pair
        if not (1 <= i < j <= self.n_sites):
            raise ValueError(f"pair {self.pair} must satisfy 1 <= i < j <= {self.n_sites}")
        for name, values in (("u_values", self.u_values), ("kt_values", self.kt_values)):
            if len(values) == 0:
                raise ValueError(f"{name} must be non-empty")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be strictly ascending")
            if values[0] < 0:
                raise ValueError(f"{name} must be non-negative")
        unknown = set(self.measures) - set(MEASURE_NAMES)
        if unknown:
            raise ValueError(f"unknown measures {sorted(unknown)}; "
                             f"valid names are {MEASURE_NAMES}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")


@dataclass
class CorrelationRecord:
    """One sweep point; unevaluated measures stay None, failures set `error`."""

    n_sites: int
    u: float
    kt: float
    pair_i: int
    pair_j: int
    lbc: float | None = None
    coherence: float | None = None
    mutual_info: float | None = None
    entropy_pair: float | None = None
    entropy_i: float | None = None
    entropy_j: float | None = None
    g0: int | None = None
    error: str = ""


def _records_for_u(cfg: SweepConfig, u: float) -> list[CorrelationRecord]:
    basis = build_basis(cfg.n_sites)
    blank = dict(n_sites=cfg.n_sites, u=u, pair_i=cfg.pair[0], pair_j=cfg.pair[1])
    try:
        params = HubbardParams(n_sites=cfg.n_sites, u=u)
        spectrum = diagonalize(build_hamiltonian(basis, params), params)
        clusters = cluster_degeneracies(spectrum, cfg.degeneracy_tol)
        g0 = clusters.ground.multiplicity
    except (np.linalg.LinAlgError, ValueError) as exc:
        return [CorrelationRecord(kt=kt, error=_flatten(str(exc)), **blank)
                for kt in cfg.kt_values]

    records = []
    for kt in cfg.kt_values:
        try:
            if kt == 0:
                rho = ground_state_density(spectrum, clusters)
            else:
                rho = gibbs_state(spectrum, kt)
            record = CorrelationRecord(kt=kt, g0=g0, **blank)
            _fill_measures(record, cfg, basis, rho)
        except (np.linalg.LinAlgError, ValueError) as exc:
            record = CorrelationRecord(kt=kt, g0=g0, error=_flatten(str(exc)), **blank)
        records.append(record)
    return records


def _fill_measures(record: CorrelationRecord, cfg: SweepConfig, basis, rho) -> None:
    rho_pair = partial_trace(rho, basis, cfg.pair)
    rho_i = partial_trace(rho, basis, [cfg.pair[0]])
    rho_j = partial_trace(rho, basis, [cfg.pair[1]])
    if "lbc" in cfg.measures:
        record.lbc = lbc(rho_pair).lbc
    if "coherence" in cfg.measures:
        record.coherence = coherence(rho_pair)
    if "mutual_info" in cfg.measures:
        record.mutual_info = mutual_information(rho_pair, rho_i, rho_j)
    if "entropy" in cfg.measures:
        record.entropy_pair = von_neumann_entropy(rho_pair)
        record.entropy_i = von_neumann_entropy(rho_i)
        record.entropy_j = von_neumann_entropy(rho_j)


def run_sweep(cfg: SweepConfig) -> list[CorrelationRecord]:
    """Evaluate all (U, kT) grid points of `cfg`.

    Per-point numerical failures are recorded in-row via the `error` field
    and the sweep continues.  U values are independent and are distributed
    over a process pool when cfg.workers > 1; the output order is always
    U-major, kT-minor.
    """
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_records_for_u, [cfg] * len(cfg.u_values),
                                   cfg.u_values))
    else:
        chunks = [_records_for_u(cfg, u) for u in cfg.u_values]
    return [record for chunk in chunks for record in chunk]


def spectrum_rows(n_sites: int, u_values, t: float = 1.0) -> list[tuple[float, int, float]]:
    """All 4**N eigenvalues per U point, as (U, level index, energy) rows."""
    basis = build_basis(n_sites)
    rows = []
    for u in u_values:
        params = HubbardParams(n_sites=n_sites, u=float(u), t=t)
        spectrum = diagonalize(build_hamiltonian(basis, params), params)
        for level, energy in enumerate(spectrum.energies):
            rows.append((float(u), level, float(energy)))
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".9g")


def _flatten(message: str) -> str:
    return message.replace(",", ";").replace("\n", " ")


def records_to_csv(records: list[CorrelationRecord]) -> str:
    lines = [RECORD_HEADER]
    for r in records:
        lines.append(",".join([
            str(r.n_sites), _fmt(r.u), _fmt(r.kt), str(r.pair_i), str(r.pair_j),
            _fmt(r.lbc), _fmt(r.coherence), _fmt(r.mutual_info),
            _fmt(r.entropy_pair), _fmt(r.entropy_i), _fmt(r.entropy_j),
            _fmt(r.g0), _flatten(r.error),
        ]))
    return "\n".join(lines) + "\n"


def spectrum_to_csv(rows: list[tuple[float, int, float]]) -> str:
    lines = [SPECTRUM_HEADER]
    for u, level, energy in rows:
        lines.append(f"{_fmt(u)},{level},{_fmt(energy)}")
    return "\n".join(lines) + "\n"


def crossings_to_csv(n_sites: int, events: list[CrossingEvent]) -> str:
    lines = [CROSSING_HEADER]
    for e in events:
        lines.append(",".join([
            str(n_sites), _fmt(e.u_star), str(e.g_below), str(e.g_at),
            str(e.g_above), _fmt(e.bracket[0]), _fmt(e.bracket[1]),
        ]))
    return "\n".join(lines) + "\n"
