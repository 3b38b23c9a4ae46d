import json

import numpy as np
import pytest

from dotchain import SweepConfig, run_sweep
from dotchain.cli import main
from dotchain.sweep import (
    RECORD_HEADER,
    records_to_csv,
    spectrum_rows,
    spectrum_to_csv,
)


def test_config_validation():
    with pytest.raises(ValueError, match="pair"):
        SweepConfig(n_sites=2, pair=(2, 1), u_values=(0.0,), kt_values=(0.0,))
    with pytest.raises(ValueError, match="ascending"):
        SweepConfig(n_sites=2, pair=(1, 2), u_values=(1.0, 0.5), kt_values=(0.0,))
    with pytest.raises(ValueError, match="non-empty"):
        SweepConfig(n_sites=2, pair=(1, 2), u_values=(), kt_values=(0.0,))
    with pytest.raises(ValueError, match="measures"):
        SweepConfig(n_sites=2, pair=(1, 2), u_values=(0.0,), kt_values=(0.0,),
                    measures=("negativity",))


def test_sweep_anchor_points():
    cfg = SweepConfig(n_sites=2, pair=(1, 2), u_values=(4.0,), kt_values=(0.0,))
    (record,) = run_sweep(cfg)
    assert abs(record.lbc - 0.58) < 0.02
    assert record.g0 == 2
    assert record.error == ""

    cfg = SweepConfig(n_sites=3, pair=(1, 2), u_values=(0.0,), kt_values=(0.0,))
    (record,) = run_sweep(cfg)
    assert abs(record.lbc - 0.38) < 0.02
    assert record.g0 == 4


def test_sweep_hot_limit_uncorrelated():
    cfg = SweepConfig(n_sites=2, pair=(1, 2), u_values=(1.0,), kt_values=(1e6,))
    (record,) = run_sweep(cfg)
    assert record.lbc < 1e-3
    assert record.coherence < 1e-3
    assert record.mutual_info < 1e-3


def test_sweep_order_and_grid_shape():
    cfg = SweepConfig(n_sites=2, pair=(1, 2), u_values=(0.0, 2.0),
                      kt_values=(0.0, 0.5, 1.0), measures=("lbc",))
    records = run_sweep(cfg)
    assert [(r.u, r.kt) for r in records] == [
        (0.0, 0.0), (0.0, 0.5), (0.0, 1.0), (2.0, 0.0), (2.0, 0.5), (2.0, 1.0)]
    for r in records:
        assert r.lbc is not None
        assert r.coherence is None  # not requested


def test_sweep_cache_matches_fresh_recomputation():
    from dotchain import (HubbardParams, build_basis, build_hamiltonian,
                          diagonalize, gibbs_state, partial_trace, lbc)
    cfg = SweepConfig(n_sites=2, pair=(1, 2), u_values=(1.5,),
                      kt_values=(0.3, 0.9), measures=("lbc",))
    records = run_sweep(cfg)
    basis = build_basis(2)
    for record in records:
        params = HubbardParams(n_sites=2, u=record.u)
        spec = diagonalize(build_hamiltonian(basis, params), params)
        rho = partial_trace(gibbs_state(spec, record.kt), basis, (1, 2))
        assert abs(lbc(rho).lbc - record.lbc) < 1e-12


def test_sweep_deterministic_csv_and_workers():
    cfg = dict(n_sites=2, pair=(1, 2), u_values=(0.0, 1.0, 2.0),
               kt_values=(0.0, 0.7))
    serial = records_to_csv(run_sweep(SweepConfig(**cfg, workers=1)))
    again = records_to_csv(run_sweep(SweepConfig(**cfg, workers=1)))
    parallel = records_to_csv(run_sweep(SweepConfig(**cfg, workers=2)))
    assert serial == again == parallel
    assert serial.startswith(RECORD_HEADER)


def test_spectrum_rows_shape():
    rows = spectrum_rows(2, (0.0, 5.0))
    assert len(rows) == 32
    per_u = {u: [] for u, _, _ in rows}
    for u, level, energy in rows:
        per_u[u].append((level, energy))
    for chunk in per_u.values():
        assert [lvl for lvl, _ in chunk] == list(range(16))
    # dimer ground energy at U=0 is -2 in units of t
    assert abs(min(energy for _, _, energy in rows) + 2.0) < 1e-9


def test_spectrum_csv_format():
    text = spectrum_to_csv(spectrum_rows(2, (0.0,)))
    lines = text.strip().split("\n")
    assert lines[0] == "U,level,energy"
    assert lines[1] == "0,0,-2"


# ------------------------------------------------------------------ CLI level

def test_cli_spectrum_to_file(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    rc = main(["spectrum", "--sites", "2", "--u", "0,3", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "U,level,energy"
    assert len(lines) == 1 + 32


def test_cli_sweep_stdout(capsys):
    rc = main(["sweep", "--sites", "2", "--pair", "1,2", "--u", "4",
               "--kt", "0", "--measures", "lbc"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == RECORD_HEADER
    fields = lines[1].split(",")
    assert fields[0] == "2"
    assert abs(float(fields[5]) - 0.577) < 0.01


def test_cli_crossings(tmp_path):
    out = tmp_path / "cross.csv"
    rc = main(["crossings", "--sites", "2", "--u-range", "0:6:25",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 2
    _, u_star, g_below, g_at, g_above, *_ = lines[1].split(",")
    assert abs(float(u_star) - 3.0) < 1e-4
    assert (g_below, g_at, g_above) == ("1", "3", "2")


def test_cli_missing_required_option(capsys):
    rc = main(["sweep", "--sites", "2", "--u", "1", "--kt", "0"])
    assert rc == 2
    assert "--pair" in capsys.readouterr().err


def test_cli_bad_range(capsys):
    rc = main(["spectrum", "--sites", "2", "--u-range", "0:10"])
    assert rc == 2


def test_cli_unknown_figure(capsys):
    rc = main(["figure", "9z"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "valid ids" in err and "2a" in err


def test_cli_exit_code_on_total_numerical_failure(monkeypatch, capsys):
    import dotchain.sweep as sweep_mod

    def broken(h, params=None):
        raise np.linalg.LinAlgError("synthetic eigensolver breakdown")

    monkeypatch.setattr(sweep_mod, "diagonalize", broken)
    rc = main(["sweep", "--sites", "2", "--pair", "1,2", "--u", "1",
               "--kt", "0,1"])
    assert rc == 1
    out = capsys.readouterr().out
    rows = out.strip().split("\n")[1:]
    assert len(rows) == 2
    assert all("synthetic eigensolver breakdown" in row for row in rows)


def test_cli_config_file_with_flag_override(tmp_path, capsys):
    cfg = {"sites": 2, "pair": "1,2", "u": "10", "kt": "0", "measures": "lbc"}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    rc = main(["sweep", "--config", str(path)])
    assert rc == 0
    first = capsys.readouterr().out.strip().split("\n")[1]
    assert first.split(",")[1] == "10"
    # the explicit flag beats the config value
    rc = main(["sweep", "--config", str(path), "--u", "4"])
    assert rc == 0
    first = capsys.readouterr().out.strip().split("\n")[1]
    assert first.split(",")[1] == "4"


def test_cli_figure_2a_discontinuity(tmp_path):
    out = tmp_path / "fig2a.csv"
    rc = main(["figure", "2a", "--u-range", "0:6:121", "--out", str(out),
               "--no-plot"])
    assert rc == 0
    rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
    by_u = {float(r[1]): float(r[5]) for r in rows}
    assert abs(by_u[3.0] - 0.50) < 0.02
    assert abs(by_u[3.05] - 0.58) < 0.02
    assert abs(by_u[4.0] - 0.58) < 0.02
    assert by_u[2.95] > 0.9


def test_cli_figure_1a_crossing_visible(tmp_path):
    out = tmp_path / "fig1a.csv"
    rc = main(["figure", "1a", "--u-range", "2:4:41", "--out", str(out),
               "--no-plot"])
    assert rc == 0
    rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
    ground = {}
    gap = {}
    for u_text, level, energy in rows:
        u = float(u_text)
        if level == "0":
            ground[u] = float(energy)
        if level == "3":
            gap[u] = float(energy)
    # at the crossing the three lowest levels meet: E0 = E1 = E2 = -1 at U=3
    assert abs(ground[3.0] + 1.0) < 1e-9
    assert gap[3.0] - ground[3.0] > 0.5  # level 3 stays separated


def test_cli_figure_renders_png(tmp_path):
    out = tmp_path / "fig3a.csv"
    rc = main(["figure", "3a", "--u", "1,4", "--kt-range", "0:2:5",
               "--out", str(out)])
    assert rc == 0
    assert (tmp_path / "fig3a.png").exists()
    assert out.exists()


def test_cli_figure_3c_large_u_convergence(tmp_path):
    out = tmp_path / "fig3c.csv"
    rc = main(["figure", "3c", "--kt-range", "0:2:9", "--out", str(out),
               "--no-plot"])
    assert rc == 0
    rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
    curves = {}
    for r in rows:
        curves.setdefault(float(r[1]), []).append(float(r[5]))
    values = list(curves.values())
    spread = max(max(abs(a - b) for a, b in zip(v1, v2))
                 for v1 in values for v2 in values)
    assert spread < 0.06  # curves for different large U nearly coincide
