import json
import math

import numpy as np
import pytest

from vortexgas.errors import ConfigError
from vortexgas.services.core import Configuration, Vortex
from vortexgas.services.dynamics.integrator import IntegratorOptions, integrate
from vortexgas.services.export.csv_io import (
    read_trajectory_csv,
    write_field_csv,
    write_snapshots_csv,
    write_sweep_csv,
    write_trajectory_csv,
)
from vortexgas.services.export.manifest import dumps, write_error_record
from vortexgas.services.flow import FlowPotential, field_grid
from vortexgas.services.landau import LGModel, temperature_sweep
from vortexgas.workers.pool import parallel_map, worker_count


def test_trajectory_csv_reads_back_exactly(tmp_path, rng, random_plane_config):
    c = random_plane_config(rng, 4)
    states = integrate(c, 0.5, IntegratorOptions(n_outputs=5))
    path = write_trajectory_csv(states, tmp_path / "t.csv")
    back = read_trajectory_csv(path)
    assert [t for t, _ in back] == [s.time for s in states]
    for (_, cfg), s in zip(back, states):
        assert np.array_equal(cfg.positions, s.config.positions)
        assert np.array_equal(cfg.charges, s.config.charges)


def test_states_without_vortices_keep_their_times(tmp_path):
    c = Configuration((Vortex(0j, 1), Vortex(0.02 + 0j, -1)))
    states = integrate(c, 0.4, IntegratorOptions(annihilation=True, r_core=0.05, n_outputs=4))
    assert all(len(s.config) == 0 for s in states)
    back = read_trajectory_csv(write_trajectory_csv(states, tmp_path / "empty.csv"))
    assert [t for t, _ in back] == [s.time for s in states]
    assert all(len(cfg) == 0 for _, cfg in back)


def test_empty_state_between_occupied_ones(tmp_path):
    one = Configuration((Vortex(0.5 + 0.25j, 2),))
    snapshots = [(0.0, one), (1.0, Configuration()), (2.0, one)]
    path = write_snapshots_csv(snapshots, tmp_path / "gap.csv")
    assert path.read_text(encoding="utf-8").splitlines() == [
        "time,vortex_index,charge,re,im",
        "0,0,2,0.5,0.25",
        "1,,,,",
        "2,0,2,0.5,0.25",
    ]
    back = read_trajectory_csv(path)
    assert [t for t, _ in back] == [0.0, 1.0, 2.0]
    assert [len(cfg) for _, cfg in back] == [1, 0, 1]
    assert back[2][1] == one


def test_trajectory_csv_errors(tmp_path):
    with pytest.raises(ConfigError):
        read_trajectory_csv(tmp_path / "missing.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("time,re\n0,1\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_trajectory_csv(bad)


def test_field_csv_leaves_missing_nodes_empty(tmp_path):
    grid = field_grid(FlowPotential.from_points([(0j, 1)]), (-1, 1, -1, 1), (3, 3))
    lines = write_field_csv(grid, tmp_path / "f.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,y,u,v"
    assert lines[5] == "0,0,,"
    # u + iv = i conj(1/z) at z = 1 + i
    x, y, u, v = map(float, lines[9].split(","))
    assert (x, y) == (1.0, 1.0)
    assert complex(u, v) == pytest.approx(1j * np.conj(1 / (1 + 1j)))


def test_sweep_csv(tmp_path):
    results = temperature_sweep(LGModel.quadratic(), [0.5, 2.0])
    text = write_sweep_csv(results, tmp_path / "s.csv").read_text(encoding="utf-8")
    assert text.splitlines() == ["T,psi_min,branch,F_min", "0.5,0.5,superfluid,-0.0625", "2,0,normal,0"]


def test_json_encoding():
    payload = json.loads(dumps({"z": 1 + 2j, "n": np.int64(3), "a": np.arange(2)}))
    assert payload == {"a": [0, 1], "n": 3, "z": {"im": 2.0, "re": 1.0}}


def test_error_record(tmp_path, capsys):
    write_error_record(tmp_path, {"error": "x", "message": "boom"})
    assert json.loads((tmp_path / "error.json").read_text())["message"] == "boom"
    assert '"boom"' in capsys.readouterr().err


def test_worker_count():
    assert worker_count(10, 1) == 1
    assert worker_count(3, 8) == 3
    assert worker_count(0, 4) == 1


def test_parallel_map_keeps_order():
    jobs = [-3, 1, -2, 5]
    assert parallel_map(abs, jobs, threads=1) == [3, 1, 2, 5]
    assert parallel_map(abs, jobs, threads=2) == [3, 1, 2, 5]


def test_sweep_is_the_same_in_processes(monkeypatch):
    model = LGModel.quadratic()
    grid = list(np.linspace(0.0, 2.0, 9))
    inline = temperature_sweep(model, grid)
    from vortexgas.settings import S

    monkeypatch.setattr(S, "threads", 2)
    assert temperature_sweep(model, grid) == inline
    assert all(math.isfinite(r.free_energy_min) for r in inline)
