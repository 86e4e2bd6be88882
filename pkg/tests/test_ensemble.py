import math

import mpmath as mp
import numpy as np
import pytest

from vortexgas.errors import GeometryError, InvalidParameterError, SphereGeometryError
from vortexgas.services.core import Configuration, Vortex, hamiltonian
from vortexgas.services.ensemble import (
    EnsembleSpec,
    MetropolisChain,
    metropolis_acceptance,
    pairing_stats,
    run_chain,
    sample,
    temperature_scan,
)
from vortexgas.services.geometry.surfaces import Geometry, kernel_values, minimum_image


def spec(**kw):
    base = dict(n_pairs=2, geometry=Geometry.torus(1.0, 1.0), beta=1.0, n_sweeps=50, n_burn=10, seed=7)
    base.update(kw)
    return EnsembleSpec(**base)


def min_separation(config):
    z = config.positions
    i, j = np.triu_indices(len(z), 1)
    return float(np.min(np.abs(minimum_image(config.geometry, z[i] - z[j]))))


# ---- pairing

def test_pairing_examples(unit_torus):
    tight = Configuration((Vortex(0j, 1), Vortex(0.01 + 0j, -1)))
    frac, mean = pairing_stats(tight, 0.05)
    assert frac == 1.0 and mean == pytest.approx(0.01)

    loose = Configuration((Vortex(0j, 1), Vortex(0.4 + 0j, -1)), unit_torus)
    assert pairing_stats(loose, 0.05)[0] == 0.0

    mixed = Configuration(
        (Vortex(0.1 + 0.1j, 1), Vortex(0.12 + 0.1j, -1), Vortex(0.5 + 0.6j, 1), Vortex(0.8 + 0.6j, -1)),
        unit_torus,
    )
    frac, mean = pairing_stats(mixed, 0.05)
    assert frac == 0.5
    assert mean == pytest.approx((0.02 + 0.02 + 0.3 + 0.3) / 4)


def test_pairing_uses_minimum_image(unit_torus):
    c = Configuration((Vortex(0.99 + 0.5j, 1), Vortex(0.01 + 0.5j, -1)), unit_torus)
    assert pairing_stats(c, 0.05) == pytest.approx((1.0, 0.02))


def test_pairing_errors():
    with pytest.raises(InvalidParameterError):
        pairing_stats(Configuration(), 0.1)
    with pytest.raises(InvalidParameterError):
        pairing_stats(Configuration((Vortex(0j, 1), Vortex(1 + 0j, 1))), 0.1)
    with pytest.raises(InvalidParameterError):
        pairing_stats(Configuration((Vortex(0j, 1), Vortex(1 + 0j, -1))), 0.0)


# ---- acceptance rule

def test_metropolis_acceptance():
    assert metropolis_acceptance(-3.0, 2.0) == 1.0
    assert metropolis_acceptance(0.0, 2.0) == 1.0
    assert metropolis_acceptance(1.0, 2.0) == pytest.approx(math.exp(-2.0))


def test_detailed_balance_on_a_two_vortex_grid(unit_torus):
    beta = 1.7
    fixed = Vortex(0.5 + 0.5j, -1)
    grid = [complex(x, y) for x in np.arange(0.05, 1.0, 0.1) for y in np.arange(0.05, 1.0, 0.1)]
    H = [hamiltonian(Configuration((Vortex(z, 1), fixed), unit_torus)) for z in grid]
    for a in range(len(grid)):
        for b in range(a + 1, len(grid), 7):
            forward = math.exp(-beta * H[a]) * metropolis_acceptance(H[b] - H[a], beta)
            backward = math.exp(-beta * H[b]) * metropolis_acceptance(H[a] - H[b], beta)
            assert forward == pytest.approx(backward, rel=1e-12)


@pytest.mark.slow
def test_two_vortex_chain_samples_the_boltzmann_weight(unit_torus):
    beta, core = 2.0, 0.1
    chain = MetropolisChain(spec(n_pairs=1, beta=beta, hard_core=core, proposal_scale=0.45, seed=11))
    for _ in range(2_000):
        chain.step()
    n = 90_000
    rel = np.empty(n, dtype=np.complex128)
    for k in range(n):
        chain.step()
        rel[k] = chain.z[0] - chain.z[1]
    r = np.abs(minimum_image(unit_torus, rel))
    assert r.min() >= core
    assert chain.hard_core_rejections > 0

    edges = np.array([core, 0.2, 0.3, 0.4, 0.5, 0.75])
    observed = np.histogram(r, bins=edges)[0] / n
    # H = K(d) for a +-1 pair; weight exp(-beta K) over the cell, zero inside the core
    m = 400
    x = (np.arange(m) + 0.5) / m - 0.5
    d = (x[:, None] + 1j * x[None, :]).ravel()
    w = np.where(np.abs(d) >= core, np.exp(-beta * kernel_values(unit_torus, d)), 0.0)
    expected = np.histogram(np.abs(d), bins=edges, weights=w)[0] / w.sum()
    assert observed == pytest.approx(expected, abs=0.015)


# ---- EnsembleSpec

def test_spec_defaults_resolve_against_the_period():
    s = spec(geometry=Geometry.torus(2.0, 1.0))
    assert (s.hard_core, s.proposal_scale, s.r_pair) == pytest.approx((0.01, 0.1, 0.03))
    assert s.n_vortices == 4
    assert s.to_dict()["geometry"] == {"kind": "torus", "L1": 2.0, "L2": 1.0}


def test_spec_validation():
    with pytest.raises(GeometryError):
        spec(geometry=Geometry.plane())
    with pytest.raises(SphereGeometryError):
        spec(geometry=Geometry.sphere())
    with pytest.raises(InvalidParameterError):
        spec(beta=0.0)
    with pytest.raises(InvalidParameterError):
        spec(n_pairs=0)
    with pytest.raises(InvalidParameterError):
        spec(hard_core=0.2, proposal_scale=0.1)
    with pytest.raises(InvalidParameterError):
        spec(proposal_scale=1.5)


# ---- chains

def test_same_seed_same_statistics():
    assert sample(spec()) == sample(spec())
    assert sample(spec()) != sample(spec(seed=8))


def test_statistics_ranges():
    stats = sample(spec(n_pairs=4))
    assert 0.0 <= stats.acceptance_rate <= 1.0
    assert 0.0 <= stats.dipole_fraction <= 1.0
    assert stats.samples == 50
    assert stats.proposals == 50 * 8
    assert set(stats.to_row()) == {"beta", "mean_energy", "acceptance", "dipole_fraction", "mean_nn_distance"}


def test_high_temperature_accepts_nearly_everything():
    stats = sample(spec(n_pairs=4, beta=1e-9, n_sweeps=200))
    assert stats.acceptance_rate > 0.99


def test_tight_dipole_matches_the_two_vortex_boltzmann_integral(unit_torus):
    beta, core = 50.0, 0.01
    stats = sample(spec(n_pairs=1, beta=beta, hard_core=core, proposal_scale=0.015, n_burn=2000, n_sweeps=2000))

    # <r> under the radial weight r exp(-beta K(r)) on [core, R]; the tail past 2 core is negligible
    K_core = float(kernel_values(unit_torus, core))

    def weight(r):
        return r * mp.exp(-beta * (float(kernel_values(unit_torus, float(r))) - K_core))

    Z = mp.quad(weight, [core, 2 * core, 0.1])
    mean_r = float(mp.quad(lambda r: r * weight(r), [core, 2 * core, 0.1]) / Z)
    assert mean_r == pytest.approx(core * 48 / 47, rel=1e-3)
    assert stats.mean_nn_distance == pytest.approx(mean_r, rel=0.01)
    assert stats.dipole_fraction == 1.0


def test_incremental_energy_tracks_the_full_hamiltonian():
    chain = MetropolisChain(spec(n_pairs=4, beta=2.0))
    for _ in range(10_000):
        chain.step()
    assert chain.energy == pytest.approx(hamiltonian(chain.config, eps=0.0), abs=1e-8)
    assert chain.accepted > 0


def test_sweeps_keep_neutrality_and_hard_core():
    s = spec(n_pairs=4, beta=5.0, hard_core=0.05, proposal_scale=0.2)
    chain = MetropolisChain(s)
    for _ in range(100):
        chain.sweep()
        c = chain.config
        assert c.net_charge == 0
        assert min_separation(c) >= s.hard_core


def test_chain_rejects_charged_start(unit_torus):
    charged = Configuration((Vortex(0.1 + 0j, 1), Vortex(0.5 + 0j, 1)), unit_torus)
    with pytest.raises(InvalidParameterError):
        MetropolisChain(spec(n_pairs=1), charged)


def test_run_chain_dumps():
    stats, dumps = run_chain(spec(n_sweeps=10), dump_every=5)
    assert [k for k, _ in dumps] == [5, 10]
    assert all(c.is_neutral and len(c) == 4 for _, c in dumps)
    assert stats.samples == 10


# ---- scan

def test_single_point_scan_equals_sample():
    s = spec()
    assert temperature_scan(s, [s.beta]) == [sample(s)]


def test_scan_grid_checks():
    with pytest.raises(InvalidParameterError):
        temperature_scan(spec(), [])
    with pytest.raises(InvalidParameterError):
        temperature_scan(spec(), [2.0, 1.0])


def test_scan_is_reproducible():
    assert temperature_scan(spec(), [0.5, 1.0]) == temperature_scan(spec(), [0.5, 1.0])


@pytest.mark.slow
def test_low_temperature_pairs_more():
    wins = 0
    for seed in range(5):
        hot, cold = temperature_scan(spec(n_pairs=8, n_burn=100, n_sweeps=300, seed=seed), [0.5, 8.0])
        wins += cold.dipole_fraction > hot.dipole_fraction
    assert wins >= 4
