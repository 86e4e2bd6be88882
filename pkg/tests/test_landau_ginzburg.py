import math
from pathlib import Path

import numpy as np
import pytest

from vortexgas.errors import (
    ConfigError,
    DegenerateModelError,
    InvalidParameterError,
    ModelValidationError,
    SweepError,
)
from vortexgas.services.intake.config_loader import get_preset, load_presets
from vortexgas.services.landau import (
    Affine,
    Branch,
    LGModel,
    OrderParameterResult,
    free_energy_density,
    order_parameter,
    relevance_check,
    stationary_moduli,
    temperature_sweep,
)
from vortexgas.services.landau.solver import stationary_from_coefficients, uniform_free_energy

PRESETS = Path(__file__).resolve().parents[1] / "config" / "presets" / "landau_ginzburg.yaml"


@pytest.fixture
def quadratic():
    return LGModel.quadratic(1.0, 1.0, T_c=1.0)


# ---- free energy

def test_free_energy_density_examples():
    m = LGModel.constant(-2.0, 1.0)
    assert free_energy_density(m, 0.5, 1.0) == pytest.approx(-1.0)
    assert free_energy_density(m, 0.5, 0.0) == 0.0
    assert free_energy_density(m, 0.5, 1.0, grad_sq=4.0) == pytest.approx(1.0)
    assert free_energy_density(LGModel.constant(-2.0, 1.0, 0.5), 0.5, 2.0) == pytest.approx(-4 + 4 + 4)


def test_free_energy_rejects_negative_inputs():
    with pytest.raises(InvalidParameterError):
        free_energy_density(LGModel.constant(-2.0, 1.0), 0.5, -1.0)


def test_sign_structure_is_validated():
    # b <= 0 above T_c
    with pytest.raises(ModelValidationError):
        free_energy_density(LGModel.constant(-1.0, -1.0, T_c=1.0), 2.0, 1.0)
    # a/b >= 0 below T_c
    with pytest.raises(ModelValidationError):
        order_parameter(LGModel.constant(1.0, 1.0, T_c=1.0), 0.5)


def test_model_parameters_are_checked():
    with pytest.raises(InvalidParameterError):
        LGModel.quadratic(m=0.0)
    with pytest.raises(InvalidParameterError):
        LGModel.quadratic(T_c=-1.0)


# ---- stationary moduli

def test_stationary_moduli_examples():
    assert stationary_moduli(LGModel.constant(-2.0, 1.0), 0.5) == [0.0, 1.0]
    assert stationary_moduli(LGModel.constant(1.0, 1.0), 2.0) == [0.0]
    double = stationary_moduli(LGModel.constant(3.0, -3.0, 1.0), 0.5)
    assert len(double) == 2 and double[1] == pytest.approx(1.0)


def test_degenerate_model():
    with pytest.raises(DegenerateModelError):
        stationary_from_coefficients(1.0, 0.0, 0.0)
    assert stationary_from_coefficients(0.0, 0.0, 0.0) == [0.0]


def test_stationary_residuals(rng):
    for _ in range(500):
        a, b, c = rng.uniform(-5, 5, 3)
        for x in stationary_from_coefficients(a, b, c)[1:]:
            terms = (abs(a), abs(2 * b * x), abs(3 * c * x * x))
            assert abs(a + 2 * b * x + 3 * c * x * x) < 1e-9 * sum(terms)
            assert x > 0


# ---- order parameter

def test_order_parameter_examples(quadratic):
    r = order_parameter(quadratic, 2.0)
    assert (r.psi_min, r.branch) == (0.0, Branch.NORMAL)

    r = order_parameter(quadratic, 0.5)
    assert r.branch is Branch.SUPERFLUID
    assert r.psi_min == pytest.approx(0.5, rel=1e-12)
    assert r.free_energy_min == pytest.approx(-0.0625, rel=1e-12)

    r = order_parameter(quadratic, 1.0)
    assert r.psi_min == 0.0 and r.branch is Branch.NORMAL


def test_quadratic_identity(rng):
    for _ in range(50):
        a0, b, T_c = rng.uniform(0.1, 3.0, 3)
        model = LGModel.quadratic(a0, b, T_c=T_c)
        T = float(rng.uniform(0.0, T_c * 0.999))
        a = a0 * (T - T_c)
        assert order_parameter(model, T).psi_min ** 2 == pytest.approx(-a / (2 * b), rel=1e-12)


def test_minimizer_beats_a_dense_grid(rng):
    models = [LGModel.quadratic(1.0, 1.0), LGModel.quadratic(2.0, 0.5, c=0.3), LGModel.constant(5.0, -6.0, 2.0, T_c=10.0)]
    for model in models:
        for T in rng.uniform(0.0, 0.99, 10):
            r = order_parameter(model, float(T))
            a, b, c = model.coefficients(float(T))
            roots = stationary_moduli(model, float(T))
            for x in roots:
                assert r.free_energy_min <= uniform_free_energy(a, b, c, x) + 1e-15
            xs = np.linspace(0.0, 2 * max(max(roots), 1e-3), 10_000)
            assert r.free_energy_min <= np.min(a * xs + b * xs**2 + c * xs**3) + 1e-12


def test_result_branch_consistency():
    with pytest.raises(InvalidParameterError):
        OrderParameterResult(1.0, 0.0, Branch.SUPERFLUID, 0.0)
    with pytest.raises(InvalidParameterError):
        OrderParameterResult(1.0, 0.5, Branch.NORMAL, -1.0)
    row = OrderParameterResult(1.0, 0.5, Branch.SUPERFLUID, -1.0).to_row()
    assert row == {"T": 1.0, "psi_min": 0.5, "branch": "superfluid", "F_min": -1.0}


# ---- sweep

def test_sweep_straddling_critical_point(quadratic):
    grid = np.linspace(0.0, 2.0, 101)
    results = temperature_sweep(quadratic, grid)
    assert len(results) == 101
    below = [r for r in results if r.temperature < 1.0]
    above = [r for r in results if r.temperature >= 1.0]
    assert all(r.branch is Branch.SUPERFLUID for r in below)
    assert all(r.psi_min == 0.0 for r in above)
    psi = [r.psi_min for r in below]
    assert all(p2 < p1 for p1, p2 in zip(psi, psi[1:]))


def test_continuity_at_critical_point(quadratic):
    for h in (1e-2, 1e-4, 1e-6, 1e-8):
        left = order_parameter(quadratic, 1.0 - h).psi_min
        assert left == pytest.approx(math.sqrt(h / 2), rel=1e-6)
        assert order_parameter(quadratic, 1.0 + h).psi_min == 0.0


def test_sweep_grid_checks(quadratic):
    with pytest.raises(InvalidParameterError):
        temperature_sweep(quadratic, [])
    with pytest.raises(InvalidParameterError):
        temperature_sweep(quadratic, [1.0, 0.5])


def test_sweep_reports_the_failing_temperature():
    bad = LGModel.constant(1.0, 1.0, T_c=1.0)
    assert len(temperature_sweep(bad, [1.5, 2.0, 2.5])) == 3
    with pytest.raises(SweepError) as info:
        temperature_sweep(bad, [0.5, 2.0])
    assert info.value.context["temperature"] == 0.5
    assert isinstance(info.value.__cause__, ModelValidationError)


# ---- relevance

def test_relevance_quadratic(quadratic):
    below = relevance_check(quadratic, 0.5)
    assert below.relevant and below.nontrivial_minima == 1 and below.gauge_group_rank == 1
    above = relevance_check(quadratic, 2.0)
    assert above.relevant and above.nontrivial_minima == 0 and above.implied_genus == 1


def test_relevance_two_roots():
    model = LGModel.from_params(get_preset("two_root_cubic", PRESETS), name="two_root_cubic")
    report = relevance_check(model, 1.0)
    assert not report.relevant
    assert len(report.nontrivial_roots) == 2
    assert report.nontrivial_roots[0] == pytest.approx(1 - math.sqrt(1 / 6))
    assert report.nontrivial_roots[1] == pytest.approx(1 + math.sqrt(1 / 6))
    assert report.implied_genus == 2
    assert report.to_dict()["relevant"] is False
    # advisory only: the larger root sits above F(0)
    assert order_parameter(model, 1.0).branch is Branch.NORMAL


# ---- presets / params

def test_presets_load():
    presets = load_presets(PRESETS)
    assert {"quadratic", "sextic_stable", "two_root_cubic"} <= set(presets)
    with pytest.raises(ConfigError):
        get_preset("nope", PRESETS)


def test_from_params():
    m = LGModel.from_params({"a0": 2.0, "b": 0.5, "c": 0.1, "m": 3.0, "Tc": 4.0})
    assert m.coefficients(5.0) == pytest.approx((2.0, 0.5, 0.1))
    assert m.m == 3.0 and m.T_c == 4.0
    assert LGModel.from_params({"a": -1.0, "b": 1.0}).coefficients(7.0) == (-1.0, 1.0, 0.0)


def test_affine():
    assert Affine(1.0, 2.0, 3.0)(4.0) == 3.0
