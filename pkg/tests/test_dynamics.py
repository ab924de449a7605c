import numpy as np
import pytest
from scipy.optimize import brentq

from delayRC.dynamics import (GeneModelParams, LatticeParams, LorenzParams, generate_gene_model, generate_lattice,
    generate_lorenz, generate_preset, make_params, random_input_sequence)
from delayRC.dynamics.systems import CoupledLogisticLattice, GeneRegulationSystem, LinearFlow, LogisticMap, LorenzSystem
from delayRC.exceptions import GenerationDivergedError, PresetNotFoundError


def convergence_ratios(errors):
    return [errors[i] / errors[i + 1] for i in range(len(errors) - 1)]


def test_lorenz_first_sample_is_initial_state():
    series = generate_lorenz(LorenzParams(n_steps=50, n_discard=0))
    assert series.shape == (3, 50)
    assert series.var_names == ['x', 'y', 'z']
    np.testing.assert_array_equal(series.values[:, 0], [1., 1., 1.])
    assert series.is_finite()


def test_lorenz_is_deterministic():
    params = LorenzParams(n_steps=200, n_discard=100)
    np.testing.assert_array_equal(generate_lorenz(params).values, generate_lorenz(params).values)


def test_lorenz_origin_is_a_fixed_point():
    series = generate_lorenz(LorenzParams(x0=(0., 0., 0.), n_steps=100, n_discard=10))
    assert np.all(series.values == 0.)


def test_lorenz_default_trajectory_stays_on_the_attractor():
    series = generate_lorenz(LorenzParams())
    assert series.shape == (3, 6000)
    assert np.max(np.abs(series.values[0])) < 25.
    assert 20. <= np.mean(series.values[2]) <= 27.


def test_lorenz_rk4_is_fourth_order():
    T = 0.5
    oracle = LorenzSystem(LorenzParams(dt=0.0005))
    reference = oracle.advance(oracle.initial_state(), int(round(T / 0.0005)))
    errors = []
    for dt in [0.02, 0.01, 0.005]:
        system = LorenzSystem(LorenzParams(dt=dt))
        x = system.advance(system.initial_state(), int(round(T / dt)))
        errors.append(np.linalg.norm(x - reference))
    for ratio in convergence_ratios(errors):
        assert 12. <= ratio <= 20.


def smooth_gene_params(dt):
    return GeneModelParams(k_decay=1., g_gain=2., theta1=1., h1=2., theta2=1., h2=1., tau1=1., tau2=2., history=0.5, dt=dt)


def test_gene_method_of_steps_is_fourth_order():
    T = 10.
    oracle = GeneRegulationSystem(smooth_gene_params(0.005))
    reference = oracle.observe(oracle.advance(oracle.initial_state(), int(round(T / 0.005))))
    errors = []
    for dt in [0.2, 0.1, 0.05]:
        system = GeneRegulationSystem(smooth_gene_params(dt))
        x = system.observe(system.advance(system.initial_state(), int(round(T / dt))))
        errors.append(abs(x[0] - reference[0]))
    for ratio in convergence_ratios(errors):
        assert 12. <= ratio <= 20.


def test_gene_without_feedback_decays_exponentially():
    params = GeneModelParams(g_gain=0., n_steps=101, n_discard=0)
    values = generate_gene_model(params).values[0]
    t = params.dt * np.arange(101)
    np.testing.assert_allclose(values, 1.2 * np.exp(-params.k_decay * t), rtol=1e-8)


def test_gene_equilibrium_history_stays_put():
    base = GeneModelParams()
    system = GeneRegulationSystem(base)
    x_star = brentq(lambda x: system.rhs(x, x, x), 0.5, 1.5, xtol=1e-15)
    values = generate_gene_model(GeneModelParams(history=x_star, n_steps=200, n_discard=0)).values[0]
    np.testing.assert_allclose(values, x_star, atol=1e-10)


def test_gene_history_change_acts_only_through_the_delay():
    def bump(t, a=-6., b=-2.):
        if a < t < b:
            return np.sin(np.pi * (t - a) / (b - a))**4
        return 0.

    base = generate_gene_model(GeneModelParams(history=lambda t: 1.2, n_steps=201, n_discard=0)).values[0]
    bumped = generate_gene_model(GeneModelParams(history=lambda t: 1.2 + 0.1 * bump(t), n_steps=201, n_discard=0)).values[0]

    # t - 17 stays below the bump for t < 11
    np.testing.assert_allclose(bumped[:109], base[:109], atol=1e-12)
    assert np.max(np.abs(bumped[120:] - base[120:])) > 1e-6


def test_gene_delay_must_be_a_multiple_of_dt():
    with pytest.raises(ValueError, match="not a multiple"):
        GeneModelParams(tau1=17.05, dt=0.1)


def test_gene_history_array_must_cover_the_delay():
    with pytest.raises(ValueError, match="history has"):
        GeneModelParams(history=np.ones(10))


def test_gene_preset_row_count():
    series = generate_preset('gene', {'n_steps': 300, 'n_discard': 0})
    assert series.n_steps == 300
    assert series.metadata['system'] == 'gene'


def test_distinct_delay_gene_preset():
    params = make_params('gene_hill', {'n_steps': 500, 'n_discard': 0})
    assert params.tau1 != params.tau2
    assert params.theta2 == 1.
    series = generate_gene_model(params)
    assert series.is_finite()
    assert np.all(series.values > 0.)


def test_unknown_preset_lists_the_available_ones():
    with pytest.raises(PresetNotFoundError) as info:
        make_params('rossler')
    assert 'lorenz' in str(info.value)
    assert 'gene' in str(info.value)


def test_lattice_stays_in_unit_interval():
    series = generate_lattice(LatticeParams(height=5, width=5, n_steps=200, n_discard=0))
    assert series.n_vars == 25
    assert series.var_names[1] == 'c0_1'
    assert np.all(series.values >= 0.) and np.all(series.values <= 1.)


def test_lattice_diffusion_conserves_mass():
    system = CoupledLogisticLattice(LatticeParams(height=4, width=6, local_map='identity', coupling=0.7))
    x = system.initial_state()
    y = system.advance(x, 25)
    assert abs(np.sum(y) - np.sum(x)) < 1e-12


def test_uncoupled_identity_lattice_is_constant():
    series = generate_lattice(LatticeParams(height=4, width=5, coupling=0., local_map='identity', n_steps=20, n_discard=0, seed=2))
    np.testing.assert_array_equal(series.values, np.repeat(series.values[:, :1], 20, axis=1))


def test_uncoupled_lattice_cells_follow_the_logistic_map():
    system = CoupledLogisticLattice(LatticeParams(height=3, width=3, coupling=0., map_parameter=3.9))
    x = system.initial_state()
    single = LogisticMap(a=3.9, x0=x[4])
    np.testing.assert_allclose(system.advance(x, 30)[4], single.advance(single.initial_state(), 30)[0], rtol=1e-12)


def test_random_input_sequence():
    u = random_input_sequence(3, 1000, amplitude=0.5)
    assert u.shape == (1, 1000)
    assert np.all(np.abs(u.values) <= 0.5)
    np.testing.assert_array_equal(u.values, random_input_sequence(3, 1000, amplitude=0.5).values)
    assert not np.array_equal(u.values, random_input_sequence(4, 1000, amplitude=0.5).values)


def test_zero_amplitude_input_is_silent():
    assert np.all(random_input_sequence(5, 100, amplitude=0.).values == 0.)


def test_random_input_mean_is_within_the_clt_bound():
    n = 10**5
    u = random_input_sequence(1, n, amplitude=0.5)
    assert abs(np.mean(u.values)) < 3. * (0.5 / np.sqrt(3.)) / np.sqrt(n)


def test_divergence_names_the_step():
    system = LinearFlow([[1000.]], [1.], dt=1.)
    with np.errstate(over='ignore', invalid='ignore'):
        with pytest.raises(GenerationDivergedError) as info:
            system.trajectory(100)
    assert 0 < info.value.step < 100
