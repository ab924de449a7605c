import logging

import numpy as np
import pytest

from delayRC.dynamics import LorenzParams, generate_lorenz
from delayRC.exceptions import DimensionMismatchError, InsufficientDataError, SolverError, WarmupTooShortError
from delayRC.models.delayrc import (DelayRC, DelaySpec, Normalizer, ReadoutModel, Reservoir, assemble_delayed_features,
    predict_closed_loop, predict_open_loop, suggest_washout, train_ridge)
from delayRC.models.delayrc.readout import ridge_loss
from delayRC.timeseries import TimeSeries


def test_delay_features_are_recency_first():
    states = np.arange(5.)[np.newaxis, :]
    F, start = assemble_delayed_features(states, DelaySpec(stride=2, lags=[3]))
    assert start == 4
    np.testing.assert_array_equal(F[:, 0], [4., 2., 0.])


def test_delay_features_are_neuron_major():
    states = np.vstack([np.arange(6.), 10. + np.arange(6.)])
    F, start = assemble_delayed_features(states, DelaySpec(stride=1, lags=[2, 3]))
    assert start == 2
    np.testing.assert_array_equal(F[:, 0], [2., 1., 12., 11., 10.])


def test_unit_lags_give_back_the_states():
    states = np.random.default_rng(0).uniform(-1, 1, size=(4, 20))
    F, start = assemble_delayed_features(states, DelaySpec.uniform(4, 1, stride=7))
    assert start == 0
    np.testing.assert_array_equal(F, states)


def test_washout_moves_the_first_column():
    states = np.random.default_rng(1).uniform(-1, 1, size=(2, 30))
    F, start = assemble_delayed_features(states, DelaySpec.uniform(2, 2, stride=3), washout=10)
    assert start == 10
    assert F.shape == (4, 20)


def test_constant_states_give_constant_features():
    F, _ = assemble_delayed_features(0.3 * np.ones((3, 15)), DelaySpec.uniform(3, 4, stride=2))
    assert np.all(F == 0.3)


def test_delay_features_are_shift_invariant():
    states = np.random.default_rng(2).uniform(-1, 1, size=(3, 40))
    spec = DelaySpec(stride=2, lags=[1, 3, 2])
    F, _ = assemble_delayed_features(states, spec)
    G, _ = assemble_delayed_features(states[:, 5:], spec)
    np.testing.assert_array_equal(G, F[:, 5:])


def test_delay_features_need_enough_history():
    with pytest.raises(InsufficientDataError):
        assemble_delayed_features(np.ones((1, 4)), DelaySpec(stride=2, lags=[3]))


def test_delay_features_check_the_neuron_count():
    with pytest.raises(DimensionMismatchError):
        assemble_delayed_features(np.ones((3, 10)), DelaySpec.uniform(2, 1))


def test_delay_spec_constructors():
    spec = DelaySpec.split(10, 3, stride=4)
    assert spec.lags == [4, 3, 3]
    assert spec.effective_dimension == 10
    assert spec.max_history == 12
    assert spec.is_delayed

    assert DelaySpec.uniform(40, 5).label() == '40x5'
    assert not DelaySpec.uniform(40, 1).is_delayed

    random = DelaySpec.random(50, mean=5, seed=3)
    assert all(1 <= d <= 9 for d in random.lags)
    assert random.label() == '50xrandom'
    assert random.lags == DelaySpec.random(50, mean=5, seed=3).lags

    with pytest.raises(ValueError):
        DelaySpec.split(2, 3)
    with pytest.raises(ValueError):
        DelaySpec(stride=1, lags=[2, 0])


def test_scalar_ridge():
    W = train_ridge([[1., 2., 3.]], [[1., 2., 3.]], beta=1.)
    assert W[0, 0] == pytest.approx(14. / 15.)


def test_ridge_matches_the_normal_equations():
    rng = np.random.default_rng(4)
    for _ in range(50):
        d, n_out, T = rng.integers(1, 8), rng.integers(1, 4), rng.integers(10, 60)
        R = rng.normal(size=(d, T))
        Y = rng.normal(size=(n_out, T))
        beta = 10.**rng.uniform(-4, 1)
        oracle = np.linalg.solve(R.dot(R.T) + beta * np.eye(d), R.dot(Y.T)).T
        np.testing.assert_allclose(train_ridge(R, Y, beta), oracle, atol=1e-8)


def test_unregularized_ridge_recovers_a_linear_map():
    rng = np.random.default_rng(5)
    A = rng.normal(size=(2, 4))
    R = rng.normal(size=(4, 100))
    np.testing.assert_allclose(train_ridge(R, A.dot(R), beta=0.), A, atol=1e-10)


def test_regularization_shrinks_the_weights():
    rng = np.random.default_rng(6)
    R = rng.normal(size=(5, 40))
    Y = rng.normal(size=(1, 40))
    norms = [np.linalg.norm(train_ridge(R, Y, beta)) for beta in [1e-6, 1e-2, 1., 100.]]
    assert all(a > b for a, b in zip(norms[:-1], norms[1:]))


def test_ridge_minimizes_its_loss():
    rng = np.random.default_rng(7)
    R = rng.normal(size=(6, 50))
    Y = rng.normal(size=(2, 50))
    W = train_ridge(R, Y, 0.5)
    best = ridge_loss(W, R, Y, 0.5)
    for _ in range(20):
        assert ridge_loss(W + 1e-3 * rng.normal(size=W.shape), R, Y, 0.5) > best


def test_singular_features_fall_back_to_the_minimum_norm_solution():
    a = np.array([1., 2., 3., 4.])
    W = train_ridge(np.vstack([a, a]), [2. * a], beta=0.)
    np.testing.assert_allclose(W, [[1., 1.]], atol=1e-8)


def test_ridge_hand_computed_normal_equations():
    # R R^T + 0.1 I = [[2.1, 1], [1, 2.1]] and Y R^T = [3, 3]
    W = train_ridge([[1., 0., 1.], [0., 1., 1.]], [[1., 1., 2.]], beta=0.1)
    np.testing.assert_allclose(W, [[30. / 31., 30. / 31.]], rtol=1e-12)


def test_ill_conditioned_normal_equations_use_the_svd_solve(caplog):
    # unit lower-triangular, so the Cholesky factor has a flat diagonal while cond(R R^T) ~ 4^d
    d = 30
    R = np.eye(d) - np.tril(np.ones((d, d)), -1)
    with caplog.at_level(logging.WARNING, logger='delayRC'):
        W = train_ridge(R, np.ones((1, d)), beta=0.)
    assert 'SVD solve' in caplog.text
    assert np.all(np.isfinite(W))


def test_ridge_rejects_bad_input():
    with pytest.raises(SolverError):
        train_ridge(np.ones((2, 0)), np.ones((1, 0)), 1.)
    with pytest.raises(SolverError):
        train_ridge([[1., np.nan]], [[1., 2.]], 1.)
    with pytest.raises(DimensionMismatchError):
        train_ridge(np.ones((2, 5)), np.ones((1, 4)), 1.)
    with pytest.raises(ValueError):
        train_ridge(np.ones((2, 5)), np.ones((1, 5)), -1.)


def test_zero_readout_predicts_the_mean():
    model = ReadoutModel(np.zeros((1, 2)), DelaySpec.uniform(2, 1), 1e-6, Normalizer([3.], [2.]))
    pred = predict_open_loop(model, np.random.default_rng(8).uniform(-1, 1, size=(2, 10)))
    np.testing.assert_allclose(pred.values, 3.)


def test_readout_record_round_trip():
    model = ReadoutModel([[0.5, -1., 2.]], DelaySpec(stride=3, lags=[2, 1]), 1e-4, Normalizer([1.], [4.]), washout=7,
        dt=0.1, var_names=['x'])
    again = ReadoutModel.from_record(model.to_record())
    np.testing.assert_array_equal(again.w_out, model.w_out)
    assert again.delay_spec == model.delay_spec
    assert again.min_warmup == model.min_warmup == 11


def two_lag_recursion(n, x0=0.5, x1=0.3):
    x = [x0, x1]
    for _ in range(n - 2):
        x.append(1.8 * np.tanh(x[-1]) - 0.9 * np.tanh(x[-2]))
    return np.array(x)


def test_closed_loop_reproduces_an_exact_recursion():
    # r_k = tanh(x_k), so the two-lag readout is the recursion itself
    res = Reservoir.from_matrices([[1.]], [[0.]])
    model = ReadoutModel([[1.8, -0.9]], DelaySpec(stride=1, lags=[2]), 0., Normalizer.identity(1))
    x = two_lag_recursion(70)
    pred = predict_closed_loop(res, model, TimeSeries(x[:20], 1.), 50)
    np.testing.assert_allclose(pred.values[0], x[20:], atol=1e-8)


def test_closed_loop_needs_a_long_enough_warmup():
    res = Reservoir.from_matrices([[1.]], [[0.]])
    model = ReadoutModel([[1.8, -0.9]], DelaySpec(stride=3, lags=[2]), 0., Normalizer.identity(1), washout=5)
    with pytest.raises(WarmupTooShortError) as info:
        predict_closed_loop(res, model, TimeSeries(np.zeros(8), 1.), 10)
    assert info.value.required == 9


@pytest.fixture(scope='module')
def trained_lorenz():
    series = generate_lorenz(LorenzParams(n_steps=3000, n_discard=1000))
    return DelayRC(series, delay_spec=DelaySpec.uniform(50, 2, stride=2), train_length=2500, washout=200, m=50,
        input_scale=0.5, density=0.2, seed=1).run()


def test_delayed_reservoir_fits_lorenz_one_step(trained_lorenz):
    assert trained_lorenz.name == 'RC-50x2'
    assert trained_lorenz.train_mse < 1e-3
    assert trained_lorenz.test_mse < 1e-2
    assert trained_lorenz.model.w_out.shape == (3, 100)


def test_first_closed_loop_step_is_the_open_loop_prediction(trained_lorenz):
    pred = trained_lorenz.predict(5)
    np.testing.assert_allclose(pred.values[:, 0], trained_lorenz.test_pred.values[:, 0], rtol=1e-10, atol=1e-10)


def test_auto_washout_follows_the_echo_state_check():
    series = generate_lorenz(LorenzParams(n_steps=1500, n_discard=500))
    rc = DelayRC(series, train_length=1200, washout='auto', m=20, input_scale=0.5, density=0.5, seed=3).run()
    train = series.values[:, :1200]
    assert rc.washout == suggest_washout(rc.reservoir, Normalizer.fit(train).transform(train))
    assert rc.washout >= 500
    assert rc.model.washout == rc.washout
