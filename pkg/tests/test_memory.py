import numpy as np
import pytest

from delayRC.analysis.memory import memory_capacity, squared_correlation
from delayRC.exceptions import InsufficientDataError
from delayRC.models.delayrc import DelaySpec, ReservoirConfig, build_reservoir


@pytest.fixture(scope='module')
def single_neuron():
    return build_reservoir(ReservoirConfig(m=1, density=1., input_scale=0.01, seed=3))


def test_squared_correlation():
    x = np.linspace(-1., 1., 50)
    assert squared_correlation(x, 3. * x - 2.) == pytest.approx(1.)
    assert squared_correlation(x, np.ones(50)) == 0.
    assert squared_correlation(np.zeros(50), x) == 0.


def test_silent_reservoir_has_no_memory():
    res = build_reservoir(ReservoirConfig(m=10, density=0.5, spectral_radius=0., input_scale=0.))
    result = memory_capacity(res, DelaySpec.uniform(10, 1), k_max=10, n_train=1500, n_test=500)
    assert result.mc_k == [0.] * 10
    assert result.total == 0.


def test_current_input_is_recalled_perfectly():
    res = build_reservoir(ReservoirConfig(m=20, density=0.3, seed=1))
    result = memory_capacity(res, DelaySpec.uniform(20, 1), k_max=5, beta=1e-10, include_input=True, k_start=0,
        n_train=2000, n_test=500)
    assert result.ks[0] == 0
    assert result.mc_k[0] > 0.999999


def test_capacities_lie_in_the_unit_interval():
    res = build_reservoir(ReservoirConfig(m=30, density=0.2, input_scale=0.5, seed=2))
    result = memory_capacity(res, DelaySpec.uniform(30, 3, stride=2), k_max=30)
    assert len(result.mc_k) == 30
    assert all(0. <= v <= 1. + 1e-9 for v in result.mc_k)
    assert result.total == pytest.approx(sum(result.mc_k))
    assert sum(result.lags) == 90


def test_delays_extend_the_memory_of_a_single_neuron(single_neuron):
    plain = memory_capacity(single_neuron, DelaySpec.uniform(1, 1), k_max=20, beta=1e-8)
    delayed = memory_capacity(single_neuron, DelaySpec.uniform(1, 20), k_max=20, beta=1e-8)
    for k in range(10):
        assert delayed.mc_k[k] > 0.99
        assert delayed.mc_k[k] > plain.mc_k[k]
    assert delayed.total > plain.total
    assert plain.is_fading()


def test_same_seed_gives_the_same_curve(single_neuron):
    spec = DelaySpec.uniform(1, 5, stride=2)
    a = memory_capacity(single_neuron, spec, k_max=10, seed=4, n_train=2000, n_test=500)
    b = memory_capacity(single_neuron, spec, k_max=10, seed=4, n_train=2000, n_test=500)
    assert a.mc_k == b.mc_k


def test_result_frame():
    res = build_reservoir(ReservoirConfig(m=6, density=0.5, seed=5))
    result = memory_capacity(res, DelaySpec.uniform(6, 2), k_max=8, n_train=1500, n_test=500, label='6x2')
    frame = result.to_frame()
    assert list(frame['k']) == list(range(1, 9))
    assert set(frame['config']) == {'6x2'}
    assert set(frame['effective_dimension']) == {12}


def test_training_must_cover_the_history():
    res = build_reservoir(ReservoirConfig(m=5, density=0.5))
    with pytest.raises(InsufficientDataError):
        memory_capacity(res, DelaySpec.uniform(5, 1), k_max=100, n_train=600, washout=500)
    with pytest.raises(InsufficientDataError):
        memory_capacity(res, DelaySpec.uniform(5, 1), k_max=10, n_test=1)
