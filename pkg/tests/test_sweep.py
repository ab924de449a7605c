import numpy as np
import pytest

from delayRC.analysis.sweep import tradeoff_grid
from delayRC.dynamics import LorenzParams, generate_lorenz
from delayRC.misc.utils import derive_seed
from delayRC.models.delayrc import DelayRC, DelaySpec


@pytest.fixture(scope='module')
def lorenz():
    return generate_lorenz(LorenzParams(n_steps=1200, n_discard=500))


FIELDS = {'density': 0.5, 'input_scale': 0.5}


def test_single_cell_matches_a_direct_fit(lorenz):
    result = tradeoff_grid(lorenz, [10], [3], tau=2, seed=11, washout=100, reservoir_fields=FIELDS)
    direct = DelayRC(lorenz, delay_spec=DelaySpec.uniform(10, 3, 2), washout=100, m=10,
        seed=derive_seed(11, 'reservoir', 0, 0, 0), **FIELDS).run()
    assert result.records[0]['mse'] == direct.train_mse
    assert result.records[0]['seed'] == derive_seed(11, 'reservoir', 0, 0, 0)


def test_parallel_grid_equals_serial(lorenz):
    kwargs = dict(tau=2, repeats=2, seed=3, washout=100, reservoir_fields=FIELDS)
    serial = tradeoff_grid(lorenz, [5, 10], [1, 2], n_jobs=1, **kwargs)
    parallel = tradeoff_grid(lorenz, [5, 10], [1, 2], n_jobs=2, **kwargs)
    assert [r['seed'] for r in serial.records] == [r['seed'] for r in parallel.records]
    np.testing.assert_allclose([r['mse'] for r in serial.records], [r['mse'] for r in parallel.records], rtol=1e-12)
    assert serial.medians().shape == (2, 2)
    assert len(serial.cell(5, 2)) == 2


def test_repeats_use_different_reservoirs(lorenz):
    result = tradeoff_grid(lorenz, [10], [1], repeats=3, washout=100, reservoir_fields=FIELDS)
    assert len(set(r['seed'] for r in result.records)) == 3
    assert len(set(r['mse'] for r in result.records)) == 3


def test_failed_cells_are_recorded_not_raised(lorenz):
    result = tradeoff_grid(lorenz, [5], [1, 500], tau=5, washout=100, reservoir_fields=FIELDS)
    frame = result.to_frame()
    assert len(frame) == 2
    assert frame['status'].iloc[0] == 'ok'
    assert frame['status'].iloc[1].startswith('failed')
    assert result.n_failed == 1
    assert np.isnan(result.medians()[0, 1])


def test_empty_grid_is_rejected(lorenz):
    with pytest.raises(ValueError):
        tradeoff_grid(lorenz, [], [1])
