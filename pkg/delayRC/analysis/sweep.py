""" Training error over a grid of (neuron count, lag count) pairs.

Every cell repeat builds its own reservoir from a seed derived from the base
seed and the cell's position, so serial and parallel runs give the same records.
"""

import time
import logging
import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from pydantic import BaseModel
from typing import Dict, List

from delayRC.exceptions import DelayRCError
from delayRC.misc.utils import derive_seed, elapsed_hms
from delayRC.models.delayrc.delayrc import DelayRC
from delayRC.models.delayrc.delays import DelaySpec

logger = logging.getLogger(__name__)


class SweepResult(BaseModel):
	neuron_list: List[int]
	lag_list: List[int]
	tau: int
	beta: float
	seed: int
	repeats: int
	records: List[Dict]

	def to_frame(self):
		return pd.DataFrame(self.records, columns=['n_neuron', 'n_lag', 'repeat', 'seed', 'mse', 'status'])

	def cell(self, n_neuron, n_lag):
		return [r['mse'] for r in self.records if r['n_neuron'] == n_neuron and r['n_lag'] == n_lag and r['status'] == 'ok']

	def medians(self):
		""" (len(neuron_list) x len(lag_list)) array of median MSE over the successful repeats.
		"""
		out = np.full((len(self.neuron_list), len(self.lag_list)), np.nan)
		for i, m in enumerate(self.neuron_list):
			for j, n_lag in enumerate(self.lag_list):
				values = self.cell(m, n_lag)
				if values:
					out[i, j] = np.median(values)
		return out

	@property
	def n_failed(self):
		return sum(r['status'] != 'ok' for r in self.records)


def train_cell(series, n_neuron, spec, beta, seed, train_length, washout, reservoir_fields):
	""" Training MSE of one reservoir, or a failure status instead of an exception.
	"""
	try:
		model = DelayRC(series, delay_spec=spec, beta=beta, train_length=train_length, washout=washout,
			m=n_neuron, seed=seed, **reservoir_fields)
		model.run()
		return model.train_mse, 'ok'
	except (DelayRCError, np.linalg.LinAlgError, ValueError) as e:
		logger.warning("Cell m=%d lags=%s seed=%d failed: %s", n_neuron, spec.label(), seed, e)
		return float('nan'), 'failed: {}'.format(e)


def tradeoff_grid(series, neuron_list, lag_list, tau=1, beta=1e-6, repeats=1, seed=0, train_length=None, washout=500,
		reservoir_fields=None, n_jobs=1, verbose=False):
	if not neuron_list or not lag_list:
		raise ValueError("neuron_list and lag_list must be non-empty")
	if repeats < 1:
		raise ValueError("repeats must be at least 1")
	reservoir_fields = dict(reservoir_fields or {})

	cells = []
	for i, m in enumerate(neuron_list):
		for j, n_lag in enumerate(lag_list):
			for r in range(repeats):
				cells.append((m, n_lag, r, derive_seed(seed, 'reservoir', i, j, r)))

	if verbose:
		print('Running {}x{} grid, {} repeats ({} fits)...'.format(len(neuron_list), len(lag_list), repeats, len(cells)))
	init = time.time()
	results = Parallel(n_jobs=n_jobs)(
		delayed(train_cell)(series, m, DelaySpec.uniform(m, n_lag, tau), beta, s, train_length, washout, reservoir_fields)
		for (m, n_lag, r, s) in cells)
	elapsed = time.time() - init
	h, m_, s_ = elapsed_hms(elapsed)
	if verbose:
		print('Elapsed: {0:.0f}h{1:.0f}m{2:.0f}s'.format(h, m_, s_))

	records = [{'n_neuron': m, 'n_lag': n_lag, 'repeat': r, 'seed': s, 'mse': mse, 'status': status}
		for (m, n_lag, r, s), (mse, status) in zip(cells, results)]
	return SweepResult(neuron_list=list(neuron_list), lag_list=list(lag_list), tau=tau, beta=beta, seed=seed,
		repeats=repeats, records=records)
