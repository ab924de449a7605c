""" Choosing the effective dimension d and the delay stride tau.

dimension_test scores one-step validation error against d under a builder
policy and picks the elbow. delayed_mutual_information is the histogram
estimate of I(x_t; x_{t-tau}), averaged over traces; applied to reservoir
neuron traces (reservoir_dmi) it ties tau to the neurons' own time scales.
"""

import logging
import numpy as np
import pandas as pd
from pydantic import BaseModel
from sklearn.metrics import mutual_info_score
from typing import Dict, List, Literal, Optional

from delayRC.analysis.metrics import mse
from delayRC.exceptions import DelayRCError, InsufficientDataError
from delayRC.misc.utils import derive_seed
from delayRC.models.delayrc.delayrc import DelayRC
from delayRC.models.delayrc.delays import DelaySpec, assemble_delayed_features
from delayRC.models.delayrc.readout import Normalizer, train_ridge
from delayRC.models.delayrc.reservoir import drive
from delayRC.timeseries import TimeSeries

logger = logging.getLogger(__name__)

POLICIES = ('neurons', 'single', 'split', 'embedding')

ELBOW_TOLERANCE = 0.05


class DimensionTestResult(BaseModel):
	policy: str
	d_list: List[int]
	records: List[Dict]
	recommended_d: int

	def to_frame(self):
		return pd.DataFrame(self.records, columns=['d', 'repeat', 'seed', 'train_mse', 'validation_mse', 'status'])

	def median_validation(self):
		out = []
		for d in self.d_list:
			values = [r['validation_mse'] for r in self.records if r['d'] == d and r['status'] == 'ok']
			out.append(float(np.median(values)) if values else float('nan'))
		return out


def elbow(d_list, scores, tolerance=ELBOW_TOLERANCE):
	""" Smallest d whose relative improvement over the previous d is below tolerance;
	the last d when every step still improves.
	"""
	for i in range(1, len(d_list)):
		prev, cur = scores[i - 1], scores[i]
		if not np.isfinite(prev) or not np.isfinite(cur):
			continue
		improvement = (prev - cur) / prev if prev > 0 else 0.
		if improvement < tolerance:
			return d_list[i]
	return d_list[-1]


def delay_coordinates(values, d, tau=1):
	""" Plain delay embedding of the input itself: d coordinates spread over the
	variables, each variable contributing its current and tau-strided past values.
	"""
	spec = DelaySpec.split(d, values.shape[0], tau)
	return assemble_delayed_features(values, spec)


def _embedding_scores(series, d, tau, beta, train_length):
	norm = Normalizer.fit(series.values[:, :train_length])
	x = norm.transform(series.values)
	F, start = delay_coordinates(x, d, tau)
	F, Y = F[:, :-1], x[:, start + 1:]
	n_train = train_length - start - 1
	if n_train < 1:
		raise InsufficientDataError("train_length {} is too short for {} delay coordinates".format(train_length, d))
	W = train_ridge(F[:, :n_train], Y[:, :n_train], beta)
	return mse(W.dot(F[:, :n_train]), Y[:, :n_train]), mse(W.dot(F[:, n_train:]), Y[:, n_train:])


def _score(series, d, policy, tau, beta, seed, train_length, washout, n_neuron, reservoir_fields):
	try:
		if policy == 'embedding':
			train, valid = _embedding_scores(series, d, tau, beta, train_length)
			return train, valid, 'ok'
		if policy == 'neurons':
			m, spec = d, DelaySpec.uniform(d, 1, tau)
		elif policy == 'single':
			m, spec = 1, DelaySpec.uniform(1, d, tau)
		else:
			m, spec = n_neuron, DelaySpec.split(d, n_neuron, tau)
		model = DelayRC(series, delay_spec=spec, beta=beta, train_length=train_length, washout=washout, m=m, seed=seed,
			**reservoir_fields)
		model.run()
		return model.train_mse, model.test_mse, 'ok'
	except (DelayRCError, np.linalg.LinAlgError, ValueError) as e:
		logger.warning("Dimension test d=%d (%s) failed: %s", d, policy, e)
		return float('nan'), float('nan'), 'failed: {}'.format(e)


def dimension_test(series, d_list, policy='neurons', beta=1e-6, repeats=1, seed=0, tau=1, washout=500, n_neuron=1,
		train_fraction=0.8, reservoir_fields=None):
	""" Train/validation MSE against effective dimension d on an 80/20 split of the
	series, with the elbow of the median validation curve as the recommendation.
	"""
	if policy not in POLICIES:
		raise ValueError("Unknown builder policy '{}'; choose from {}".format(policy, ", ".join(POLICIES)))
	d_list = [int(d) for d in d_list]
	if not d_list:
		raise ValueError("d_list must be non-empty")
	if d_list != sorted(d_list):
		raise ValueError("d_list must be sorted ascending")
	reservoir_fields = dict(reservoir_fields or {})
	train_length = int(train_fraction * series.n_steps)
	n_rep = 1 if policy == 'embedding' else repeats

	records = []
	for i, d in enumerate(d_list):
		for r in range(n_rep):
			s = derive_seed(seed, 'dimtest', i, r)
			train, valid, status = _score(series, d, policy, tau, beta, s, train_length, washout, n_neuron, reservoir_fields)
			records.append({'d': d, 'repeat': r, 'seed': s, 'train_mse': train, 'validation_mse': valid, 'status': status})

	result = DimensionTestResult(policy=policy, d_list=d_list, records=records, recommended_d=d_list[0])
	result.recommended_d = elbow(d_list, result.median_validation())
	logger.info("Dimension test (%s): recommended d=%d", policy, result.recommended_d)
	return result


class DMIResult(BaseModel):
	taus: List[int]
	mi: List[float]
	bias: List[float]
	corrected: List[float]
	recommended_tau: int
	first_minimum: bool
	bins: int
	n_traces: int

	def to_frame(self):
		return pd.DataFrame({'tau': self.taus, 'mi': self.mi, 'bias': self.bias, 'corrected': self.corrected})


def histogram_labels(x, bins):
	""" Equal-width bin index of every sample over the range of x.
	"""
	lo, hi = np.min(x), np.max(x)
	if hi == lo:
		return np.zeros(x.size, dtype=int)
	edges = np.linspace(lo, hi, bins + 1)
	return np.clip(np.digitize(x, edges[1:-1]), 0, bins - 1)


def delayed_mutual_information(series, tau_max, bins=16):
	""" I(x_t; x_{t-tau}) in bits for tau = 1..tau_max, averaged over the rows of
	series. The recommended tau is the first strict local minimum of the averaged
	curve, or where it first drops below 1/e of its tau=1 value.
	"""
	values = series.values if isinstance(series, TimeSeries) else np.atleast_2d(np.asarray(series, dtype=float))
	if tau_max < 1:
		raise ValueError("tau_max must be at least 1")
	T = values.shape[1]
	if T - tau_max < 50 * bins:
		raise InsufficientDataError("{} samples leave {} pairs at tau={}, fewer than 50 x {} bins".format(T, T - tau_max, tau_max, bins))

	taus = np.arange(1, tau_max + 1)
	mi = np.zeros(tau_max)
	for row in values:
		labels = histogram_labels(row, bins)
		for i, tau in enumerate(taus):
			mi[i] += mutual_info_score(labels[tau:], labels[:-tau])
	mi = mi / (values.shape[0] * np.log(2.))
	bias = (bins - 1)**2 / (2. * (T - taus) * np.log(2.))

	recommended, first_minimum = None, False
	for i in range(1, tau_max - 1):
		if mi[i] < mi[i - 1] and mi[i] < mi[i + 1]:
			recommended, first_minimum = int(taus[i]), True
			break
	if recommended is None:
		below = np.nonzero(mi < mi[0] / np.e)[0]
		recommended = int(taus[below[0]]) if below.size else int(tau_max)
		logger.debug("No local minimum of the DMI curve up to tau=%d; using the 1/e rule", tau_max)

	return DMIResult(taus=taus.tolist(), mi=mi.tolist(), bias=bias.tolist(), corrected=(mi - bias).tolist(),
		recommended_tau=recommended, first_minimum=first_minimum, bins=bins, n_traces=values.shape[0])


def reservoir_dmi(res, inputs, tau_max, bins=16, washout=500, neurons=None):
	""" DMI of the reservoir's neuron traces under the given drive.
	"""
	states = drive(res, inputs).states[:, washout:]
	if neurons is not None:
		states = states[list(neurons)]
	return delayed_mutual_information(states, tau_max, bins)
