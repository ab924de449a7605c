""" Memory capacity: how well linear readouts on the (delayed) reservoir vector
recall past values of an i.i.d. drive,

	MC_k = cov(u(t-k), y_k(t))^2 / (var(u(t-k)) var(y_k(t))).

Readouts for every k are trained by one multi-output ridge solve (the rows of
W_out decouple) with a constant feature, and scored on a held-out continuation
of the same drive.
"""

import logging
import numpy as np
import pandas as pd
from pydantic import BaseModel
from typing import List

from delayRC.dynamics.generators import random_input_sequence
from delayRC.exceptions import InsufficientDataError
from delayRC.models.delayrc.delays import assemble_delayed_features
from delayRC.models.delayrc.readout import train_ridge
from delayRC.models.delayrc.reservoir import drive

logger = logging.getLogger(__name__)


class MCResult(BaseModel):
	ks: List[int]
	mc_k: List[float]
	total: float
	n_neuron: int
	lags: List[int]
	stride: int
	beta: float
	seed: int
	label: str = ''

	def to_frame(self):
		return pd.DataFrame({'config': self.label, 'k': self.ks, 'mc_k': self.mc_k,
			'n_neuron': self.n_neuron, 'effective_dimension': sum(self.lags), 'stride': self.stride,
			'beta': self.beta, 'seed': self.seed})

	def is_fading(self):
		""" Tail average (last quartile of k) below the head average (first quartile).
		"""
		n = max(1, len(self.mc_k) // 4)
		return bool(np.mean(self.mc_k[-n:]) < np.mean(self.mc_k[:n]))


def squared_correlation(target, estimate):
	if np.ptp(estimate) == 0. or np.ptp(target) == 0.:
		return 0.
	t = target - np.mean(target)
	e = estimate - np.mean(estimate)
	var_t, var_e = np.mean(t**2), np.mean(e**2)
	if var_t == 0. or var_e == 0.:
		return 0.
	return float(np.mean(t * e)**2 / (var_t * var_e))


def memory_capacity(res, spec, k_max, beta=1e-6, seed=0, n_train=4000, n_test=1000, amplitude=0.5, washout=500,
		include_input=False, k_start=1, label=''):
	""" MC_k for k = k_start..k_max. include_input adds the current drive value to
	the features; with k_start=0 this gives the perfect-recall check MC_0 = 1.
	"""
	if k_max < max(1, k_start):
		raise ValueError("k_max must be at least max(1, k_start)")
	start = max(washout, spec.max_history, k_max)
	if n_train <= washout + spec.max_history + k_max:
		raise InsufficientDataError("n_train={} does not exceed washout {} + lag history {} + k_max {}".format(
			n_train, washout, spec.max_history, k_max))
	if n_test < 2:
		raise InsufficientDataError("n_test must be at least 2")

	u = random_input_sequence(seed, n_train + n_test, amplitude).values
	states = drive(res, u)
	F, first = assemble_delayed_features(states, spec, washout=start)
	rows = [F, np.ones((1, F.shape[1]))]
	if include_input:
		rows.append(u[:, first:])
	F = np.vstack(rows)

	ks = np.arange(k_start, k_max + 1)
	t = np.arange(first, u.shape[1])
	Y = u[0, t[np.newaxis, :] - ks[:, np.newaxis]]

	n_fit = n_train - first
	W = train_ridge(F[:, :n_fit], Y[:, :n_fit], beta)
	Y_hat = W.dot(F[:, n_fit:])
	mc = [squared_correlation(Y[i, n_fit:], Y_hat[i]) for i in range(ks.size)]

	total = float(np.sum(mc))
	logger.debug("MC %s: total %.4g over k=%d..%d", label or spec.label(), total, k_start, k_max)
	return MCResult(ks=ks.tolist(), mc_k=mc, total=total, n_neuron=spec.q, lags=list(spec.lags), stride=spec.stride,
		beta=beta, seed=seed, label=label or spec.label())
