""" Scalar and per-step scores comparing a predicted trajectory with the truth.
"""

import logging
import numpy as np
from pydantic import BaseModel
from typing import List

from delayRC.exceptions import DimensionMismatchError
from delayRC.timeseries import TimeSeries

logger = logging.getLogger(__name__)


def _values(series):
	if isinstance(series, TimeSeries):
		return series.values
	return np.atleast_2d(np.asarray(series, dtype=float))

def _pair(pred, truth):
	p, t = _values(pred), _values(truth)
	if p.shape != t.shape:
		raise DimensionMismatchError("pred has shape {}, truth has shape {}".format(p.shape, t.shape))
	return p, t


def mse(pred, truth):
	""" Mean squared error after scaling both series by the truth's per-variable
	standard deviation (1 for constant variables).
	"""
	p, t = _pair(pred, truth)
	scale = np.std(t, axis=1)
	scale[scale == 0.] = 1.
	return float(np.mean(((p - t) / scale[:, np.newaxis])**2))

def prediction_error_curve(pred, truth):
	""" ||pred_k - truth_k|| / ||truth||_rms for every step k.
	"""
	p, t = _pair(pred, truth)
	rms = np.sqrt(np.mean(np.sum(t**2, axis=0)))
	if rms == 0.:
		rms = 1.
	return np.linalg.norm(p - t, axis=0) / rms

def valid_prediction_time(pred, truth, lyapunov_time, threshold=0.4, dt=None):
	""" First step whose normalized error exceeds threshold, in Lyapunov times.
	Returns the full horizon when the error never crosses.
	"""
	if not lyapunov_time > 0:
		raise ValueError("lyapunov_time must be positive")
	if dt is None:
		dt = truth.dt if isinstance(truth, TimeSeries) else 1.
	err = prediction_error_curve(pred, truth)
	crossed = np.nonzero(err > threshold)[0]
	step = crossed[0] if crossed.size else err.size
	return float(step * dt / lyapunov_time)


class ClimateResult(BaseModel):
	passed: bool
	bounded: bool
	tv: List[float]


def climate_test(pred, truth, bins=30, bound_factor=1.5, tv_max=0.2):
	""" Boundedness by bound_factor times the truth's range, plus a per-variable
	histogram total-variation distance below tv_max. Predicted mass falling
	outside the truth's range counts as mismatch.
	"""
	p, t = _values(pred), _values(truth)
	if p.shape[0] != t.shape[0]:
		raise DimensionMismatchError("pred has {} variables, truth has {}".format(p.shape[0], t.shape[0]))

	lo, hi = np.min(t, axis=1), np.max(t, axis=1)
	span = hi - lo
	margin = 0.5 * (bound_factor - 1.) * span
	bounded = bool(np.all(np.isfinite(p)) and np.all(p >= (lo - margin)[:, np.newaxis]) and np.all(p <= (hi + margin)[:, np.newaxis]))

	tv = []
	for i in range(t.shape[0]):
		a, b = (lo[i], hi[i]) if span[i] > 0 else (lo[i] - 0.5, hi[i] + 0.5)
		edges = np.linspace(a, b, bins + 1)
		h_true = np.histogram(t[i], edges)[0] / t.shape[1]
		finite = p[i][np.isfinite(p[i])]
		h_pred = np.histogram(finite, edges)[0] / p.shape[1]
		outside = 1. - np.sum(h_pred)
		tv.append(float(0.5 * (np.sum(np.abs(h_pred - h_true)) + outside)))

	passed = bounded and all(v < tv_max for v in tv)
	logger.debug("Climate test: bounded=%s, max TV=%.3g", bounded, max(tv))
	return ClimateResult(passed=passed, bounded=bounded, tv=tv)


class BudgetCheck(BaseModel):
	passed: bool
	margin: float
	budget: float
	lyapunov_time: float


def lag_budget_check(tau, dt, n_lag, lyapunov_time):
	""" tau * dt * n_lag against the Lyapunov time; margin is their ratio.
	"""
	for name, v in [('tau', tau), ('dt', dt), ('n_lag', n_lag), ('lyapunov_time', lyapunov_time)]:
		if not v > 0:
			raise ValueError("{} must be positive, got {}".format(name, v))
	budget = tau * dt * n_lag
	margin = budget / lyapunov_time
	passed = margin < 1.
	if not passed:
		logger.warning("Lag window %.4g exceeds the Lyapunov time %.4g (ratio %.3g)", budget, lyapunov_time, margin)
	return BudgetCheck(passed=passed, margin=float(margin), budget=float(budget), lyapunov_time=float(lyapunov_time))


def embedding_check(d, attractor_dim):
	""" Whether d features can embed an attractor of the given dimension (d > 2 dim).
	"""
	return bool(d > 2. * attractor_dim)
