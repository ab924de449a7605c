""" Ridge-regression readout on delayed reservoir vectors, with open-loop
(teacher-forced) and closed-loop (autonomous) prediction.

The readout lives in normalized space: inputs are mapped to zero mean and unit
variance with the statistics of the training slice, the reservoir is driven by
the normalized signal and outputs are mapped back only when they are emitted.
"""

import logging
import numpy as np
import scipy.linalg

from delayRC.exceptions import DimensionMismatchError, SolverError, WarmupTooShortError
from delayRC.models.delayrc.delays import DelaySpec, assemble_delayed_features
from delayRC.models.delayrc.reservoir import drive
from delayRC.timeseries import TimeSeries

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e12
LSTSQ_CUTOFF = 1e-12


class Normalizer(object):
	def __init__(self, mean, scale):
		self.mean = np.asarray(mean, dtype=float)
		self.scale = np.asarray(scale, dtype=float)

	@classmethod
	def fit(cls, values):
		mean = np.mean(values, axis=1)
		scale = np.std(values, axis=1)
		scale[scale == 0.] = 1.
		return cls(mean, scale)

	@classmethod
	def identity(cls, n_vars):
		return cls(np.zeros(n_vars), np.ones(n_vars))

	def transform(self, values):
		return (values - self.mean[:, np.newaxis]) / self.scale[:, np.newaxis]

	def inverse(self, values):
		return values * self.scale[:, np.newaxis] + self.mean[:, np.newaxis]

	def to_record(self):
		return {'mean': self.mean.tolist(), 'scale': self.scale.tolist()}

	@classmethod
	def from_record(cls, record):
		return cls(record['mean'], record['scale'])


def train_ridge(features, targets, beta):
	""" W = Y R^T (R R^T + beta I)^-1 by Cholesky, or by an SVD least-squares
	solve of the augmented system when R R^T + beta I is ill-conditioned.
	"""
	R = np.asarray(features, dtype=float)
	Y = np.atleast_2d(np.asarray(targets, dtype=float))
	if R.ndim != 2 or R.shape[1] == 0:
		raise SolverError("train_ridge needs at least one training column")
	if Y.shape[1] != R.shape[1]:
		raise DimensionMismatchError("features have {} columns, targets {}".format(R.shape[1], Y.shape[1]))
	if not (np.all(np.isfinite(R)) and np.all(np.isfinite(Y))):
		raise SolverError("features or targets contain non-finite values")
	if beta < 0:
		raise ValueError("beta must be non-negative")

	d = R.shape[0]
	A = R.dot(R.T) + beta * np.eye(d)
	B = R.dot(Y.T)
	# A is symmetric PSD: its 2-norm condition is the eigenvalue ratio
	eig = scipy.linalg.eigvalsh(A, check_finite=False)
	cond = eig[-1] / eig[0] if eig[0] > 0 else np.inf
	if cond <= MAX_CONDITION:
		try:
			return scipy.linalg.cho_solve(scipy.linalg.cho_factor(A, lower=True, check_finite=False), B, check_finite=False).T
		except np.linalg.LinAlgError:
			logger.debug("Cholesky factorization failed")
	else:
		logger.debug("Condition number %.3g above %.0g", cond, MAX_CONDITION)

	logger.warning("Ill-conditioned normal equations (d=%d, beta=%g): using the SVD solve", d, beta)
	if beta > 0:
		lhs = np.vstack([R.T, np.sqrt(beta) * np.eye(d)])
		rhs = np.vstack([Y.T, np.zeros((d, Y.shape[0]))])
	else:
		lhs, rhs = R.T, Y.T
	W, _, _, _ = scipy.linalg.lstsq(lhs, rhs, cond=LSTSQ_CUTOFF)
	if not np.all(np.isfinite(W)):
		raise SolverError("ridge solve produced non-finite weights")
	return W.T


def ridge_loss(w_out, features, targets, beta):
	residual = targets - w_out.dot(features)
	return float(np.sum(residual**2) + beta * np.sum(w_out**2))


class ReadoutModel(object):
	def __init__(self, w_out, delay_spec, beta, normalization, washout=0, bias=False, dt=1., var_names=None):
		w_out = np.atleast_2d(np.asarray(w_out, dtype=float))
		if not np.all(np.isfinite(w_out)):
			raise SolverError("w_out has non-finite entries")
		if w_out.shape[1] != delay_spec.effective_dimension + int(bias):
			raise DimensionMismatchError("w_out has {} columns, the delay spec gives d={}{}".format(
				w_out.shape[1], delay_spec.effective_dimension, " plus a bias" if bias else ""))
		self.w_out = w_out
		self.delay_spec = delay_spec
		self.beta = float(beta)
		self.normalization = normalization
		self.washout = int(washout)
		self.bias = bool(bias)
		self.dt = float(dt)
		self.var_names = var_names

	@property
	def n_out(self):
		return self.w_out.shape[0]

	@property
	def min_warmup(self):
		return self.washout + self.delay_spec.max_history + 1

	def with_bias(self, features):
		if not self.bias:
			return features
		return np.vstack([features, np.ones((1, features.shape[1]))])

	def apply(self, features):
		""" Normalized-space outputs y_k = W_out r~_k.
		"""
		features = self.with_bias(np.asarray(features, dtype=float))
		if features.shape[0] != self.w_out.shape[1]:
			raise DimensionMismatchError("feature width {} does not match w_out width {}".format(features.shape[0], self.w_out.shape[1]))
		return self.w_out.dot(features)

	def to_record(self):
		return {
			'w_out': self.w_out.tolist(),
			'delay_spec': self.delay_spec.model_dump(mode='json'),
			'beta': self.beta,
			'normalization': self.normalization.to_record(),
			'washout': self.washout,
			'bias': self.bias,
			'dt': self.dt,
			'var_names': self.var_names,
		}

	@classmethod
	def from_record(cls, record):
		return cls(record['w_out'], DelaySpec(**record['delay_spec']), record['beta'],
			Normalizer.from_record(record['normalization']), washout=record['washout'], bias=record['bias'],
			dt=record['dt'], var_names=record.get('var_names'))


def teacher_forced_features(res, normalized, spec, washout):
	""" Drives the reservoir with the (normalized) series and pairs feature column
	k with the target x_{k+1}. Returns features, targets and the series index of
	the first feature column.
	"""
	states = drive(res, normalized, washout=washout)
	F, start = assemble_delayed_features(states, spec)
	return F[:, :-1], normalized[:, start + 1:], start


def predict_open_loop(model, features):
	y = model.apply(features)
	return TimeSeries(model.normalization.inverse(y), model.dt, model.var_names)


def predict_closed_loop(res, model, warmup, n_steps, r0=None):
	""" Teacher-forces the reservoir with warmup, then feeds every output back as
	the next input. The first emitted value predicts the step after the warmup.
	"""
	if n_steps < 1:
		raise ValueError("n_steps must be at least 1")
	if warmup.n_steps < model.min_warmup:
		raise WarmupTooShortError(warmup.n_steps, model.min_warmup)
	if warmup.n_vars != model.n_out:
		raise DimensionMismatchError("Warmup has {} variables, the model predicts {}".format(warmup.n_vars, model.n_out))

	spec = model.delay_spec
	states = drive(res, model.normalization.transform(warmup.values), r0=r0)

	H = spec.max_history + 1
	buf = np.array(states.states[:, -H:])
	pos = H - 1
	neurons, offsets = spec.feature_index()

	out = np.empty((model.n_out, n_steps))
	r = buf[:, pos]
	for s in range(n_steps):
		feat = buf[neurons, (pos - offsets) % H]
		y = model.apply(feat[:, np.newaxis])[:, 0]
		out[:, s] = y
		if s == n_steps - 1:
			break
		r = res.step(r, y)
		pos = (pos + 1) % H
		buf[:, pos] = r
	return TimeSeries(model.normalization.inverse(out), model.dt, model.var_names)
