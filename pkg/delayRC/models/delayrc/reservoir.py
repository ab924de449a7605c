""" The fixed random layers of the reservoir and the state recursion

	r_k = (1 - alpha) r_{k-1} + alpha phi(W_res r_{k-1} + W_in x_k).

W_in is dense with entries uniform on [-input_scale, input_scale]. W_res is an
Erdos-Renyi sparse matrix with entries uniform on [-1, 1], rescaled to the
requested spectral radius. Both are frozen after construction.
"""

import logging
import numpy as np
import scipy.sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigs
from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing import Literal

from delayRC.exceptions import DimensionMismatchError, ReservoirConstructionError
from delayRC.misc.utils import make_rng, pairwise_max_distance, sample_uniform
from delayRC.timeseries import TimeSeries

logger = logging.getLogger(__name__)

ACTIVATIONS = {'tanh': np.tanh}

DENSE_EIG_MAX = 512


class ReservoirConfig(BaseModel):
	model_config = ConfigDict(extra='forbid')

	m: int = Field(200, ge=1)
	n_in: int = Field(1, ge=1)
	spectral_radius: float = Field(0.9, ge=0)
	input_scale: float = Field(0.1, ge=0)
	density: float = Field(0.05, gt=0, le=1)
	leak: float = Field(1., ge=0, le=1)
	activation: Literal['tanh'] = 'tanh'
	seed: int = 0

	@field_validator('leak')
	@classmethod
	def warn_frozen(cls, v):
		if v == 0:
			logger.warning("leak=0 freezes the reservoir at its initial state")
		return v


def power_iteration_radius(w, max_iter=10000, tol=1e-10, seed=0):
	""" Dominant eigenvalue modulus by power iteration on a two-vector basis.

	Each step takes the Ritz values of W on span{v, W v}, which holds a dominant
	complex pair lambda, conj(lambda) once the iterate rotates inside their
	invariant plane, and keeps the one with the smallest eigen-residual. A dense
	solve takes over when that residual has not settled after max_iter steps.
	"""
	m = w.shape[0]
	v = sample_uniform(make_rng(seed), -1., 1., size=m)
	v /= np.linalg.norm(v)
	est = 0.
	for _ in range(max_iter):
		a = w.dot(v)
		norm = np.linalg.norm(a)
		if norm == 0.:
			break
		q, _ = np.linalg.qr(np.column_stack([v, a]))
		wq = np.column_stack([w.dot(q[:, 0]), w.dot(q[:, 1])])
		theta, s = np.linalg.eig(q.T.dot(wq))
		residuals = np.linalg.norm(wq.dot(s) - q.dot(s) * theta, axis=0)
		i = np.argmin(residuals)
		new_est = float(np.abs(theta[i]))
		if residuals[i] <= tol * new_est and abs(new_est - est) <= tol * new_est:
			return new_est
		est = new_est
		v = a / norm
	logger.warning("Power iteration did not settle; using a dense eigenvalue solve")
	dense = w.toarray() if scipy.sparse.issparse(w) else np.asarray(w)
	return float(np.max(np.abs(np.linalg.eigvals(dense))))

def spectral_radius(w):
	m = w.shape[0]
	if scipy.sparse.issparse(w) and w.count_nonzero() == 0:
		return 0.
	if m <= DENSE_EIG_MAX:
		dense = w.toarray() if scipy.sparse.issparse(w) else np.asarray(w)
		return float(np.max(np.abs(np.linalg.eigvals(dense))))
	try:
		vals = eigs(w, k=1, which='LM', return_eigenvectors=False, tol=1e-12, v0=np.ones(m) / np.sqrt(m))
		return float(np.abs(vals[0]))
	except ArpackNoConvergence:
		logger.warning("ARPACK did not converge; falling back to power iteration")
		return float(power_iteration_radius(w))


class StateSequence(object):
	def __init__(self, states, washout=0):
		self.states = states
		self.washout = int(washout)

	@property
	def m(self):
		return self.states.shape[0]

	@property
	def n_steps(self):
		return self.states.shape[1]

	@property
	def last(self):
		return self.states[:, -1]

	def shift(self, s):
		return StateSequence(self.states[:, s:], max(self.washout - s, 0))


class Reservoir(object):
	def __init__(self, w_in, w_res, config, achieved_spectral_radius=None):
		w_in = np.array(w_in, dtype=float)
		w_res = scipy.sparse.csr_matrix(w_res, dtype=float)
		if w_in.shape != (config.m, config.n_in):
			raise DimensionMismatchError("W_in has shape {}, config expects {}".format(w_in.shape, (config.m, config.n_in)))
		if w_res.shape != (config.m, config.m):
			raise DimensionMismatchError("W_res has shape {}, config expects {}".format(w_res.shape, (config.m, config.m)))
		w_in.flags.writeable = False
		w_res.data.flags.writeable = False
		self.w_in = w_in
		self.w_res = w_res
		self.config = config
		self.activation = ACTIVATIONS[config.activation]
		if achieved_spectral_radius is None:
			achieved_spectral_radius = spectral_radius(w_res)
		self.achieved_spectral_radius = float(achieved_spectral_radius)

	@classmethod
	def from_matrices(cls, w_in, w_res, config=None, **config_fields):
		""" Wraps explicit matrices, e.g. to reuse a sampled W_in with another input scaling.
		"""
		w_in = np.atleast_2d(np.asarray(w_in, dtype=float))
		if config is None:
			config = ReservoirConfig(m=w_in.shape[0], n_in=w_in.shape[1], **config_fields)
		return cls(w_in, w_res, config)

	@property
	def m(self):
		return self.config.m

	@property
	def n_in(self):
		return self.config.n_in

	@property
	def leak(self):
		return self.config.leak

	def __repr__(self):
		return "<Reservoir m={} n_in={} rho={:.6g} leak={}>".format(self.m, self.n_in, self.achieved_spectral_radius, self.leak)

	def step(self, r, x):
		return (1. - self.leak) * r + self.leak * self.activation(self.w_res.dot(r) + self.w_in.dot(x))

	def to_record(self, include_matrices=False):
		record = {'config': self.config.model_dump(mode='json'), 'achieved_spectral_radius': self.achieved_spectral_radius}
		if include_matrices:
			coo = self.w_res.tocoo()
			record['w_in'] = self.w_in.tolist()
			record['w_res'] = {'row': coo.row.tolist(), 'col': coo.col.tolist(), 'data': coo.data.tolist()}
		return record

	@classmethod
	def from_record(cls, record):
		config = ReservoirConfig(**record['config'])
		if 'w_in' not in record:
			return build_reservoir(config)
		coo = record['w_res']
		w_res = scipy.sparse.coo_matrix((coo['data'], (coo['row'], coo['col'])), shape=(config.m, config.m))
		return cls(record['w_in'], w_res, config, record.get('achieved_spectral_radius'))


def build_reservoir(config):
	rng = make_rng(config.seed)
	m = config.m
	w_in = sample_uniform(rng, -config.input_scale, config.input_scale, size=(m, config.n_in))
	w_res = scipy.sparse.random(m, m, density=config.density, format='csr', random_state=rng,
		data_rvs=lambda n: sample_uniform(rng, -1., 1., size=n))

	if config.spectral_radius == 0.:
		return Reservoir(w_in, scipy.sparse.csr_matrix((m, m)), config, 0.)
	radius = spectral_radius(w_res)
	if radius == 0.:
		raise ReservoirConstructionError("Sampled W_res is identically zero (m={}, density={}, seed={}); "
			"increase the density or change the seed.".format(m, config.density, config.seed))
	w_res = w_res * (config.spectral_radius / radius)
	res = Reservoir(w_in, w_res, config)
	logger.debug("Built %r", res)
	return res


def _input_array(res, inputs):
	values = inputs.values if isinstance(inputs, TimeSeries) else np.atleast_2d(np.asarray(inputs, dtype=float))
	if values.shape[0] != res.n_in:
		raise DimensionMismatchError("Input has {} variables, the reservoir expects {}".format(values.shape[0], res.n_in))
	return values

def _initial_state(res, r0, width=None):
	if r0 is None:
		return np.zeros(res.m) if width is None else np.zeros((res.m, width))
	r0 = np.array(r0, dtype=float)
	if r0.shape[0] != res.m:
		raise DimensionMismatchError("r0 has {} entries, the reservoir has {} neurons".format(r0.shape[0], res.m))
	if np.any(np.abs(r0) >= 1.):
		raise ValueError("r0 entries must lie in (-1, 1)")
	return r0

def drive(res, inputs, r0=None, washout=0):
	""" Column k of the returned states is r_k, driven by input column k.
	"""
	X = _input_array(res, inputs)
	U = res.w_in.dot(X)
	r = _initial_state(res, r0)
	alpha = res.leak
	phi = res.activation
	states = np.empty((res.m, X.shape[1]))
	for k in range(X.shape[1]):
		r = (1. - alpha) * r + alpha * phi(res.w_res.dot(r) + U[:, k])
		states[:, k] = r
	return StateSequence(states, washout)


class EchoStateResult(BaseModel):
	model_config = ConfigDict(arbitrary_types_allowed=True)

	passed: bool
	distances: np.ndarray
	first_below: int


def echo_state_check(res, inputs, trials=2, tol=1e-10, seed=0, r0s=None):
	""" Drives the same input from several initial states and records the largest
	pairwise state distance after every step.
	"""
	if trials < 2:
		raise ValueError("echo_state_check needs at least two trials")
	X = _input_array(res, inputs)
	U = res.w_in.dot(X)
	if r0s is None:
		R = sample_uniform(make_rng(seed), -1., 1., size=(res.m, trials))
	else:
		R = np.array(r0s, dtype=float).T
	alpha = res.leak
	distances = np.empty(X.shape[1])
	for k in range(X.shape[1]):
		R = (1. - alpha) * R + alpha * res.activation(res.w_res.dot(R) + U[:, k][:, np.newaxis])
		distances[k] = pairwise_max_distance(R.T)

	below = np.nonzero(distances < tol)[0]
	first_below = int(below[0]) + 1 if below.size else -1
	return EchoStateResult(passed=bool(distances[-1] < tol), distances=distances, first_below=first_below)


def suggest_washout(res, inputs, minimum=500, tol=1e-8, trials=2, seed=0):
	""" max(minimum, first step at which the echo-state distance falls below tol).
	"""
	result = echo_state_check(res, inputs, trials=trials, tol=tol, seed=seed)
	if result.first_below < 0:
		logger.warning("Echo-state distance never fell below %g over %d steps", tol, result.distances.size)
		return max(minimum, result.distances.size)
	return max(minimum, result.first_below)
