""" Parameter records for the benchmark systems and the named system presets.
"""

from typing import Any, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from delayRC.exceptions import HistoryError, PresetNotFoundError


class LorenzParams(BaseModel):
	model_config = ConfigDict(extra='forbid')

	sigma: float = 10.
	rho: float = 28.
	beta: float = 8. / 3.
	x0: Tuple[float, float, float] = (1., 1., 1.)
	dt: float = Field(0.01, gt=0)
	n_steps: int = Field(6000, ge=1)
	n_discard: int = Field(5000, ge=0)


class GeneModelParams(BaseModel):
	""" x'(t) = -k x(t) + g f1(x(t - tau1)) f2(x(t - tau2)), with the Hill forms
	f1(x) = 1 / (1 + (x/theta1)^h1) (self-inhibition) and
	f2(x) = (x/theta2)^h2 / (1 + (x/theta2)^h2) (self-activation).

	history is a constant, a callable h(t) on [-max(tau1, tau2), 0], or an array of
	values on the integration grid over that interval (oldest first).
	"""
	model_config = ConfigDict(extra='forbid', arbitrary_types_allowed=True)

	k_decay: float = Field(0.1, gt=0)
	g_gain: float = Field(200., ge=0)
	theta1: float = Field(1., gt=0)
	h1: float = Field(10., gt=0)
	theta2: float = Field(1000., gt=0)
	h2: float = Field(1., gt=0)
	tau1: float = Field(17., gt=0)
	tau2: float = Field(17., gt=0)
	history: Any = 1.2
	dt: float = Field(0.1, gt=0)
	n_steps: int = Field(10000, ge=1)
	n_discard: int = Field(5000, ge=0)

	@field_validator('history')
	@classmethod
	def check_history(cls, v):
		if callable(v):
			return v
		if np.isscalar(v):
			return float(v)
		arr = np.asarray(v, dtype=float)
		if arr.ndim != 1:
			raise ValueError("history array must be 1-D")
		return arr

	@model_validator(mode='after')
	def check_delays(self):
		for name in ['tau1', 'tau2']:
			tau = getattr(self, name)
			ratio = tau / self.dt
			if abs(ratio - round(ratio)) * self.dt > 1e-12 * max(1., tau):
				raise HistoryError("{}={} is not a multiple of dt={}".format(name, tau, self.dt))
			if round(ratio) < 1:
				raise HistoryError("{}={} is shorter than dt={}".format(name, tau, self.dt))
		if isinstance(self.history, np.ndarray) and self.history.size < self.history_nodes:
			raise HistoryError("history has {} samples, the delays need {}".format(self.history.size, self.history_nodes))
		return self

	@property
	def lags(self):
		return int(round(self.tau1 / self.dt)), int(round(self.tau2 / self.dt))

	@property
	def history_nodes(self):
		return max(self.lags) + 1

	@field_serializer('history')
	def dump_history(self, v):
		if callable(v):
			return repr(v)
		if isinstance(v, np.ndarray):
			return v.tolist()
		return v


class LatticeParams(BaseModel):
	""" Diffusively coupled map lattice on a periodic height x width grid:
	x' = (1 - eps) f(x) + eps/4 * (sum of the four neighbours' f).
	"""
	model_config = ConfigDict(extra='forbid')

	height: int = Field(20, ge=2)
	width: int = Field(20, ge=2)
	coupling: float = Field(0.3, ge=0, le=1)
	local_map: Literal['logistic', 'identity'] = 'logistic'
	map_parameter: float = 3.9
	dt: float = Field(1., gt=0)
	n_steps: int = Field(6000, ge=1)
	n_discard: int = Field(1000, ge=0)
	seed: int = 0


PARAMS_BY_KIND = {'lorenz': LorenzParams, 'gene': GeneModelParams, 'lattice': LatticeParams}

# lyapunov_time is the inverse of the largest Lyapunov exponent, in time units;
# None means it is estimated at run time
SYSTEM_PRESETS = {
	'lorenz': {'kind': 'lorenz', 'params': {}, 'lyapunov_time': 1. / 0.9056, 'attractor_dim': 2.06},
	# tau1 = tau2 and theta2 >> x: the single-delay Mackey-Glass regime
	'gene': {'kind': 'gene', 'params': {}, 'lyapunov_time': 1. / 0.0086, 'attractor_dim': 2.1},
	# distinct delays with an active self-activation term
	'gene_hill': {'kind': 'gene', 'params': {'g_gain': 0.4, 'theta2': 1., 'h2': 1., 'tau1': 17., 'tau2': 12.},
		'lyapunov_time': None, 'attractor_dim': None},
	'lattice': {'kind': 'lattice', 'params': {}, 'lyapunov_time': 2.5, 'attractor_dim': None},
}


def get_system_preset(name):
	if name not in SYSTEM_PRESETS:
		raise PresetNotFoundError(name, SYSTEM_PRESETS.keys(), kind="system preset")
	return SYSTEM_PRESETS[name]

def make_params(preset, overrides=None):
	""" Resolves a system preset name plus overrides into a validated parameter record.
	"""
	entry = get_system_preset(preset)
	fields = dict(entry['params'])
	if overrides:
		fields.update(overrides)
	return PARAMS_BY_KIND[entry['kind']](**fields)
