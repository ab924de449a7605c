""" Delayed reservoir vectors. Neuron i contributes d_i copies of its own trace at
strides of tau steps, so the feature column at time k is

	[r_1(k), r_1(k - tau), ..., r_1(k - (d_1 - 1) tau), ..., r_q(k), ..., r_q(k - (d_q - 1) tau)].

All-ones lags give back the plain (non-delayed) reservoir.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing import List

from delayRC.exceptions import DimensionMismatchError, InsufficientDataError
from delayRC.misc.utils import make_rng, sample_discrete_gaussian


class DelaySpec(BaseModel):
	model_config = ConfigDict(extra='forbid')

	stride: int = Field(1, ge=1)
	lags: List[int] = Field(min_length=1)

	@field_validator('lags')
	@classmethod
	def positive_lags(cls, v):
		if any(d < 1 for d in v):
			raise ValueError("every lag count must be a positive integer")
		return v

	@classmethod
	def uniform(cls, n_neuron, n_lag, stride=1):
		return cls(stride=stride, lags=[n_lag] * n_neuron)

	@classmethod
	def random(cls, n_neuron, mean=5, stride=1, seed=0, sigma=2., low=1, high=9):
		""" Per-neuron lags from a discrete Gaussian truncated to [low, high].
		"""
		rng = make_rng(seed)
		lags = sample_discrete_gaussian(rng, mean, sigma, low, high, size=n_neuron)
		return cls(stride=stride, lags=[int(d) for d in lags])

	@classmethod
	def split(cls, d, n_neuron, stride=1):
		""" Spreads d features over n_neuron neurons as evenly as possible.
		"""
		if d < n_neuron:
			raise ValueError("Cannot split d={} features over {} neurons".format(d, n_neuron))
		base, extra = divmod(d, n_neuron)
		return cls(stride=stride, lags=[base + 1 if i < extra else base for i in range(n_neuron)])

	@property
	def q(self):
		return len(self.lags)

	@property
	def effective_dimension(self):
		return int(sum(self.lags))

	@property
	def max_history(self):
		return (max(self.lags) - 1) * self.stride

	@property
	def is_delayed(self):
		return max(self.lags) > 1

	def label(self):
		if len(set(self.lags)) == 1:
			return "{}x{}".format(self.q, self.lags[0])
		return "{}xrandom".format(self.q)

	def feature_index(self):
		""" (neuron, offset) of every feature row, offset counted in steps back from k.
		"""
		neurons = np.repeat(np.arange(self.q), self.lags)
		offsets = np.concatenate([np.arange(d) * self.stride for d in self.lags])
		return neurons, offsets


def assemble_delayed_features(states, spec, washout=None):
	""" Returns the (d x n_valid) feature matrix and the index of its first column
	in the state sequence.
	"""
	if hasattr(states, 'states'):
		S = states.states
		if washout is None:
			washout = states.washout
	else:
		S = np.asarray(states)
	washout = 0 if washout is None else int(washout)

	if S.shape[0] != spec.q:
		raise DimensionMismatchError("States have {} neurons but the delay spec lists {}".format(S.shape[0], spec.q))
	T = S.shape[1]
	start = max(washout, spec.max_history)
	if T <= start:
		raise InsufficientDataError("{} steps are not enough for washout {} and lag history {}".format(T, washout, spec.max_history))

	neurons, offsets = spec.feature_index()
	cols = np.arange(start, T)
	F = S[neurons[:, np.newaxis], cols[np.newaxis, :] - offsets[:, np.newaxis]]
	return F, start
