import time
import logging
import numpy as np

from delayRC.analysis.metrics import climate_test, mse, valid_prediction_time
from delayRC.exceptions import InsufficientDataError
from delayRC.misc.utils import elapsed_hms
from delayRC.models.delayrc.delays import DelaySpec
from delayRC.models.delayrc.readout import Normalizer, ReadoutModel, predict_closed_loop, predict_open_loop, teacher_forced_features, train_ridge
from delayRC.models.delayrc.reservoir import Reservoir, ReservoirConfig, build_reservoir, suggest_washout

logger = logging.getLogger(__name__)

class DelayRC(object):
	""" A reservoir, a delay layout and a ridge readout trained on one series.

	The first train_length steps train the readout (after the washout); the rest
	of the series, if any, scores one-step predictions as test data. washout='auto'
	is resolved by suggest_washout on the normalized training slice.
	"""
	def __init__(self, series, reservoir=None, delay_spec=None, beta=1e-6, train_length=None, washout=500, bias=False,
					name=None, **reservoir_fields):
		self.series = series
		if reservoir is None:
			reservoir_fields['n_in'] = series.n_vars
			reservoir = build_reservoir(ReservoirConfig(**reservoir_fields))
		elif isinstance(reservoir, ReservoirConfig):
			reservoir = build_reservoir(reservoir)
		assert isinstance(reservoir, Reservoir)
		self.reservoir = reservoir

		if delay_spec is None:
			delay_spec = DelaySpec.uniform(reservoir.m, 1)
		self.delay_spec = delay_spec

		self.beta = beta
		self.washout = washout
		self.bias = bias
		self.train_length = series.n_steps if train_length is None else min(train_length, series.n_steps)

		self.model = None
		self.train_mse = None
		self.test_mse = None
		self.train_pred = None
		self.test_pred = None

		self.name = name
		if self.name is None:
			self.name = "RC-{}".format(delay_spec.label())

	def run(self, verbose=False):
		if verbose:
			print('Running {0}...'.format(self.name))
		init = time.time()

		values = self.series.values
		norm = Normalizer.fit(values[:, :self.train_length])
		normalized = norm.transform(values)
		if self.washout == 'auto':
			self.washout = suggest_washout(self.reservoir, normalized[:, :self.train_length])
		F, Y, start = teacher_forced_features(self.reservoir, normalized, self.delay_spec, self.washout)

		# column j of F predicts series step start + 1 + j
		n_train = self.train_length - start - 1
		if n_train < 1:
			raise InsufficientDataError("train_length {} leaves no training columns after washout {} and lag history {}".format(
				self.train_length, self.washout, self.delay_spec.max_history))

		self.model = ReadoutModel(np.zeros((self.series.n_vars, F.shape[0] + int(self.bias))), self.delay_spec, self.beta, norm,
			washout=self.washout, bias=self.bias, dt=self.series.dt, var_names=self.series.var_names)
		self.model.w_out = train_ridge(self.model.with_bias(F[:, :n_train]), Y[:, :n_train], self.beta)

		self.train_pred = predict_open_loop(self.model, F[:, :n_train])
		self.train_mse = mse(self.train_pred, self.series.values[:, start + 1:start + 1 + n_train])
		if F.shape[1] > n_train:
			self.test_pred = predict_open_loop(self.model, F[:, n_train:])
			self.test_mse = mse(self.test_pred, self.series.values[:, start + 1 + n_train:])

		elapsed = time.time() - init
		h, m, s = elapsed_hms(elapsed)
		logger.info("%s: train MSE %.4g%s", self.name, self.train_mse,
			"" if self.test_mse is None else ", test MSE {:.4g}".format(self.test_mse))
		if verbose:
			print('Elapsed: {0:.0f}h{1:.0f}m{2:.0f}s'.format(h, m, s))
		return self

	def predict(self, n_steps, warmup=None):
		""" Autonomous continuation after warmup (the training slice by default).
		"""
		assert self.model is not None, "run() the model before predicting"
		if warmup is None:
			warmup = self.series.slice(0, self.train_length)
		return predict_closed_loop(self.reservoir, self.model, warmup, n_steps)

	def climate(self, truth, warmup=None, **kwargs):
		return climate_test(self.predict(truth.n_steps, warmup), truth, **kwargs)

	def valid_time(self, truth, lyapunov_time, threshold=0.4, warmup=None):
		return valid_prediction_time(self.predict(truth.n_steps, warmup), truth, lyapunov_time, threshold)
