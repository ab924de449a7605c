""" Multivariate sampled trajectories: the data passed between the generators,
the reservoir and the metrics.

Values are stored as an (n_vars x n_steps) array, one column per time step.
"""

import json
import numpy as np
import pandas as pd

from delayRC.exceptions import DimensionMismatchError


class TimeSeries(object):
	def __init__(self, values, dt, var_names=None, metadata=None):
		values = np.asarray(values, dtype=float)
		if values.ndim == 1:
			values = values[np.newaxis, :]
		if values.ndim != 2:
			raise ValueError("TimeSeries values must be 2-D (n_vars x n_steps), got shape {}".format(values.shape))
		if values.shape[1] < 1:
			raise ValueError("TimeSeries needs at least one step.")
		if not dt > 0:
			raise ValueError("dt must be positive, got {}".format(dt))

		self.values = values
		self.dt = float(dt)
		if var_names is None:
			var_names = ["x{}".format(i + 1) for i in range(values.shape[0])]
		if len(var_names) != values.shape[0]:
			raise DimensionMismatchError("Got {} variable names for {} variables.".format(len(var_names), values.shape[0]))
		self.var_names = list(var_names)
		self.metadata = dict(metadata) if metadata is not None else {}

	@property
	def n_vars(self):
		return self.values.shape[0]

	@property
	def n_steps(self):
		return self.values.shape[1]

	@property
	def shape(self):
		return self.values.shape

	def times(self, t0=0.):
		return t0 + self.dt * np.arange(self.n_steps)

	def is_finite(self):
		return bool(np.all(np.isfinite(self.values)))

	def slice(self, start=None, stop=None):
		return TimeSeries(self.values[:, start:stop], self.dt, self.var_names, self.metadata)

	def select(self, var_names):
		idx = [self.var_names.index(v) for v in var_names]
		return TimeSeries(self.values[idx, :], self.dt, var_names, self.metadata)

	def with_values(self, values):
		return TimeSeries(values, self.dt, self.var_names, self.metadata)

	def __repr__(self):
		return "<TimeSeries {} vars x {} steps, dt={}>".format(self.n_vars, self.n_steps, self.dt)

	def to_frame(self):
		return pd.DataFrame(self.values.T, columns=self.var_names)

	def to_csv(self, path, metadata_path=None):
		""" Writes one row per time step with a header of variable names, plus a
		JSON sidecar holding dt, variable names and the generation metadata.
		"""
		self.to_frame().to_csv(path, index=False, float_format='%.17g')
		if metadata_path is None:
			metadata_path = str(path)[:-4] + '.json' if str(path).endswith('.csv') else str(path) + '.json'
		record = {'dt': self.dt, 'var_names': self.var_names, 'n_steps': self.n_steps, 'metadata': self.metadata}
		with open(metadata_path, 'w') as f:
			json.dump(record, f, indent=2, sort_keys=True)
		return metadata_path

	@classmethod
	def read_csv(cls, path, metadata_path=None):
		frame = pd.read_csv(path, float_precision='round_trip')
		if metadata_path is None:
			metadata_path = str(path)[:-4] + '.json' if str(path).endswith('.csv') else str(path) + '.json'
		with open(metadata_path) as f:
			record = json.load(f)
		return cls(frame.values.T, record['dt'], list(frame.columns), record.get('metadata'))
