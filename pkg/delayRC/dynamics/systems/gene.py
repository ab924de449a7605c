""" Gene regulation model with two feedback delays,

	x'(t) = -k x(t) + g f1(x(t - tau1)) f2(x(t - tau2)),

integrated by the method of steps with classical RK4. Both delays are whole
multiples of dt, so the delayed arguments of the RK4 stages fall either on
stored nodes or on the midpoint between two nodes; midpoints come from the cubic
Hermite interpolant built on the stored values and slopes.

A state is a (3 x window) array over the last max(tau1, tau2)/dt + 1 nodes:
row 0 holds values, row 1 the slope seen from the left of each node and row 2
the slope seen from the right. The two slopes only differ at t = 0, where the
history hands over to the solution.
"""

import numpy as np

from delayRC.dynamics.systems.base import DynamicalSystem
from delayRC.exceptions import GenerationDivergedError, HistoryError
from delayRC.misc.utils import central_difference, hermite_midpoint


class GeneRegulationSystem(DynamicalSystem):
	name = 'gene'

	def __init__(self, params):
		super().__init__(params.dt, var_names=['x'])
		self.params = params
		self.k = params.k_decay
		self.g = params.g_gain
		self.m1, self.m2 = params.lags
		self.window = params.history_nodes

	def f1(self, x):
		return 1. / (1. + (x / self.params.theta1)**self.params.h1)

	def f2(self, x):
		u = (x / self.params.theta2)**self.params.h2
		return u / (1. + u)

	def rhs(self, x, x_tau1, x_tau2):
		return -self.k * x + self.g * self.f1(x_tau1) * self.f2(x_tau2)

	def initial_state(self):
		h = self.dt
		t = h * (np.arange(self.window) - (self.window - 1))
		history = self.params.history

		if callable(history):
			values = np.array([history(ti) for ti in t], dtype=float)
			slopes = np.array([central_difference(history, ti) for ti in t], dtype=float)
		elif isinstance(history, np.ndarray):
			if history.size < self.window:
				raise HistoryError("history has {} samples, the delays need {}".format(history.size, self.window))
			values = np.array(history[-self.window:], dtype=float)
			slopes = np.gradient(values, h)
		else:
			values = np.full(self.window, float(history))
			slopes = np.zeros(self.window)

		state = np.stack([values, slopes, np.copy(slopes)])
		state[2, -1] = self.rhs(values[-1], values[-1 - self.m1], values[-1 - self.m2])
		return state

	def _integrate(self, x, dl, dr, start, n_steps, offset=0):
		""" Advances in place from node start over n_steps nodes. offset only shifts
		the step index reported on divergence.
		"""
		h = self.dt
		m1, m2 = self.m1, self.m2
		for i in range(start, start + n_steps):
			j1 = i - m1
			j2 = i - m2
			mid1 = hermite_midpoint(x[j1], x[j1 + 1], dr[j1], dl[j1 + 1], h)
			mid2 = hermite_midpoint(x[j2], x[j2 + 1], dr[j2], dl[j2 + 1], h)

			k1 = dr[i]
			k2 = self.rhs(x[i] + 0.5 * h * k1, mid1, mid2)
			k3 = self.rhs(x[i] + 0.5 * h * k2, mid1, mid2)
			k4 = self.rhs(x[i] + h * k3, x[j1 + 1], x[j2 + 1])
			x[i + 1] = x[i] + h / 6. * (k1 + 2. * k2 + 2. * k3 + k4)

			if not np.isfinite(x[i + 1]):
				raise GenerationDivergedError(offset + i + 1 - start, self.name)
			dl[i + 1] = dr[i + 1] = self.rhs(x[i + 1], x[i + 1 - m1], x[i + 1 - m2])

	def _buffers(self, state, n_steps):
		size = self.window + n_steps
		x, dl, dr = np.empty(size), np.empty(size), np.empty(size)
		x[:self.window], dl[:self.window], dr[:self.window] = state
		return x, dl, dr

	def advance(self, state, n_steps=1):
		x, dl, dr = self._buffers(state, n_steps)
		self._integrate(x, dl, dr, self.window - 1, n_steps)
		return np.stack([x[-self.window:], dl[-self.window:], dr[-self.window:]])

	def observe(self, state):
		return np.array([state[0, -1]])

	def separation(self, state_a, state_b):
		# distance over the stored history segment
		return np.linalg.norm(state_a[0] - state_b[0])

	def perturb(self, state, size, rng):
		direction = rng.standard_normal(self.window)
		direction = direction / np.linalg.norm(direction)
		out = np.copy(state)
		out[0] = out[0] + size * direction
		return out

	def trajectory(self, n_steps, n_discard=0, state=None):
		if state is None:
			state = self.initial_state()
		total = n_discard + n_steps - 1
		x, dl, dr = self._buffers(state, total)
		self._integrate(x, dl, dr, self.window - 1, total)
		first = self.window - 1 + n_discard
		return x[np.newaxis, first:first + n_steps]
