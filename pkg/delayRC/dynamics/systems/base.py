""" This file contains the abstract class shared by every benchmark system: a
system knows its initial state and how to advance a state by whole sampling
steps. Trajectory generation and the two-trajectory Lyapunov estimate are
written once here in terms of those two operations.
"""

import numpy as np
from abc import ABC, abstractmethod

from delayRC.exceptions import GenerationDivergedError


def rk4_step(f, x, h):
	k1 = f(x)
	k2 = f(x + 0.5 * h * k1)
	k3 = f(x + 0.5 * h * k2)
	k4 = f(x + h * k3)
	return x + h / 6. * (k1 + 2. * k2 + 2. * k3 + k4)


class DynamicalSystem(ABC):
	name = 'system'

	def __init__(self, dt, var_names=None):
		self.dt = float(dt)
		self.var_names = var_names

	@abstractmethod
	def initial_state(self):
		pass

	@abstractmethod
	def advance(self, state, n_steps=1):
		""" Returns the state n_steps sampling steps later; never mutates the argument.
		"""
		pass

	def observe(self, state):
		return np.ravel(state)

	def separation(self, state_a, state_b):
		return np.linalg.norm(np.ravel(state_a) - np.ravel(state_b))

	def perturb(self, state, size, rng):
		direction = rng.standard_normal(np.shape(state))
		direction = direction / np.linalg.norm(direction)
		return state + size * direction

	def trajectory(self, n_steps, n_discard=0, state=None):
		""" Samples the states at steps n_discard, ..., n_discard + n_steps - 1,
		where step 0 is the initial state.
		"""
		if state is None:
			state = self.initial_state()
		for i in range(n_discard):
			state = self.advance(state)
			if not np.all(np.isfinite(state)):
				raise GenerationDivergedError(i + 1, self.name)

		first = self.observe(state)
		out = np.empty((first.size, n_steps))
		out[:, 0] = first
		for i in range(1, n_steps):
			state = self.advance(state)
			if not np.all(np.isfinite(state)):
				raise GenerationDivergedError(n_discard + i, self.name)
			out[:, i] = self.observe(state)
		return out


class FlowSystem(DynamicalSystem):
	""" Autonomous ODE integrated with classical fixed-step RK4.
	"""
	@abstractmethod
	def rhs(self, x):
		pass

	def advance(self, state, n_steps=1):
		x = np.array(state, dtype=float)
		for _ in range(n_steps):
			x = rk4_step(self.rhs, x, self.dt)
		return x


class MapSystem(DynamicalSystem):
	@abstractmethod
	def apply(self, x):
		pass

	def advance(self, state, n_steps=1):
		x = np.array(state, dtype=float)
		for _ in range(n_steps):
			x = self.apply(x)
		return x
