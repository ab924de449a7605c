""" Small systems with known Lyapunov exponents, used to check the estimator.
"""

import numpy as np

from delayRC.dynamics.systems.base import FlowSystem, MapSystem


class LinearFlow(FlowSystem):
	""" x' = A x. Its largest exponent is the largest real part of eig(A).
	"""
	name = 'linear'

	def __init__(self, A, x0, dt=0.01):
		self.A = np.atleast_2d(np.asarray(A, dtype=float))
		super().__init__(dt, var_names=["x{}".format(i + 1) for i in range(self.A.shape[0])])
		self.x0 = np.asarray(x0, dtype=float).reshape(-1)

	def rhs(self, x):
		return self.A.dot(x)

	def initial_state(self):
		return np.copy(self.x0)


class LogisticMap(MapSystem):
	name = 'logistic'

	def __init__(self, a=3.9, x0=0.4):
		super().__init__(1., var_names=['x'])
		self.a = a
		self.x0 = x0

	def apply(self, x):
		return self.a * x * (1. - x)

	def initial_state(self):
		return np.array([self.x0], dtype=float)
