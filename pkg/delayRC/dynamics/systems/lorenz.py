import numpy as np

from delayRC.dynamics.systems.base import FlowSystem


class LorenzSystem(FlowSystem):
	name = 'lorenz'

	def __init__(self, params):
		super().__init__(params.dt, var_names=['x', 'y', 'z'])
		self.params = params
		self.sigma = params.sigma
		self.rho = params.rho
		self.beta = params.beta

	def rhs(self, x):
		return np.array([self.sigma * (x[1] - x[0]),
			x[0] * (self.rho - x[2]) - x[1],
			x[0] * x[1] - self.beta * x[2]])

	def initial_state(self):
		return np.array(self.params.x0, dtype=float)
