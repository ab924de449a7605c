import numpy as np

from delayRC.dynamics.systems.base import MapSystem
from delayRC.misc.utils import make_rng, sample_uniform


class CoupledLogisticLattice(MapSystem):
	""" Coupled map lattice on a periodic 2-D grid with 4-neighbour diffusive coupling.
	The state is the grid flattened in row-major (C) order.
	"""
	name = 'lattice'

	def __init__(self, params):
		H, W = params.height, params.width
		super().__init__(params.dt, var_names=["c{}_{}".format(i, j) for i in range(H) for j in range(W)])
		self.params = params
		self.shape = (H, W)
		self.eps = params.coupling
		self.a = params.map_parameter

	def local(self, x):
		if self.params.local_map == 'identity':
			return x
		return self.a * x * (1. - x)

	def apply(self, x):
		f = self.local(x.reshape(self.shape))
		neighbours = np.roll(f, 1, axis=0) + np.roll(f, -1, axis=0) + np.roll(f, 1, axis=1) + np.roll(f, -1, axis=1)
		return ((1. - self.eps) * f + 0.25 * self.eps * neighbours).ravel()

	def initial_state(self):
		rng = make_rng(self.params.seed)
		return sample_uniform(rng, 0., 1., size=self.shape[0] * self.shape[1])
