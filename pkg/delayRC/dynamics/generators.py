""" Ground-truth trajectories for the benchmark systems and the random drive used
by the memory-capacity test. Every generator is a pure function of its
parameters (and seed).
"""

import logging
import numpy as np

from delayRC.dynamics.params import GeneModelParams, LatticeParams, LorenzParams, make_params
from delayRC.dynamics.systems.gene import GeneRegulationSystem
from delayRC.dynamics.systems.lattice import CoupledLogisticLattice
from delayRC.dynamics.systems.lorenz import LorenzSystem
from delayRC.misc.utils import make_rng, sample_uniform
from delayRC.timeseries import TimeSeries

logger = logging.getLogger(__name__)


def make_system(params):
	if isinstance(params, LorenzParams):
		return LorenzSystem(params)
	if isinstance(params, GeneModelParams):
		return GeneRegulationSystem(params)
	if isinstance(params, LatticeParams):
		return CoupledLogisticLattice(params)
	raise TypeError("No system for parameters of type {}".format(type(params).__name__))

def _generate(params, kind, **extra):
	system = make_system(params)
	logger.debug("Generating %s: %d steps after %d discarded", kind, params.n_steps, params.n_discard)
	values = system.trajectory(params.n_steps, n_discard=params.n_discard)
	metadata = {'system': kind, 'params': params.model_dump(mode='json')}
	metadata.update(extra)
	return TimeSeries(values, params.dt, system.var_names, metadata)

def generate_lorenz(params):
	return _generate(params, 'lorenz')

def generate_gene_model(params):
	return _generate(params, 'gene')

def generate_lattice(params):
	return _generate(params, 'lattice', seed=params.seed, flattening='row-major', grid=[params.height, params.width])

def generate_system(params):
	if isinstance(params, LorenzParams):
		return generate_lorenz(params)
	if isinstance(params, GeneModelParams):
		return generate_gene_model(params)
	return generate_lattice(params)

def generate_preset(preset, overrides=None):
	return generate_system(make_params(preset, overrides))

def random_input_sequence(seed, n_steps, amplitude=0.5):
	""" i.i.d. uniform values on [-amplitude, amplitude], 1 x n_steps.
	"""
	if n_steps < 1:
		raise ValueError("n_steps must be at least 1")
	if amplitude < 0:
		raise ValueError("amplitude must be non-negative")
	rng = make_rng(seed)
	values = sample_uniform(rng, -1., 1., size=(1, n_steps)) * amplitude
	return TimeSeries(values, 1., ['u'], {'system': 'random_input', 'seed': int(seed), 'amplitude': float(amplitude)})
