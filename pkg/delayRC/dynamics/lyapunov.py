""" Largest Lyapunov exponent by the two-trajectory renormalization method: a
reference and a perturbed copy are advanced side by side, their separation is
measured every few steps and pulled back to its initial size, and the mean
log-stretching rate is the exponent.
"""

import logging
import numpy as np
from pydantic import BaseModel

from delayRC.dynamics.systems.base import DynamicalSystem
from delayRC.misc.utils import make_rng

logger = logging.getLogger(__name__)


class LyapunovEstimate(BaseModel):
	exponent: float
	lyapunov_time: float
	chaotic: bool
	horizon: float
	n_renormalizations: int


def estimate_lyapunov(source, horizon, d0=1e-8, renorm_steps=10, transient_steps=0, seed=0, state=None):
	""" source is a DynamicalSystem or a parameter record of one of the generators.
	horizon is in the system's time units; the exponent is per unit time.
	"""
	if isinstance(source, DynamicalSystem):
		system = source
	else:
		from delayRC.dynamics.generators import make_system
		system = make_system(source)

	rng = make_rng(seed)
	ref = system.initial_state() if state is None else state
	if transient_steps:
		ref = system.advance(ref, transient_steps)
	pert = system.perturb(ref, d0, rng)

	block = renorm_steps * system.dt
	n_blocks = max(1, int(round(horizon / block)))
	log_sum = 0.
	for b in range(n_blocks):
		ref = system.advance(ref, renorm_steps)
		pert = system.advance(pert, renorm_steps)
		d = system.separation(ref, pert)
		if d == 0.:
			# the perturbation collapsed onto the reference below machine precision
			d = np.finfo(float).tiny
			pert = system.perturb(ref, d0, rng)
			log_sum += np.log(d / d0)
			continue
		log_sum += np.log(d / d0)
		pert = ref + (d0 / d) * (pert - ref)

	exponent = log_sum / (n_blocks * block)
	chaotic = bool(exponent > 0)
	if not chaotic:
		logger.warning("Largest Lyapunov exponent estimate %.4g is not positive: %s looks non-chaotic", exponent, system.name)
	return LyapunovEstimate(exponent=float(exponent), lyapunov_time=float(1. / exponent) if chaotic else float('inf'),
		chaotic=chaotic, horizon=float(n_blocks * block), n_renormalizations=n_blocks)
