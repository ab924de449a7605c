""" Experiment configuration: validated sections read from YAML.

A config source is one of
  - a packaged figure preset name (fig2a, fig2b, fig3a, fig3b, fig4),
  - a YAML experiment file,
  - a run manifest (JSON), whose resolved_config is replayed.
"""

import os
import json
import logging
import yaml
from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, field_validator, model_validator
from typing import Any, Dict, List, Literal, Optional, Union

from delayRC.dynamics.params import get_system_preset
from delayRC.exceptions import PresetNotFoundError
from delayRC.models.delayrc.delays import DelaySpec
from delayRC.models.delayrc.reservoir import ReservoirConfig

logger = logging.getLogger(__name__)

PRESET_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'presets')


class Section(BaseModel):
	model_config = ConfigDict(extra='forbid')


class SystemSection(Section):
	preset: str = 'lorenz'
	overrides: Dict[str, Any] = {}
	estimate_lyapunov: bool = False
	lyapunov_horizon: float = Field(200., gt=0)

	@field_validator('preset')
	@classmethod
	def known_preset(cls, v):
		get_system_preset(v)
		return v


class ReservoirSection(Section):
	m: int = Field(200, ge=1)
	spectral_radius: float = Field(0.9, ge=0)
	input_scale: float = Field(0.1, ge=0)
	density: float = Field(0.05, gt=0, le=1)
	leak: float = Field(1., ge=0, le=1)
	activation: Literal['tanh'] = 'tanh'

	def fields(self):
		""" ReservoirConfig keyword arguments other than m, n_in and seed.
		"""
		return self.model_dump(exclude={'m'})

	def build(self, n_in, seed):
		return ReservoirConfig(n_in=n_in, seed=seed, **self.model_dump())


class DelaySection(Section):
	policy: Literal['uniform', 'explicit', 'random'] = 'uniform'
	stride: int = Field(1, ge=1)
	n_lag: int = Field(1, ge=1)
	lags: Optional[List[int]] = None
	mean: float = 5.
	sigma: float = Field(2., gt=0)
	low: int = Field(1, ge=1)
	high: int = Field(9, ge=1)

	@model_validator(mode='after')
	def explicit_needs_lags(self):
		if self.policy == 'explicit' and not self.lags:
			raise ValueError("delay policy 'explicit' needs a lags list")
		return self

	def build(self, n_neuron, seed):
		if self.policy == 'uniform':
			return DelaySpec.uniform(n_neuron, self.n_lag, self.stride)
		if self.policy == 'random':
			return DelaySpec.random(n_neuron, self.mean, self.stride, seed, self.sigma, self.low, self.high)
		if len(self.lags) != n_neuron:
			raise ValueError("explicit lags list has {} entries for {} neurons".format(len(self.lags), n_neuron))
		return DelaySpec(stride=self.stride, lags=self.lags)


class VariantSection(Section):
	name: str
	reservoir: Dict[str, Any] = {}
	delay: Optional[DelaySection] = None


class PredictSection(Section):
	horizon_lyapunov: float = Field(20., gt=0)
	threshold: float = Field(0.4, gt=0)
	bins: int = Field(30, ge=2)
	bound_factor: float = Field(1.5, ge=1)
	tv_max: float = Field(0.2, gt=0)


class MCSection(Section):
	k_max: int = Field(60, ge=1)
	n_train: int = Field(4000, ge=2)
	n_test: int = Field(1000, ge=2)
	amplitude: float = Field(0.5, ge=0)
	repeats: int = Field(1, ge=1)


class SweepSection(Section):
	neuron_list: List[int] = [20, 40, 100, 200]
	lag_list: List[int] = [1, 2, 5]
	repeats: int = Field(1, ge=1)


class DMISection(Section):
	tau_max: int = Field(50, ge=1)
	bins: int = Field(16, ge=2)
	sources: List[Literal['input', 'reservoir']] = ['input', 'reservoir']


class DimtestSection(Section):
	d_list: List[int] = [50, 100, 200, 400]
	policy: Literal['neurons', 'single', 'split', 'embedding'] = 'neurons'
	n_neuron: int = Field(1, ge=1)
	repeats: int = Field(1, ge=1)


class ExperimentConfig(Section):
	name: str = 'experiment'
	seed: int = 0
	system: SystemSection = SystemSection()
	reservoir: ReservoirSection = ReservoirSection()
	delay: DelaySection = DelaySection()
	variants: List[VariantSection] = []
	beta: float = Field(1e-6, ge=0)
	train_length: int = Field(6000, ge=2)
	# auto: max(500, first step where the echo-state distance drops below 1e-8)
	washout: Union[Literal['auto'], NonNegativeInt] = 'auto'
	predict: PredictSection = PredictSection()
	mc: MCSection = MCSection()
	sweep: SweepSection = SweepSection()
	dmi: DMISection = DMISection()
	dimtest: DimtestSection = DimtestSection()

	@field_validator('variants')
	@classmethod
	def unique_names(cls, v):
		names = [variant.name for variant in v]
		if len(set(names)) != len(names):
			raise ValueError("variant names must be unique")
		return v

	def resolved_variants(self):
		""" (name, reservoir section, delay section) per variant, the base sections
		filled in; a config without variants has a single one named 'default'.
		"""
		if not self.variants:
			return [('default', self.reservoir, self.delay)]
		out = []
		for variant in self.variants:
			reservoir = ReservoirSection(**dict(self.reservoir.model_dump(), **variant.reservoir))
			out.append((variant.name, reservoir, variant.delay if variant.delay is not None else self.delay))
		return out

	def to_yaml(self):
		return yaml.safe_dump(self.model_dump(mode='json'), sort_keys=True, default_flow_style=False)


def available_presets():
	return sorted(f[:-5] for f in os.listdir(PRESET_DIR) if f.endswith('.yaml'))

def load_config(source):
	""" Resolves a preset name, a YAML file or a manifest into an ExperimentConfig.
	"""
	if not os.path.exists(source):
		if source not in available_presets():
			raise PresetNotFoundError(source, available_presets(), kind="config file or figure preset")
		source = os.path.join(PRESET_DIR, source + '.yaml')
	with open(source) as f:
		# YAML 1.1 reads JSON exponents such as 1e-06 as strings
		data = (json.load(f) if source.endswith('.json') else yaml.safe_load(f)) or {}
	if 'resolved_config' in data:
		logger.info("Replaying the resolved config of manifest %s", source)
		data = data['resolved_config']
	return ExperimentConfig(**data)
