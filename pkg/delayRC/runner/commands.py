""" One function per CLI command. Each reads the resolved config, writes its
result files under the output directory and finishes with a manifest.
"""

import os
import math
import logging
import pandas as pd
from joblib import Parallel, delayed

from delayRC.analysis.memory import memory_capacity
from delayRC.analysis.metrics import climate_test, embedding_check, lag_budget_check, prediction_error_curve, valid_prediction_time
from delayRC.analysis.selection import delayed_mutual_information, dimension_test, reservoir_dmi
from delayRC.analysis.sweep import tradeoff_grid
from delayRC.dynamics.generators import generate_system, random_input_sequence
from delayRC.dynamics.lyapunov import estimate_lyapunov
from delayRC.dynamics.params import get_system_preset, make_params
from delayRC.exceptions import InsufficientDataError, MissingArtifactError, NotChaoticError
from delayRC.misc import print_utils
from delayRC.misc.serialization import load_model, load_reservoir, save_model, save_reservoir
from delayRC.models.delayrc.delayrc import DelayRC
from delayRC.models.delayrc.readout import Normalizer, predict_closed_loop
from delayRC.models.delayrc.reservoir import build_reservoir, suggest_washout
from delayRC.runner.manifest import SeedLedger, write_manifest
from delayRC.timeseries import TimeSeries

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'


class Experiment(object):
	def __init__(self, config, out, jobs=1):
		self.config = config
		self.out = out
		self.jobs = jobs
		self.ledger = SeedLedger(config.seed)
		self.files = []
		self._lyapunov_time = None
		os.makedirs(out, exist_ok=True)

	def path(self, name):
		return os.path.join(self.out, name)

	def track(self, *paths):
		self.files.extend(paths)

	def write_frame(self, frame, name):
		path = self.path(name)
		frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
		self.track(path)
		return path

	def _base_overrides(self):
		preset = get_system_preset(self.config.system.preset)
		overrides = dict(self.config.system.overrides)
		if preset['kind'] == 'lattice' and 'seed' not in overrides:
			overrides['seed'] = self.ledger('system')
		return overrides

	def lyapunov_time(self):
		if self._lyapunov_time is None:
			preset = get_system_preset(self.config.system.preset)
			self._lyapunov_time = preset['lyapunov_time']
			if self.config.system.estimate_lyapunov or self._lyapunov_time is None:
				params = make_params(self.config.system.preset, self._base_overrides())
				est = estimate_lyapunov(params, self.config.system.lyapunov_horizon, transient_steps=params.n_discard,
					seed=self.ledger('lyapunov'))
				if est.chaotic:
					self._lyapunov_time = est.lyapunov_time
				elif self._lyapunov_time is None:
					raise NotChaoticError(est.exponent, self.config.system.preset)
				else:
					logger.warning("Estimated exponent %.4g is not positive; keeping the preset Lyapunov time %.4g",
						est.exponent, self._lyapunov_time)
		return self._lyapunov_time

	def params(self):
		return make_params(self.config.system.preset, self._base_overrides())

	def horizon_steps(self, dt):
		return int(math.ceil(self.config.predict.horizon_lyapunov * self.lyapunov_time() / dt))

	def series(self):
		""" The trajectory written by generate when it matches the config, else generated inline.
		"""
		params = self.params()
		path = self.path('trajectory.csv')
		if os.path.exists(path):
			series = TimeSeries.read_csv(path)
			if series.metadata.get('params') == params.model_dump(mode='json'):
				return series
			logger.info("%s was generated with other parameters; regenerating in memory", path)
		return generate_system(params)

	def resolve_washout(self, pairs):
		""" Replaces washout 'auto' by the largest suggest_washout over (reservoir, input)
		pairs, so the manifest records the value that was used. pairs is only
		consumed when the washout is 'auto'.
		"""
		if self.config.washout == 'auto':
			washout = max(suggest_washout(res, inputs) for res, inputs in pairs)
			logger.info("Resolved washout 'auto' to %d steps", washout)
			self.config = self.config.model_copy(update={'washout': washout})
		return self.config.washout

	def finish(self, command):
		return write_manifest(self.out, command, self.config, self.ledger, self.files)


def _check_train_length(config, series):
	if series.n_steps < config.train_length:
		raise InsufficientDataError("train_length {} exceeds the {} generated steps".format(config.train_length, series.n_steps))


def _training_input(config, series):
	train = series.values[:, :config.train_length]
	return Normalizer.fit(train).transform(train)



def cmd_generate(exp):
	series = generate_system(exp.params())
	path = exp.path('trajectory.csv')
	meta = series.to_csv(path)
	exp.track(path, meta)
	logger.info("Wrote %s (%d steps of %d variables)", path, series.n_steps, series.n_vars)


def _train_variant(series, name, reservoir_config, spec, config):
	try:
		model = DelayRC(series, reservoir=reservoir_config, delay_spec=spec, beta=config.beta,
			train_length=config.train_length, washout=config.washout, name=name)
		return model.run()
	except InsufficientDataError as e:
		raise InsufficientDataError("variant '{}' ({} lags, stride {}): {}".format(name, spec.label(), spec.stride, e)) from e


def _variant_builds(exp, n_in):
	builds = []
	for v, (name, rsec, dsec) in enumerate(exp.config.resolved_variants()):
		reservoir_config = rsec.build(n_in, exp.ledger('reservoir', v))
		spec = dsec.build(rsec.m, exp.ledger('lags', v))
		builds.append((name, reservoir_config, spec))
	return builds


def _resolve_series_washout(exp, series):
	inputs = _training_input(exp.config, series)
	return exp.resolve_washout((build_reservoir(reservoir_config), inputs)
		for _, reservoir_config, _ in _variant_builds(exp, series.n_vars))


def cmd_train(exp):
	config = exp.config
	series = exp.series()
	_check_train_length(config, series)
	lyapunov_time = exp.lyapunov_time()
	_resolve_series_washout(exp, series)
	config = exp.config

	models = Parallel(n_jobs=exp.jobs)(
		delayed(_train_variant)(series, name, reservoir_config, spec, config)
		for name, reservoir_config, spec in _variant_builds(exp, series.n_vars))

	rows = []
	for model in models:
		spec = model.delay_spec
		exp.track(save_reservoir(model.reservoir, exp.path('reservoir_{}.json'.format(model.name))))
		exp.track(save_model(model.model, exp.path('model_{}.json'.format(model.name))))
		budget = lag_budget_check(spec.stride, series.dt, max(spec.lags), lyapunov_time)
		rows.append({'variant': model.name, 'n_neuron': spec.q, 'lags': spec.label(), 'effective_dimension': spec.effective_dimension,
			'stride': spec.stride, 'train_mse': model.train_mse, 'test_mse': model.test_mse,
			'budget_margin': budget.margin, 'budget_passed': budget.passed})

	exp.write_frame(pd.DataFrame(rows), 'train_report.csv')
	report = exp.path('train_report.txt')
	print_utils.print_full_report(models, test=all(m.test_mse is not None for m in models), filename=report)
	exp.track(report)


def cmd_predict(exp):
	config = exp.config
	series = exp.series()
	_check_train_length(config, series)
	lyapunov_time = exp.lyapunov_time()
	n_steps = exp.horizon_steps(series.dt)
	if series.n_steps < config.train_length + n_steps:
		raise InsufficientDataError("Prediction needs train_length {} + horizon {} steps but the trajectory has {}; "
			"set system.overrides.n_steps to at least {}".format(config.train_length, n_steps, series.n_steps, config.train_length + n_steps))
	warmup = series.slice(0, config.train_length)
	truth = series.slice(config.train_length, config.train_length + n_steps)

	rows, curves = [], []
	for name, _, _ in config.resolved_variants():
		paths = [exp.path('reservoir_{}.json'.format(name)), exp.path('model_{}.json'.format(name))]
		for path in paths:
			if not os.path.exists(path):
				raise MissingArtifactError(path, 'train')
		res, model = load_reservoir(paths[0]), load_model(paths[1])

		pred = predict_closed_loop(res, model, warmup, truth.n_steps)
		pred_path = exp.path('prediction_{}.csv'.format(name))
		exp.track(pred_path, pred.to_csv(pred_path))

		climate = climate_test(pred, truth, config.predict.bins, config.predict.bound_factor, config.predict.tv_max)
		vpt = valid_prediction_time(pred, truth, lyapunov_time, config.predict.threshold)
		rows.append({'variant': name, 'climate_passed': climate.passed, 'bounded': climate.bounded, 'max_tv': max(climate.tv),
			'valid_time_lyapunov': vpt, 'horizon_lyapunov': truth.n_steps * truth.dt / lyapunov_time})
		err = prediction_error_curve(pred, truth)
		curves.append(pd.DataFrame({'variant': name, 'step': range(err.size),
			'time_lyapunov': [k * truth.dt / lyapunov_time for k in range(err.size)], 'error': err}))
		logger.info("%s: climate %s, valid time %.3g Lyapunov times", name, "passed" if climate.passed else "failed", vpt)

	exp.write_frame(pd.DataFrame(rows), 'predict_report.csv')
	exp.write_frame(pd.concat(curves, ignore_index=True), 'error_curves.csv')


def _mc_task(reservoir_config, spec, mc, beta, washout, seed, label, repeat):
	result = memory_capacity(build_reservoir(reservoir_config), spec, mc.k_max, beta, seed, mc.n_train, mc.n_test,
		mc.amplitude, washout, label=label)
	return repeat, result


def cmd_mc(exp):
	config = exp.config
	tasks = []
	for v, (name, rsec, dsec) in enumerate(config.resolved_variants()):
		for r in range(config.mc.repeats):
			reservoir_config = rsec.build(1, exp.ledger('mc_reservoir', v, r))
			spec = dsec.build(rsec.m, exp.ledger('mc_lags', v, r))
			tasks.append((reservoir_config, spec, exp.ledger('mc_input', v, r), name, r))
	washout = exp.resolve_washout((build_reservoir(reservoir_config), random_input_sequence(seed, config.mc.n_train, config.mc.amplitude))
		for reservoir_config, _, seed, _, _ in tasks)

	results = Parallel(n_jobs=exp.jobs)(
		delayed(_mc_task)(reservoir_config, spec, config.mc, config.beta, washout, seed, name, r)
		for reservoir_config, spec, seed, name, r in tasks)

	curves = []
	totals = []
	for r, result in results:
		frame = result.to_frame()
		frame.insert(1, 'repeat', r)
		curves.append(frame)
		totals.append({'config': result.label, 'repeat': r, 'total': result.total, 'fading': result.is_fading(),
			'effective_dimension': sum(result.lags)})
	exp.write_frame(pd.concat(curves, ignore_index=True), 'mc_curves.csv')
	exp.write_frame(pd.DataFrame(totals), 'mc_totals.csv')
	print_utils.print_mc_totals([result for _, result in results])


def cmd_sweep(exp):
	config = exp.config
	series = exp.series()
	_check_train_length(config, series)
	washout = _resolve_series_washout(exp, series)
	result = tradeoff_grid(series, config.sweep.neuron_list, config.sweep.lag_list, tau=config.delay.stride, beta=config.beta,
		repeats=config.sweep.repeats, seed=exp.ledger('sweep'), train_length=config.train_length, washout=washout,
		reservoir_fields=config.reservoir.fields(), n_jobs=exp.jobs)

	exp.write_frame(result.to_frame(), 'sweep.csv')
	medians = result.medians()
	rows = [{'n_neuron': m, 'n_lag': n_lag, 'median_mse': medians[i, j], 'n_ok': len(result.cell(m, n_lag))}
		for i, m in enumerate(result.neuron_list) for j, n_lag in enumerate(result.lag_list)]
	exp.write_frame(pd.DataFrame(rows), 'sweep_medians.csv')
	if result.n_failed:
		logger.warning("%d of %d sweep fits failed; see the status column of sweep.csv", result.n_failed, len(result.records))


def cmd_dmi(exp):
	config = exp.config
	series = exp.series()
	_check_train_length(config, series)
	normalized = _training_input(config, series)
	washout = _resolve_series_washout(exp, series)

	results = []
	if 'input' in config.dmi.sources:
		results.append(('input', delayed_mutual_information(normalized, config.dmi.tau_max, config.dmi.bins)))
	if 'reservoir' in config.dmi.sources:
		for name, reservoir_config, _ in _variant_builds(exp, series.n_vars):
			res = build_reservoir(reservoir_config)
			results.append(('reservoir:' + name, reservoir_dmi(res, normalized, config.dmi.tau_max, config.dmi.bins, washout)))

	curves, summary = [], []
	for source, result in results:
		frame = result.to_frame()
		frame.insert(0, 'source', source)
		curves.append(frame)
		summary.append({'source': source, 'recommended_tau': result.recommended_tau, 'first_minimum': result.first_minimum,
			'n_traces': result.n_traces, 'bins': result.bins})
		logger.info("DMI (%s): recommended stride %d", source, result.recommended_tau)
	exp.write_frame(pd.concat(curves, ignore_index=True), 'dmi.csv')
	exp.write_frame(pd.DataFrame(summary), 'dmi_summary.csv')


def cmd_dimtest(exp):
	config = exp.config
	series = exp.series()
	_check_train_length(config, series)
	washout = _resolve_series_washout(exp, series)
	result = dimension_test(series.slice(0, config.train_length), config.dimtest.d_list, config.dimtest.policy, config.beta,
		config.dimtest.repeats, exp.ledger('dimtest'), tau=config.delay.stride, washout=washout,
		n_neuron=config.dimtest.n_neuron, reservoir_fields=config.reservoir.fields())

	exp.write_frame(result.to_frame(), 'dimtest.csv')
	attractor_dim = get_system_preset(config.system.preset)['attractor_dim']
	summary = {'policy': result.policy, 'recommended_d': result.recommended_d, 'attractor_dim': attractor_dim,
		'embedding_passed': None if attractor_dim is None else embedding_check(result.recommended_d, attractor_dim)}
	exp.write_frame(pd.DataFrame([summary]), 'dimtest_summary.csv')


COMMANDS = {
	'generate': cmd_generate,
	'train': cmd_train,
	'predict': cmd_predict,
	'mc': cmd_mc,
	'sweep': cmd_sweep,
	'dmi': cmd_dmi,
	'dimtest': cmd_dimtest,
}


def run_command(command, config, out, jobs=1):
	""" Runs one command and returns the path of its manifest.
	"""
	exp = Experiment(config, out, jobs)
	COMMANDS[command](exp)
	return exp.finish(command)
