import operator
import numpy as np

def print_full_report(model_list, test=False, mc_results=None, filename=None, filemode='w'):
	print('\033[1mModel results:\033[0m\n')
	print_model_mses(model_list, mode='Train', filename=filename, filemode=filemode)
	if test:
		print('')
		print_model_mses(model_list, mode='Test', filename=filename, filemode='a' if filename is not None else filemode)
	if mc_results:
		print('')
		print_mc_totals(mc_results, filename=filename, filemode='a' if filename is not None else filemode)

def print_ranked(title, scores, reverse=False, f=None):
	""" Bolds the best entry; lower is better unless reverse.
	"""
	sorted_scores = sorted(scores.items(), key=operator.itemgetter(1), reverse=reverse)

	print('{}:'.format(title), file=f)
	print('\033[1m- {0}: {1:.6}\033[0m'.format(sorted_scores[0][0], sorted_scores[0][1]), file=f)
	for score_tp in sorted_scores[1:]:
		print('- {0}: {1:.6}'.format(score_tp[0], score_tp[1]), file=f)

def print_model_mses(model_list, mode='Train', filename=None, filemode='w'):
	""" Print ordered train or test MSEs.
	"""
	assert mode in ['Train', 'Test']

	f = None
	if filename is not None:
		f = open(filename, filemode)

	names = []
	mses = []
	for model in model_list:
		names.append(model.name)
		if mode == 'Train':
			mses.append(model.train_mse)
		elif mode == 'Test':
			assert model.test_mse is not None
			mses.append(model.test_mse)

	scores = dict(zip(names, mses))
	print_ranked('{} data MSE'.format(mode), scores, reverse=False, f=f)

	if f is not None:
		f.close()

def print_mc_totals(mc_results, filename=None, filemode='w'):
	""" Print ordered total memory capacities (median over repeats of each config).
	"""
	f = None
	if filename is not None:
		f = open(filename, filemode)

	totals = {}
	for result in mc_results:
		totals.setdefault(result.label, []).append(result.total)
	scores = dict((label, float(np.median(values))) for label, values in totals.items())
	print_ranked('Total memory capacity', scores, reverse=True, f=f) # higher is better

	if f is not None:
		f.close()
