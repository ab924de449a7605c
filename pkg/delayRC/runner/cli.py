""" delay-rc <generate|train|predict|mc|sweep|dmi|dimtest> --config <file> [--seed n] [--jobs n] [--out dir]
"""

import sys
import logging
import argparse

from delayRC.exceptions import DelayRCError
from delayRC.runner.commands import COMMANDS, run_command
from delayRC.runner.config import available_presets, load_config

logger = logging.getLogger(__name__)


def build_parser():
	parser = argparse.ArgumentParser(prog='delay-rc', description="Delayed reservoir computing experiments.")
	parser.add_argument('command', choices=sorted(COMMANDS))
	parser.add_argument('--config', required=True,
		help="YAML config, run manifest, or figure preset ({})".format(", ".join(available_presets())))
	parser.add_argument('--seed', type=int, default=None, help="master seed (overrides the config)")
	parser.add_argument('--jobs', type=int, default=1, help="worker processes for sweeps and multi-variant runs")
	parser.add_argument('--out', default=None, help="output directory (default: results/<config name>)")
	parser.add_argument('-v', '--verbose', action='store_true')
	return parser


def main(argv=None):
	args = build_parser().parse_args(argv)
	logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format='%(levelname)s %(name)s: %(message)s')

	try:
		config = load_config(args.config)
		if args.seed is not None:
			config.seed = args.seed
		out = args.out if args.out is not None else 'results/{}'.format(config.name)
		manifest = run_command(args.command, config, out, args.jobs)
	except (DelayRCError, ValueError) as e:
		logger.error("%s", e)
		return 1
	logger.info("Manifest written to %s", manifest)
	return 0


if __name__ == '__main__':
	sys.exit(main())
