""" Run manifests: everything needed to replay a command bit-for-bit. No
timestamps or host details are recorded, so a replay reproduces the manifest too.
"""

import os
from pydantic import BaseModel
from typing import Any, Dict

import delayRC
from delayRC.misc.serialization import save_json
from delayRC.misc.utils import derive_seed, file_digest


class SeedLedger(object):
	""" Derives child seeds and remembers every one handed out.
	"""
	def __init__(self, master):
		self.master = int(master)
		self.seeds = {}

	def __call__(self, label, *indices):
		seed = derive_seed(self.master, label, *indices)
		key = "|".join([label] + [str(i) for i in indices])
		self.seeds[key] = seed
		return seed


class RunManifest(BaseModel):
	command: str
	version: str
	resolved_config: Dict[str, Any]
	derived_seeds: Dict[str, int]
	files: Dict[str, str]


def write_manifest(out, command, config, ledger, files):
	""" files are paths inside out; they are recorded by name with their sha256.
	"""
	manifest = RunManifest(
		command=command,
		version=delayRC.__version__,
		resolved_config=config.model_dump(mode='json'),
		derived_seeds=dict(sorted(ledger.seeds.items())),
		files=dict((os.path.relpath(path, out), file_digest(path)) for path in sorted(files)),
	)
	path = os.path.join(out, 'manifest_{}.json'.format(command))
	save_json(manifest.model_dump(mode='json'), path)
	return path
