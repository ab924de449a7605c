""" JSON files for reservoirs, readouts and manifests. Keys are sorted and floats
written with full repr precision so identical objects give identical bytes.
"""

import json

from delayRC.models.delayrc.readout import ReadoutModel
from delayRC.models.delayrc.reservoir import Reservoir


def save_json(record, path):
    with open(path, 'w') as f:
        json.dump(record, f, indent=2, sort_keys=True)
        f.write('\n')
    return path

def load_json(path):
    with open(path) as f:
        return json.load(f)

def save_reservoir(reservoir, path, include_matrices=True):
    return save_json(reservoir.to_record(include_matrices), path)

def load_reservoir(path):
    return Reservoir.from_record(load_json(path))

def save_model(model, path):
    return save_json(model.to_record(), path)

def load_model(path):
    return ReadoutModel.from_record(load_json(path))
