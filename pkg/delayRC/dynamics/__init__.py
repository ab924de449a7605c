from delayRC.dynamics.params import GeneModelParams, LatticeParams, LorenzParams, SYSTEM_PRESETS, make_params
from delayRC.dynamics.generators import (generate_gene_model, generate_lattice, generate_lorenz, generate_preset,
	generate_system, make_system, random_input_sequence)
from delayRC.dynamics.lyapunov import estimate_lyapunov
