from delayRC.models.delayrc.reservoir import Reservoir, ReservoirConfig, StateSequence, build_reservoir, drive, echo_state_check, suggest_washout
from delayRC.models.delayrc.delays import DelaySpec, assemble_delayed_features
from delayRC.models.delayrc.readout import Normalizer, ReadoutModel, train_ridge, predict_open_loop, predict_closed_loop
from delayRC.models.delayrc.delayrc import DelayRC
