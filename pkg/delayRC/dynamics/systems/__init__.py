from delayRC.dynamics.systems.base import DynamicalSystem, FlowSystem, MapSystem
from delayRC.dynamics.systems.gene import GeneRegulationSystem
from delayRC.dynamics.systems.lattice import CoupledLogisticLattice
from delayRC.dynamics.systems.lorenz import LorenzSystem
from delayRC.dynamics.systems.simple import LinearFlow, LogisticMap
