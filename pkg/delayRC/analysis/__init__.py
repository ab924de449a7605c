""" Probes of trained and untrained reservoirs: prediction scores, memory
capacity, grid sweeps and model-selection tests.
"""
