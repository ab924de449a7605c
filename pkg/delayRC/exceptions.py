""" Exceptions raised across delayRC.
"""


class DelayRCError(Exception):
	pass


class GenerationDivergedError(DelayRCError, ArithmeticError):
	def __init__(self, step, system="system"):
		self.step = step
		super().__init__("{} diverged: non-finite state at step {}".format(system, step))


class HistoryError(DelayRCError, ValueError):
	pass


class ReservoirConstructionError(DelayRCError, ValueError):
	pass


class DimensionMismatchError(DelayRCError, ValueError):
	pass


class InsufficientDataError(DelayRCError, ValueError):
	pass


class WarmupTooShortError(DelayRCError, ValueError):
	def __init__(self, given, required):
		self.given = given
		self.required = required
		super().__init__("Warmup of {} steps is too short: at least {} steps are required.".format(given, required))


class SolverError(DelayRCError, ValueError):
	pass


class NotChaoticError(DelayRCError, ValueError):
	def __init__(self, exponent, system="system"):
		self.exponent = exponent
		super().__init__("{} has no positive Lyapunov exponent (estimate {:.4g}), so it has no Lyapunov time".format(system, exponent))


class PresetNotFoundError(DelayRCError, KeyError):
	def __init__(self, name, available, kind="preset"):
		self.name = name
		self.available = sorted(available)
		super().__init__("Unknown {} '{}'. Available: {}".format(kind, name, ", ".join(self.available)))

	def __str__(self):
		return self.args[0]


class MissingArtifactError(DelayRCError, FileNotFoundError):
	def __init__(self, path, command):
		self.path = path
		self.command = command
		super().__init__("Missing artifact {}. Run `delay-rc {}` first.".format(path, command))

	def __str__(self):
		return self.args[0]
