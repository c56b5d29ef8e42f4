"""Exception hierarchy for the harness.

Every failure the library raises intentionally derives from BenchError, so
callers can distinguish harness-level faults from programming errors.
"""


class BenchError(Exception):
    """Base class for all harness errors."""


# --- benchmark functions ---

class DomainViolation(BenchError):
    """A point lies outside a function's bounding box."""


class IntegralityViolation(BenchError):
    """An integer-constrained dimension received a non-integer coordinate."""


class NotApplicable(BenchError):
    """An operation was requested on a function it does not apply to."""


# --- optimizer sessions ---

class BudgetExhausted(BenchError):
    """A suggestion was requested after the evaluation budget was spent."""


class OutOfOrderObservation(BenchError):
    """The suggest/observe alternation was violated."""


class AdapterFailure(BenchError):
    """An external optimizer process misbehaved (crash, bad message, domain abuse)."""


class AdapterTimeout(AdapterFailure):
    """An external optimizer exceeded its per-suggestion deadline."""


# --- metrics ---

class EmptyRun(BenchError):
    """A trace was requested for a run with no evaluations."""


class NonFiniteValue(BenchError):
    """An objective value was NaN or infinite."""


class LengthMismatch(BenchError):
    """Traces of different lengths were combined."""


# --- statistics ---

class SampleTooSmall(BenchError):
    """A significance test needs at least two values per sample."""


class ExactModeWithTies(BenchError):
    """The exact U distribution is only valid for tie-free samples."""


class MismatchedSamples(BenchError):
    """Two samples do not describe the same (function, metric) pair."""


class DuplicateFunction(BenchError):
    """The same function id appeared twice in a per-function collection."""


class MissingMetric(BenchError):
    """A verdict was requested without outcomes for every campaign metric."""


# --- campaign orchestration ---

class FatalConfigError(BenchError):
    """The campaign configuration is unusable."""


class ManifestMismatch(BenchError):
    """An archive's manifest does not match the resuming configuration."""


# --- reporting ---

class UnknownMethod(BenchError):
    """A requested method id is not present in the archive."""


class NoComparableFunctions(BenchError):
    """No function has enough completed runs for both methods."""


class IoFailure(BenchError):
    """A report bundle could not be written."""
