"""Exception taxonomy shared across the toolkit.

The CLI maps these onto exit codes: ConfigError/ValidationError -> 2,
ProviderError -> 3, OSError -> 4.
"""


class TextaugError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(TextaugError):
    """A dataset, record, or report violates one of its invariants."""


class ConfigError(TextaugError):
    """Bad configuration: unknown strategy, unsupported language, missing split, ..."""


class ProviderError(TextaugError):
    """Base class for provider transport failures."""


class ProviderUnavailableError(ProviderError):
    """Retries exhausted or the endpoint cannot be reached."""


class ProtocolError(ProviderError):
    """The provider answered, but not in the expected wire format."""

    def __init__(self, message: str, payload_excerpt: str = ""):
        super().__init__(message)
        self.payload_excerpt = payload_excerpt


class BalanceError(TextaugError):
    """A class cannot meet its per-class quota under balance=nbal."""

    def __init__(self, label: str, wanted: int, available: int):
        super().__init__(
            f"class {label!r} yielded {available} paraphrases, {wanted} required"
        )
        self.label = label
        self.deficit = wanted - available


class UndefinedMetricError(TextaugError):
    """A metric has no defined value for this input (e.g. TTR over zero tokens)."""


class DivergenceError(TextaugError):
    """Training loss became NaN/Inf."""

    def __init__(self, epoch: int):
        super().__init__(f"training diverged at epoch {epoch} (non-finite loss)")
        self.epoch = epoch


class PredictionImportError(TextaugError):
    """An external-predictions file does not line up with the gold test split."""
