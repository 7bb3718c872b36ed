class DomainError(ValueError):
    """Raised when a numerical precondition of an operation is violated."""


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class BracketError(ValueError):
    """Raised when a bracket holds no interior positive maximum of the extracted work."""


class EmptyResultError(RuntimeError):
    """Raised when a scan produced no point inside the engine window."""
