class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or self-inconsistent."""
