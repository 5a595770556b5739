"""Exception types shared across the package."""
from __future__ import annotations


class DirectorError(Exception):
    """Base class for every error this package raises deliberately."""


class InvariantViolation(DirectorError, ValueError):
    """A domain value broke one of its structural invariants.

    ``code`` is a stable machine-readable identifier for the violated rule,
    e.g. ``"cargo-on-non-transport"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ConfigError(DirectorError, ValueError):
    """A DirectorConfig field is out of range; ``field`` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


class ParseError(DirectorError, ValueError):
    """A trace or trajectory file failed to parse or validate.

    Carries the 1-based ``line`` number and a machine-readable ``code``.
    """

    def __init__(self, line: int, code: str, message: str):
        super().__init__(f"line {line}: {code}: {message}")
        self.line = line
        self.code = code
        self.reason = message


class ScenarioError(DirectorError, ValueError):
    """Unknown scenario id or unusable scenario parameters."""


class RenderError(DirectorError, ValueError):
    """Trace and trajectory inputs do not describe the same run."""
