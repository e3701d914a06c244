"""Custom exceptions for covertlink."""

from typing import Optional, Dict, Any

from pydantic import ValidationError


class CovertLinkError(Exception):
    """Base exception for covertlink errors."""

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}


class DomainError(CovertLinkError, ValueError):
    """Raised when an argument lies outside a function's domain."""
    pass


class ConfigError(CovertLinkError):
    """Raised when a run configuration cannot be parsed or validated."""
    pass


class NumericError(CovertLinkError):
    """Raised when a numerical routine fails to converge."""
    pass


class UndefinedLossError(CovertLinkError):
    """Raised when the relative rate loss has a zero nominal rate."""
    pass


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def exit_code_for(exc: BaseException) -> int:
    """Map an exception raised by a command to the CLI exit code."""
    if isinstance(exc, (ConfigError, DomainError, ValidationError)):
        return EXIT_CONFIG
    elif isinstance(exc, NumericError):
        return EXIT_NUMERIC
    return EXIT_FAILURE


def describe(exc: BaseException) -> str:
    """Render an exception as field-level messages for the terminal."""
    if isinstance(exc, ValidationError):
        lines = []
        for err in exc.errors():
            loc = ".".join(str(part) for part in err.get("loc", ())) or "config"
            msg = err.get("msg", "invalid value")
            if msg.startswith("Value error, "):
                msg = msg[len("Value error, "):]
            lines.append(f"{loc}: {msg}")
        return "\n".join(lines)

    if isinstance(exc, CovertLinkError):
        text = exc.message
        violations = exc.details.get("violations")
        if violations:
            text += "\n" + "\n".join(f"  - {v}" for v in violations)
        return text

    return str(exc)
