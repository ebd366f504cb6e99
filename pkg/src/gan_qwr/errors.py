"""Exception types shared across the package."""


class GanQwrError(Exception):
    """Base class for all package errors."""


class MaterialLookupError(GanQwrError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown material id {self.name!r}"


class HeterojunctionError(GanQwrError, ValueError):
    """Barrier band gap does not exceed the well band gap."""


class UnsupportedOrderError(GanQwrError, ValueError):
    pass


class DomainError(GanQwrError, ValueError):
    """Argument outside the documented domain of a function."""


class AccuracyError(GanQwrError, ArithmeticError):
    """Numerical integration did not reach the requested tolerance."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class ContractError(GanQwrError, ValueError):
    """Input violates a documented precondition (e.g. unnormalized state)."""


class SingularityError(GanQwrError, ZeroDivisionError):
    pass


class ConfigError(GanQwrError, ValueError):
    def __init__(self, message, section=None, key=None, line=None):
        super().__init__(message)
        self.section = section
        self.key = key
        self.line = line

    def as_record(self):
        return {
            "error": type(self).__name__,
            "message": str(self),
            "section": self.section,
            "key": self.key,
            "line": self.line,
        }
