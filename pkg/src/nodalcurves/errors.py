"""Exception types shared across the package."""


class NodalError(ValueError):
    """Base class for domain errors."""


class InvalidWord(NodalError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "invalid word")


class NotClosed(NodalError):
    pass


class IsPower(NodalError):
    pass


class ZeroEigenvalue(NodalError):
    pass


class NotFull(NodalError):
    pass


class CountImbalance(NodalError):
    def __init__(self, message, site=None):
        self.site = site
        super().__init__(message)


class InfiniteOccurrence(NodalError):
    pass


class ConfigMismatch(NodalError):
    pass


class InvalidData(NodalError):
    pass


class WindowTooSmall(NodalError):
    pass


class NotCoherent(NodalError):
    pass


class ShapeMismatch(NodalError):
    pass


class SingularBlock(NodalError):
    pass


class InadmissibleCertificate(NodalError):
    pass


class TooLarge(NodalError):
    pass


class NotAdmissible(NodalError):
    pass


class DecompositionFailure(NodalError):
    """The summand could not be matched to any band or string datum."""


class DocumentSyntaxError(NodalError):
    """Malformed JSON; carries the line and column of the problem."""

    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class SchemaError(NodalError):
    pass


class InvariantViolation(NodalError):
    pass
