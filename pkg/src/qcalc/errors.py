"""Exception hierarchy shared by every qcalc module."""


class QCalcError(Exception):
    """Base class for all qcalc errors."""


class DomainError(QCalcError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ExactDivisionError(DomainError):
    pass


class NotInvertibleError(DomainError):
    pass


class NotClosedError(DomainError):
    pass


class NotFlatError(DomainError):
    pass


class NotPolynomialError(DomainError):
    pass


class NotDifferentiableError(DomainError):
    pass


class SpecError(QCalcError, ValueError):
    """Invalid calculus data, or forms from different calculi were mixed."""


class UnsupportedSpecError(SpecError):
    """The operation exists only for a narrower family of calculi."""


class ExprSyntaxError(QCalcError):
    """Malformed input expression; carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


class UnknownTokenError(ExprSyntaxError):
    pass
