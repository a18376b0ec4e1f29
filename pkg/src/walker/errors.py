"""Exception hierarchy.  CLI exit codes hang off these classes."""


class WalkerError(Exception):
    exit_code = 1


class SpecError(WalkerError, ValueError):
    """Malformed input file or polynomial text."""

    exit_code = 2


class PolynomialParseError(SpecError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        where = f" at position {position} in {text!r}" if text else ""
        super().__init__(f"{message}{where}")


class PreconditionError(WalkerError, ValueError):
    """A mathematical precondition of an operation does not hold."""

    exit_code = 3


class NonConvergenceError(WalkerError, RuntimeError):
    exit_code = 4
