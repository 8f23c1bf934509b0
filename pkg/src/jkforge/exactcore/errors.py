"""Exception types shared by all modules."""


class JKError(Exception):
    """Base class; ``witness`` carries a machine-readable counterexample."""

    exit_code = 1

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class FiltrationViolation(JKError):
    pass


class AssocFailure(JKError):
    pass


class UnknownSymbol(JKError):
    pass


class CapOverflow(JKError):
    exit_code = 3


class SizeLimit(JKError):
    exit_code = 3


class TypeMismatch(JKError):
    pass


class IndexOutOfRange(JKError):
    pass


class SplittingNotSection(JKError):
    pass


class SectionFailure(JKError):
    pass


class DiagramNotCommuting(JKError):
    pass


class BrokenChain(JKError):
    def __init__(self, index, message="", witness=None):
        super().__init__(message or "chain broken at link %d" % index, witness)
        self.index = index


class FactorizationFailure(JKError):
    pass


class GradingMissing(JKError):
    pass


class ParseError(JKError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        loc = "" if line is None else " (line %s, column %s)" % (line, column)
        super().__init__(message + loc)
        self.line = line
        self.column = column


class NotAnIdealWarning(UserWarning):
    pass
