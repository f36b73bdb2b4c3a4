"""Exception hierarchy shared by all modules."""


class OModularError(Exception):
    pass


class StructureError(OModularError, ValueError):
    """Malformed or invalid structure input.

    ``line`` is the 1-based line number in the source text when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(StructureError):
    pass


class EmptyStructure(StructureError):
    pass


class DuplicateElement(StructureError):
    pass


class UnknownElement(StructureError):
    pass


class CycleDetected(StructureError):
    pass


class NotAJoinSemilattice(StructureError):
    def __init__(self, message, pair=None, line=None):
        self.pair = pair
        super().__init__(message, line)


class IndexOutOfRange(OModularError, IndexError):
    pass


class EmptySet(OModularError, ValueError):
    pass


class SizeLimitExceeded(OModularError, ValueError):
    pass


class UnknownBuiltin(OModularError, ValueError):
    pass


class BadParameter(OModularError, ValueError):
    pass


class InvalidWitness(OModularError, ValueError):
    pass


class NotALattice(OModularError, ValueError):
    pass


class NotJoinClosed(OModularError, ValueError):
    pass


class FactViolation(OModularError, AssertionError):
    """A fact the construction proves turned out false in the ambient structure."""

    def __init__(self, fact_id, statement):
        self.fact_id = fact_id
        self.statement = statement
        super().__init__(f"{fact_id} failed: {statement}")
