"""Exception hierarchy shared by every gyrokit module."""


class GyroError(Exception):
    """Base class for all gyrokit errors."""


class ToleranceNotPositive(GyroError, ValueError):
    pass


class OutsideBall(GyroError, ValueError):
    """A velocity has norm >= c."""


class MismatchedC(GyroError, ValueError):
    """Two velocities live in balls of different radius."""


class NotAGroup(GyroError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"not a group: {axiom} fails at {self.witness}")


class ParseError(GyroError, ValueError):
    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class IndexOutOfRange(GyroError, ValueError):
    def __init__(self, value, n, line=None, column=None):
        self.value = value
        self.n = n
        self.line = line
        self.column = column
        where = "" if line is None else f"line {line}, column {column}: "
        super().__init__(f"{where}index {value} outside [0, {n})")


class ResourceLimit(GyroError):
    pass


class EmptySubset(GyroError, ValueError):
    pass


class NotASubgyrogroup(GyroError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subset is not a subgyrogroup (witness {witness})")


class NotAnLSubgyrogroup(GyroError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subgyrogroup is not an L-subgyrogroup (witness {witness})")


class PartitionFailure(GyroError):
    """Left cosets of an L-subgyrogroup failed to partition the carrier.

    Never expected; signals a bug in the table or coset code.
    """


class ParentMismatch(GyroError, ValueError):
    pass


class PreconditionUnmet(GyroError):
    def __init__(self, hypothesis, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        msg = f"precondition unmet: {hypothesis}"
        if witness is not None:
            msg += f" (witness {witness})"
        super().__init__(msg)
