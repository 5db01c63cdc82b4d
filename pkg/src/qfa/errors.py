"""Exception hierarchy. Every domain error raised by the library derives from QfaError."""


class QfaError(Exception):
    pass


class RangeError(QfaError, ValueError):
    """Value not representable in the requested format."""


class FormatError(QfaError, ValueError):
    """Malformed format string or mismatched residue width."""


class ShapeError(QfaError, ValueError):
    """Exponent rule violated for an arithmetic target."""


class NonIntegerPolynomialError(QfaError, ValueError):
    pass


class MissingVariableError(QfaError, KeyError):
    pass


class RegisterError(QfaError, ValueError):
    """Overlapping, unknown or mismatched registers."""


class AncillaError(QfaError, ValueError):
    """Not enough clean ancilla qubits for a decomposition or schedule."""


class InvertibilityError(QfaError, ValueError):
    pass


class UnsupportedGateError(QfaError, ValueError):
    pass


class QubitLimitError(QfaError, ValueError):
    pass


class SequenceError(QfaError, ValueError):
    """CP sequence does not have the required ascending shape."""
