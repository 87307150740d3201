"""Exception hierarchy for the gstruct library."""


class GStructError(Exception):
    """Base class for all library errors."""


class FrameMismatchError(GStructError):
    """Operands live over different frame spaces."""


class GradeError(GStructError):
    """Operation applied to a form of an unsupported grade."""


class InvalidComplexStructureError(GStructError):
    """Supplied endomorphism does not square to minus the identity."""


class InvalidPhaseError(GStructError):
    """Phase pair (c, s) does not lie on the unit circle."""


class InconsistentGeometryError(GStructError):
    """Independent derivations of the same tensor disagree."""


class InconsistentInputError(GStructError):
    """Input data fails a required internal consistency identity."""


class ManifestError(GStructError):
    """Manifest syntax or semantic error, with source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}" if line else message)
