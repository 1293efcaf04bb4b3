"""Exception types shared across the package."""


class VeritopError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(VeritopError):
    """A construction would exceed a configured size budget."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class DivergenceError(VeritopError):
    """An unbounded run of a scripted schedule would never terminate."""


class NotContinuousError(VeritopError):
    """A point map has an open set whose preimage is not open."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidBasisError(VeritopError):
    """A family of sets cannot serve as a basis for the requested space."""


class ExtensionError(VeritopError):
    """An open-set map admits no consistent extension to all subsets."""


class ReconstructionError(VeritopError):
    """An open-set map is not induced by any point function."""


class SpecFormatError(VeritopError):
    """A command-line document failed validation; carries a diagnostic code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
