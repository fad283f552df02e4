"""Exception types shared across the package."""


class HolorankError(Exception):
    """Base class for every error raised by holorank."""


class DimensionError(HolorankError, ValueError):
    """Operand shapes do not fit together."""


class SingularMatrix(HolorankError, ArithmeticError):
    pass


class InconsistentSystem(HolorankError, ArithmeticError):
    pass


class UnderdeterminedSystem(HolorankError, ArithmeticError):
    pass


class CapExceeded(HolorankError):
    """A configured enumeration or storage limit would be exceeded."""


class InfeasibleSignature(HolorankError, ValueError):
    """A standard signature has no preimage under the requested basis."""
