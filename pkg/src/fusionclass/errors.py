"""Exception hierarchy shared by every module of the package."""


class FusionClassError(Exception):
    """Base class for all errors raised by fusionclass."""


class CapExceeded(FusionClassError):
    """An enumeration would grow past a configured size cap."""


class DegreeMismatch(FusionClassError):
    pass


class ElementNotInAmbient(FusionClassError):
    pass


class AmbientMismatch(FusionClassError):
    pass


class BaseMismatch(FusionClassError):
    pass


class BasisMismatch(FusionClassError):
    pass


class FieldMismatch(FusionClassError):
    pass


class ActionMismatch(FusionClassError):
    pass


class QMismatch(FusionClassError):
    pass


class CatalogInsufficient(FusionClassError):
    pass


class UnknownGroup(FusionClassError):
    pass


class CatalogFormatError(FusionClassError):
    pass


class NotFound(FusionClassError):
    """A pair has no canonical class in a basis; indicates a construction bug."""
