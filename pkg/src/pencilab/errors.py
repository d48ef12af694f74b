"""Exception types shared across the package."""


class PencilabError(Exception):
    """Base class for all errors raised by pencilab."""


class UnsupportedShapeError(PencilabError):
    """Newton polygon has a shape we do not handle (e.g. vertical last side)."""


class OutOfRangeError(PencilabError):
    """A shift or integral parameter lies outside its admissible range."""


class PencilFormatError(PencilabError):
    """Malformed pencil description (JSON schema or internal consistency)."""


class EllipticityError(PencilabError):
    """An ellipticity assumption needed by the requested computation fails."""
