"""Exception hierarchy shared by every vornuc module."""


class VornucError(Exception):
    """Base class for all library errors."""


class GeometryError(VornucError):
    pass


class TooFewSites(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


class SiteOutsideBox(GeometryError):
    pass


class DegeneratePolygon(GeometryError):
    pass


class IndexOutOfRange(VornucError, IndexError):
    pass


class SchemaMismatch(VornucError, ValueError):
    pass


class MixedTessellation(VornucError, ValueError):
    pass


class StencilOutOfBounds(VornucError, IndexError):
    pass


class OutOfImageBounds(VornucError, ValueError):
    pass


class IngestError(VornucError):
    pass


class ParseError(IngestError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFormat(IngestError, ValueError):
    pass


class CorruptHeader(IngestError, ValueError):
    pass


class ImageTooSmall(IngestError, ValueError):
    pass
