"""Exception hierarchy shared by the calculators."""


class SegreLabError(Exception):
    """Base class for every error raised by segrelab."""


class SeriesError(SegreLabError):
    """Invalid operation on a truncated power series."""


class LengthError(SeriesError, ValueError):
    pass


class OrderError(SeriesError, ValueError):
    """Binary operation on series truncated at different orders."""


class TruncationError(SeriesError, IndexError):
    """A coefficient beyond the truncation order was requested."""


class SeriesDomainError(SeriesError, ValueError):
    """Constant-term precondition violated (pow, compose, reverse)."""


class ReversionError(SeriesDomainError):
    pass


class InconsistentDataError(SegreLabError, ValueError):
    """Bundle numerics that cannot come from an actual surface or curve."""


class UnsupportedGeometryError(SegreLabError, ValueError):
    pass


class ParityError(SegreLabError, ValueError):
    pass
