"""dtoric: rings of differential operators on toric and monomial rings,
computed degree by degree in exact arithmetic."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    DtoricError,
    IncompatibleTupleError,
    NormalityError,
    ValidationError,
    WindowError,
)
