from ._mqr import (
    Spec,
    SpecParseError,
    SpecValidationError,
    ResourceLimitError,
    verify_fixture,
    fixture_names,
    fixture_document,
)

__all__ = [
    "Spec",
    "SpecParseError",
    "SpecValidationError",
    "ResourceLimitError",
    "verify_fixture",
    "fixture_names",
    "fixture_document",
]
