"""Domain errors. Each carries a stable ``code`` for the CLI's error JSON."""
from typing import Any, Dict, Optional


class CurveError(Exception):
    code = "curve_error"

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.message, "detail": self.detail}


class WordSyntaxError(CurveError):
    """Token text that is not a nonzero integer."""

    code = "word_syntax"


class WordValidationError(CurveError):
    """Well-formed tokens that do not make a based decorated word (or a bad argument for one)."""

    code = "word_invalid"


class NonRealizableError(CurveError):
    """The word's combinatorial map has positive genus."""

    code = "non_realizable"


class StaleMoveError(CurveError):
    code = "stale_move"


class SearchBoundExceeded(CurveError):
    code = "search_bound"
