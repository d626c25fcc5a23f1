"""
Error hierarchy for treecoh

Every error is a ValueError subclass carrying a stable machine-readable
reason and a details dictionary that is copied into report records.
"""

from typing import Any, Dict, Optional


class TreecohError(ValueError):
    """Base class for all treecoh errors"""

    reason = "error"

    def __init__(self, message: str, reason: Optional[str] = None, **details: Any):
        super().__init__(message)
        if reason is not None:
            self.reason = reason
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for reports

        Returns:
            Dictionary with reason, message and details
        """
        return {"reason": self.reason, "message": str(self), "details": self.details}


class InputError(TreecohError):
    """Malformed input: bad matrix, ring, index or family data"""

    reason = "input"


class ContractViolation(TreecohError):
    """A checked precondition or postcondition failed"""

    reason = "contract"


class DeepenTruncationError(TreecohError):
    """The truncation (tree depth or label budget) is too small"""

    reason = "deepen_truncation"

    def __init__(self, message: str, required: Optional[int] = None,
                 available: Optional[int] = None, **details: Any):
        super().__init__(message, required=required, available=available, **details)
        self.required = required
        self.available = available


class BoundaryError(TreecohError):
    """Walked off the top of a truncated tree"""

    reason = "boundary"


class ConfigError(TreecohError):
    """Invalid run configuration"""

    reason = "config"
