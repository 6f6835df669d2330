"""Exact algorithms for lattices over CM-orders and the Witt-Picard group."""
from .errors import CMToolError, InputError, InternalError, NotSquarefreeError, ResourceError

__version__ = "0.1.0"

__all__ = [
    "CMToolError", "InputError", "InternalError", "NotSquarefreeError", "ResourceError",
]
