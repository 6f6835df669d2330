"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``InputError`` to 1, ``ResourceError``
and ``InternalError`` to 2.
"""


class CMToolError(Exception):
    pass


class InputError(CMToolError, ValueError):
    """The caller supplied data that violates a documented precondition."""


class NotSquarefreeError(InputError):
    pass


class ResourceError(CMToolError, RuntimeError):
    """An enumeration or search exceeded its budget."""


class InternalError(CMToolError, RuntimeError):
    """An invariant that should hold by construction was violated."""


def check(condition, message):
    if not condition:
        raise InternalError(message)
