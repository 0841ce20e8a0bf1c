"""Error taxonomy shared by the engine, the service, and the CLI.

Three failure kinds map onto the CLI exit codes and HTTP statuses:

* InputError        -- malformed input (bad JSON shape, unknown family, index
                       out of range, mismatched lengths).      exit 2 / HTTP 400
* ResourceError     -- a configured budget would be exceeded (group order,
                       cochain basis size, closure size).      exit 3 / HTTP 413
* PreconditionError -- input is well-formed but violates a mathematical
                       precondition (table not a group, values not a cocycle,
                       sign map not a homomorphism, character not equivariant).
                                                               exit 4 / HTTP 422
"""


class TwistedSchurError(Exception):
    """Base class for all engine errors."""

    exit_code = 1
    http_status = 500
    kind = "internal"


class InputError(TwistedSchurError):
    exit_code = 2
    http_status = 400
    kind = "input"


class ResourceError(TwistedSchurError):
    """Budget exceeded.  ``partial`` may carry a partial-progress report."""

    exit_code = 3
    http_status = 413
    kind = "resource"

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionError(TwistedSchurError):
    exit_code = 4
    http_status = 422
    kind = "precondition"
