"""Exception hierarchy.

StructuralError   -- malformed values (ground mismatch, bad labels, bad JSON)
ValidationError   -- an invariant failed; carries a witness when one exists
PreconditionError -- an operation's stated hypothesis does not hold
ResourceError     -- a size cap or search budget was exceeded
"""


class GentopError(Exception):
    pass


class StructuralError(GentopError):
    pass


class ValidationError(GentopError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(GentopError):
    pass


class ResourceError(GentopError):
    pass
