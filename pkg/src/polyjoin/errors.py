"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class PolyjoinError(Exception):
    exit_code = 10
    kind = "error"

    def to_dict(self):
        return {"error": self.kind, "message": str(self)}


class InvalidInputError(PolyjoinError, ValueError):
    """Malformed complex, pair, ground set or JSON document."""

    exit_code = 2
    kind = "invalid-input"


class ResourceLimitError(PolyjoinError):
    exit_code = 3
    kind = "resource-limit"


class UnsupportedRingError(PolyjoinError):
    exit_code = 4
    kind = "unsupported-ring"


class PreconditionError(PolyjoinError):
    """A theorem hypothesis (e.g. homology split over Z) does not hold for the instance."""

    exit_code = 5
    kind = "precondition"
