"""Exception hierarchy.

Every error raised by the library derives from :class:`HopfError`.  The
``category`` attribute drives the CLI exit-code contract: ``validation``
maps to 2, ``resources`` to 3 and ``parse`` to 4.
"""


class HopfError(Exception):
    category = "validation"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        body = {"error": type(self).__name__, "message": str(self)}
        body.update({k: _jsonable(v) for k, v in self.details.items()})
        return body


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return value.item()
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)


class ParseError(HopfError):
    category = "parse"


class SizeLimitExceeded(HopfError):
    category = "resources"


# carrier construction
class NonAssociative(HopfError):
    pass


class NoIdentity(HopfError):
    pass


class MissingInverse(HopfError):
    pass


class IndexOutOfRange(HopfError):
    pass


class NotAHomomorphism(HopfError):
    pass


# subobject lattice
class MismatchedParent(HopfError):
    pass


class NotASubgroup(HopfError):
    pass


class NotNormal(HopfError):
    pass


class NotNormalIn(HopfError):
    pass


class BadArity(HopfError):
    pass


# Lie backend
class JacobiViolation(HopfError):
    pass


class NotAntisymmetric(HopfError):
    pass


class NotNilpotent(HopfError):
    pass


class NotAnIdeal(HopfError):
    pass


class UnsupportedClass(HopfError):
    pass


# precrossed modules
class NotAnAction(HopfError):
    pass


class NotEquivariant(HopfError):
    pass


class NotASubmodule(HopfError):
    pass


# cubes
class BadDimension(HopfError):
    pass


class NotValidated(HopfError):
    pass


class NotCommuting(HopfError):
    pass


class NotSurjectiveArrow(HopfError):
    pass


class CriterionMismatch(HopfError):
    """Two independent criteria disagreed: a correctness alarm."""


# presentations / hopf
class UnsupportedReflectorBackend(HopfError):
    pass


class UnsupportedVariety(HopfError):
    pass


class NotInVariety(HopfError):
    pass


class ValidationFailed(HopfError):
    pass


class NotAPresentation(HopfError):
    pass


class InvarianceViolation(HopfError):
    pass
