"""Exception hierarchy.

Every error carries a short machine-readable ``code`` and an ``exit_code``
used by the command line front end (2 = domain error, 3 = verification
failure, 1 = parse error).
"""

from __future__ import annotations


class HeisrepError(Exception):
    code = "error"
    exit_code = 2


class DomainError(HeisrepError, ValueError):
    code = "domain_error"


class PoleError(DomainError):
    code = "pole"


class ChainMismatch(DomainError):
    code = "chain_mismatch"


class WindowTooShort(DomainError):
    code = "window_too_short"


class ZeroInput(DomainError):
    code = "zero_input"


class NotInKernel(DomainError):
    code = "not_in_kernel"


class DivergentSeries(DomainError):
    code = "divergent_series"


class ToleranceError(DomainError):
    code = "tolerance"


class BadLevels(DomainError):
    code = "bad_levels"


class NeedConcreteQ(DomainError):
    code = "need_concrete_q"


class WindowOverflow(DomainError):
    code = "window_overflow"


class PrecisionError(DomainError):
    code = "precision"


class NotRadial(DomainError):
    code = "not_radial"


class InternalError(HeisrepError, RuntimeError):
    """A computation produced something its own construction rules out."""

    code = "internal"
    exit_code = 3


class RankError(InternalError):
    code = "rank"


class ResidueError(InternalError):
    code = "residue"


class SingularSystem(InternalError):
    code = "singular"


class ExprSyntaxError(HeisrepError, SyntaxError):
    code = "syntax"
    exit_code = 1

    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class ExprTypeError(HeisrepError, TypeError):
    code = "type"
    exit_code = 1
