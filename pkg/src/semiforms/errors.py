"""Error taxonomy shared across the package.

Input problems raise :class:`SpecError` (CLI exit code 1), exhausted
computation budgets raise :class:`BudgetExceededError` (exit code 2).
Anything else escaping the library is an internal invariant failure
(exit code 3).
"""


class SemiformsError(Exception):
    """Base class for errors raised deliberately by this package."""


class SpecError(SemiformsError, ValueError):
    """Invalid input: malformed polynomial, bad parameter, broken precondition."""


class PolyParseError(SpecError):
    """Syntax error in a polynomial string; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class HomogeneityError(SpecError):
    """A parsed or constructed form mixes monomial degrees."""

    def __init__(self, degrees):
        degs = ", ".join(str(d) for d in sorted(degrees))
        super().__init__(f"polynomial is not homogeneous: monomial degrees {{{degs}}}")
        self.degrees = frozenset(degrees)


class BudgetExceededError(SemiformsError, RuntimeError):
    """A configured computation budget ran out before the result was reached."""

    def __init__(self, message, **context):
        if context:
            detail = ", ".join(f"{k}={v}" for k, v in sorted(context.items()))
            message = f"{message} ({detail})"
        super().__init__(message)
        self.context = context
