"""Exception hierarchy shared by every module.

Each exception carries the process exit code the command-line tool maps it to:
2 for bad input or unmet preconditions, 3 for an exhausted search budget and
4 for a broken internal invariant.
"""

from __future__ import annotations


class QlrcError(Exception):
    exit_code = 2


# --- bad input / unmet preconditions (exit 2) ---


class InputError(QlrcError):
    pass


class NonPrimeP(InputError):
    pass


class ReducibleModulus(InputError):
    pass


class UnsupportedOrder(InputError):
    pass


class NonDivisorN(InputError):
    pass


class BadSubfieldOrder(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NotStrictlyIncreasing(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class SpecMismatch(InputError):
    pass


class RankDeficientInput(InputError):
    pass


class NotQuadraticField(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class MalformedInput(InputError):
    pass


class InvalidParams(InputError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class Unsupported(InputError):
    pass


class TooLarge(InputError):
    pass


class DistanceTooSmall(InputError):
    pass


class NoneFound(InputError):
    pass


class UncoveredCoordinate(InputError):
    def __init__(self, coordinate: int, detail: str = ""):
        self.coordinate = coordinate
        msg = f"coordinate {coordinate} has no local protection group"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class NotOptimal(InputError):
    pass


class NotDualContaining(InputError):
    pass


class NotMinimalDecomposition(InputError):
    pass


# --- budget (exit 3) ---


class BudgetExceeded(QlrcError):
    exit_code = 3


# --- internal invariants (exit 4) ---


class InvariantViolation(QlrcError):
    exit_code = 4


class AssemblyFailed(InvariantViolation):
    pass


class CertificationFailed(InvariantViolation):
    pass


class NoValidLambdaMu(InvariantViolation):
    pass
