"""Exception types shared across the package."""


class QpbwError(Exception):
    """Base class for all package errors."""


class InputError(QpbwError):
    """Malformed or semantically invalid input (bad scalar, singular
    generator, oversized group, ill-formed kappa entry, ...)."""


class FieldMismatchError(InputError):
    """Arithmetic attempted between scalars of different cyclotomic orders."""


class GroupTooLargeError(InputError):
    """Generator closure exceeded the configured maximum order."""


class IncompatibleActionError(QpbwError):
    """The group does not act by automorphisms of the quantum polynomial
    ring for the given commutation parameters.  This is a precondition
    failure for the PBW checkers, not a deformation-parameter violation."""

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        msg = f"group action incompatible with q ({len(self.violations)} relation(s) broken"
        if first is not None:
            msg += f", first witness {first}"
        msg += ")"
        super().__init__(msg)
