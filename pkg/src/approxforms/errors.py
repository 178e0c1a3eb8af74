"""Exception hierarchy shared by all modules."""


class ApproxFormsError(Exception):
    """Base class for every error raised by this package."""


class PosetError(ApproxFormsError, ValueError):
    pass


class CycleError(PosetError):
    """The generated order is not antisymmetric."""


class UnknownElementError(PosetError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class LengthMismatchError(ApproxFormsError, ValueError):
    pass


class AlgebraError(ApproxFormsError, ValueError):
    pass


class SubsetExplosionError(AlgebraError):
    pass


class ArityMismatchError(AlgebraError):
    pass


class NotDualIsomorphismError(AlgebraError):
    pass


class DecompositionError(ApproxFormsError):
    pass


class AxiomPreconditionError(DecompositionError):
    pass


class NoGreatestElementError(DecompositionError):
    pass


class WitnessNotFoundError(DecompositionError):
    pass


class TooManyComponentsError(DecompositionError):
    pass


class DomainError(ApproxFormsError, ValueError):
    """A real argument lies outside the unit interval."""


class InvalidCharacteristicError(ApproxFormsError, ValueError):
    pass


class InfeasibleMarginalsError(ApproxFormsError, ValueError):
    pass


class InputError(ApproxFormsError):
    """Malformed command-line input; maps to exit code 2."""


class ParseError(InputError):
    def __init__(self, message, source=None, line=None, column=None):
        self.source = source
        self.line = line
        self.column = column
        where = ""
        if source is not None:
            where = f"{source}"
            if line is not None:
                where += f":{line}:{column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(InputError):
    pass
