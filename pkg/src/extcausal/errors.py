"""Exception hierarchy shared by every module of the package."""


class ExtCausalError(Exception):
    """Base class for all errors raised by extcausal."""


class ModelError(ExtCausalError):
    pass


class UnknownVariable(ModelError):
    pass


class ValueOutOfRange(ModelError):
    pass


class CyclicModel(ModelError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cyclic dependency: " + " -> ".join(self.cycle))


class SpaceTooLarge(ExtCausalError):
    pass


class EmptyConditioningSet(ExtCausalError):
    pass


class CyclicAtomOrder(ExtCausalError):
    pass


class MissingTableEntry(ExtCausalError):
    pass


class ExogenousParent(ExtCausalError):
    pass


class MissingRootTable(ExtCausalError):
    pass


class CompileError(ExtCausalError):
    """Several compilation problems reported together."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


class CausationError(ExtCausalError):
    pass


class FactualMismatch(CausationError):
    """Condition (a) fails: the cause or the effect does not hold in the actual world."""


class NoWitness(CausationError):
    pass
