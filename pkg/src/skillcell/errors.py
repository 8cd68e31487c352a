"""Exception types shared across the package."""


class SkillcellError(Exception):
    """Base class for all domain errors."""


class ParseError(SkillcellError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", col {column}" if column is not None else "")
        super().__init__(f"{message}{loc}")


class CyclicHierarchy(SkillcellError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("cyclic concept hierarchy: " + " -> ".join(str(c) for c in self.cycle))


class TypeMismatch(SkillcellError):
    pass


class UnknownPredicate(SkillcellError):
    pass


class UnknownSymbol(SkillcellError):
    pass


class MissingGeometry(SkillcellError):
    pass


class UnknownDescription(SkillcellError):
    pass


class MissingRequired(SkillcellError):
    def __init__(self, keys):
        self.keys = sorted(keys)
        super().__init__("missing required parameters: " + ", ".join(self.keys))


class NoCandidate(SkillcellError):
    pass


class AmbiguousGrounding(SkillcellError):
    def __init__(self, key, candidates):
        self.key = key
        self.candidates = sorted(str(c) for c in candidates)
        super().__init__(f"ambiguous grounding for '{key}': " + ", ".join(self.candidates))


class TickBudgetExceeded(SkillcellError):
    pass


class UntypedParameter(SkillcellError):
    pass


class UnplannableAction(SkillcellError):
    pass


class UnknownGoalSymbol(SkillcellError):
    pass


class NoPlan(SkillcellError):
    pass


class PlanTimeout(SkillcellError):
    pass


class ArityMismatch(SkillcellError):
    pass


class ReferenceDominated(SkillcellError):
    pass


class SingularKernel(SkillcellError):
    pass


class InconsistentSpaces(SkillcellError):
    pass


class DegenerateLabels(UserWarning):
    """Warning: feasibility training data contains a single label."""


class OutOfBounds(SkillcellError):
    pass


class NoFeasibleRegion(SkillcellError):
    pass


class IllegalTransition(SkillcellError):
    pass


class UnknownScenario(SkillcellError):
    pass


class NotOnFront(SkillcellError):
    pass
