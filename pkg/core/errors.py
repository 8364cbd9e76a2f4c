"""
Exception hierarchy. Every domain error is a ValueError so callers that only
know about bad input keep working.
"""


class MorseForgeError(ValueError):
    """Base class for all domain errors raised by the library."""


class EmptyInput(MorseForgeError):
    pass


class DuplicateVertexInFacet(MorseForgeError):
    pass


class DuplicateLabel(MorseForgeError):
    pass


class UnknownVertex(MorseForgeError):
    pass


class UnknownElement(MorseForgeError):
    pass


class BadParameter(MorseForgeError):
    pass


class BadSubset(MorseForgeError):
    pass


class MixedSources(MorseForgeError):
    pass


class NotAMatching(MorseForgeError):
    def __init__(self, element: str):
        super().__init__(f"Pairs share poset element {element!r}; not a matching")
        self.element = element


class NotACover(MorseForgeError):
    def __init__(self, lower: str, upper: str):
        super().__init__(f"{lower} < {upper} is not a cover relation of the poset")
        self.lower = lower
        self.upper = upper


class NoCovers(MorseForgeError):
    pass


class SizeLimit(MorseForgeError):
    pass


class NotDominated(MorseForgeError):
    pass


class NotAGraph(MorseForgeError):
    pass


class ConsistencyError(MorseForgeError):
    pass


class HypothesisViolation(MorseForgeError):
    pass


class ParseError(MorseForgeError):
    pass
