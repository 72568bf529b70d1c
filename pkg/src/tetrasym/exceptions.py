"""Exception hierarchy for tetrasym."""


class TetrasymError(Exception):
    """Base class of every error raised by this package."""


class EmptyInput(TetrasymError):
    pass


class ShapeMismatch(TetrasymError):
    pass


class ParseError(TetrasymError):
    pass


class InvalidIrrep(TetrasymError):
    def __init__(self, label, element, reason=""):
        self.label = label
        self.element = element
        super().__init__(f"irrep {label!r} fails at group element {element}: {reason}")


class InvalidCocycle(TetrasymError):
    pass


class CoherenceViolation(TetrasymError):
    def __init__(self, identity, labels, residual):
        self.identity = identity
        self.labels = labels
        self.residual = residual
        super().__init__(f"{identity} identity violated at {labels}: residual {residual:.3e}")


class NoInvariantVector(TetrasymError):
    pass


class GaugeInconsistency(TetrasymError):
    pass


class NotRelated(TetrasymError):
    pass


class WrongBackend(TetrasymError):
    pass


class NotIndicatorValued(TetrasymError):
    pass


class NotSelfConjugate(TetrasymError):
    pass


class SelectionViolation(TetrasymError):
    def __init__(self, pattern, labels, dim):
        self.pattern = pattern
        self.labels = labels
        super().__init__(f"selection rule {pattern} violated at {labels}: fusion coefficient {dim}")


class NotCase2(TetrasymError):
    pass


class OmegaTrivial(TetrasymError):
    pass
