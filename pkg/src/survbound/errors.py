# Author: Hauxu Yu

# A module to define the exceptions raised by survbound
# Input errors exit the command line with code 2, computation errors with code 3


class SurvBoundError(Exception):
    """
    Base class of all survbound errors.
    """

    exit_code = 3


class InputError(SurvBoundError, ValueError):
    """
    The input (configuration, spec file, distribution or argument) is invalid.
    """

    exit_code = 2


class ComputationError(SurvBoundError, ArithmeticError):
    """
    A numerical computation could not be completed.
    """

    exit_code = 3


class InvalidConfig(InputError):
    pass


class SpecFileError(InputError):
    """
    A distribution spec file is missing, unreadable or lacks a field.

    Parameters
    ----------
    message: str
        Description of the problem.
    field: str
        Name of the offending field, if any.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class InvalidDistribution(InputError):
    pass


class NonNormalizable(InputError):
    """
    Total weight of a distribution is zero, infinite or NaN.
    """

    def __init__(self, weight):
        super().__init__("Distribution cannot be normalized, total weight = {}".format(weight))
        self.weight = weight


class NegativeDensity(InputError):
    def __init__(self, energy, value):
        super().__init__("Negative density {} at E = {}".format(value, energy))
        self.energy = energy
        self.value = value


class CutoffOutOfSupport(InputError):
    def __init__(self, cutoff, lower, upper):
        super().__init__("Cut-off c = {} outside the support ({}, {}]".format(cutoff, lower, upper))
        self.cutoff = cutoff
        self.lower = lower
        self.upper = upper


class OrderTooLarge(InputError):
    def __init__(self, order, max_order):
        super().__init__("Order {} exceeds the maximum supported order {}".format(order, max_order))
        self.order = order
        self.max_order = max_order


class InsufficientOrder(InputError):
    def __init__(self, requested, available):
        super().__init__("Order {} requested but moments only available through order {}".format(requested, available))
        self.requested = requested
        self.available = available


class UnknownFigure(InputError):
    def __init__(self, name, known):
        super().__init__("Unknown figure '{}', expected one of: {}".format(name, ", ".join(known)))
        self.name = name


class MomentDivergent(ComputationError):
    """
    The energy moment of order k (and all higher ones) does not exist.

    Parameters
    ----------
    k: int
        Lowest divergent order.
    partial: MomentVector
        The moments of orders 0..k-1, which do exist.
    """

    def __init__(self, k, partial=None):
        super().__init__("Energy moment of order {} diverges".format(k))
        self.k = k
        self.partial = partial


class NonPositiveCorrelationMoment(ComputationError):
    def __init__(self, k, value):
        super().__init__("Correlation moment of order {} is not positive ({:.3e}); input moments are inconsistent".format(k, value))
        self.k = k
        self.value = value


class NonPositiveEdgeMoment(ComputationError):
    def __init__(self, k, value):
        super().__init__("Edge moment of order {} is not positive ({:.3e})".format(k, value))
        self.k = k
        self.value = value


class QuadratureFailure(ComputationError):
    """
    An adaptive quadrature did not reach the requested tolerance.
    """

    def __init__(self, achieved, requested, detail=""):
        message = "Quadrature reached error {:.3e}, requested {:.3e}".format(achieved, requested)
        if detail:
            message += ": " + detail
        super().__init__(message)
        self.achieved = achieved
        self.requested = requested


class DegenerateEdge(ComputationError):
    pass


class RootMismatch(ComputationError):
    def __init__(self, closed_form, numeric):
        super().__init__("Closed-form root {} does not match numeric root {}".format(closed_form, numeric))
        self.closed_form = closed_form
        self.numeric = numeric


class NoPositiveRoot(ComputationError):
    pass


class EmptyEnvelope(ComputationError):
    pass


class UnsupportedDistribution(ComputationError):
    pass
