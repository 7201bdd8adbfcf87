"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class GyroError(ValueError):
    code = "domain"


class DimensionMismatch(GyroError):
    code = "dimension"


class OutsideBall(GyroError):
    code = "outside_ball"


class DenominatorVanishes(GyroError):
    code = "denominator"


class CoincidentPoints(GyroError):
    code = "coincident"


class NotAGyroisometry(GyroError):
    code = "not_gyroisometry"


class OppositeGyroisometry(GyroError):
    """The probed map is a gyroisometry whose linear part has det -1.

    The recovered translation and orthogonal part are attached so callers
    can still use them.
    """

    code = "opposite_gyroisometry"

    def __init__(self, message, X=None, R=None):
        super().__init__(message)
        self.X = X
        self.R = R


class DegenerateSystem(GyroError):
    code = "degenerate"


class ZeroWeightSum(GyroError):
    code = "zero_weight_sum"


class ZeroGammaWeightSum(GyroError):
    code = "zero_gamma_weight_sum"


class NotInFlat(GyroError):
    code = "not_in_flat"


class NotInGyroflat(GyroError):
    code = "not_in_gyroflat"


class DependentAnchors(GyroError):
    code = "dependent_anchors"
