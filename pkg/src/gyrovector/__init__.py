"""Einstein gyrovector spaces.

Einstein addition and gyrations on the open ball of radius ``s``, Einstein
scalar multiplication, gyrolines and gyromidpoints, gyromotions, Lorentz
boosts with the resultant invariant mass of particle systems, and
gyrobarycentric coordinates.
"""

from .ball import (
    SignedGamma,
    SpaceContext,
    ambient_vector,
    ball_point,
    einstein_add,
    einstein_sub,
    gamma,
    gamma_of_sum,
    gamma_signed,
    scalar_norm_add,
)
from .barycentric import (
    GyrobarycentricRep,
    canonical_weights,
    classify,
    eval_euclidean,
    eval_gyro,
    rep_constant_sq,
    solve_euclidean,
    solve_gyro,
    transform_rep,
)
from .errors import *  # noqa: F401,F403
from .gyration import LawReport, check_gyrogroup_axioms, gyr_apply, gyr_matrix
from .motions import (
    EuclideanMotion,
    GyroMotion,
    apply_euclidean,
    apply_gyromotion,
    check_gyrocovariance,
    compose_euclidean,
    compose_gyromotions,
    decompose_gyroisometry,
    inverse_euclidean,
    inverse_gyromotion,
    left_gyrotranslate,
)
from .relativity import (
    FourVector,
    Particle,
    SystemResult,
    boost_apply,
    boost_matrix,
    four_momentum,
    four_velocity,
    galilei_boost,
    minkowski_norm_sq,
    newtonian_resultant,
    resultant_invariant_mass,
)
from .space import (
    BoundaryPair,
    Gyroline,
    boundary_points,
    check_gyrovector_axioms,
    einstein_half,
    gyrodistance,
    gyromidpoint,
    gyroline_point,
    scalar_mul,
)

__version__ = "0.1.0"
