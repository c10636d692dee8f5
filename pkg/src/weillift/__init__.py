"""weillift: exact symbolic lifts of tensor and Poisson structures from a
coordinate patch to the bundle patch of a finite-dimensional algebra, with a
verification suite that checks every lift law as an exact polynomial identity.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    FrobeniusStructure,
    WeilAlgebra,
    attach_frobenius,
    basis_product_coeffs,
    build_from_constants,
    build_plural,
    multiply,
    star_multiply,
)
from .lifts import (
    ATensorField,
    LiftedTensorField,
    a_lift,
    base_pullback,
    complete_lift,
    epsilon_lift,
    lambda_lift,
    prolong_tensor,
    realize,
    vertical_lift,
)
from .poisson import (
    JacobiFailure,
    LogDensity,
    ModularReport,
    PoissonStructure,
    calibration_constants,
    form_bracket,
    hamiltonian,
    jacobi_check,
    lichnerowicz,
    lift_density,
    lift_poisson,
    modular_field,
    poisson_bracket,
    sharp,
    verify_modular_theorem,
)
from .poly import Polynomial
from .prolong import (
    AFunction,
    ChartMap,
    a_derivative,
    check_scheffers,
    prolong_chart_map,
    prolong_scalar,
    prolong_scalar_taylor,
)
from .specfile import SpecDocument, parse_spec
from .tensors import (
    DifferentialForm,
    MixedTensorField,
    MultiVectorField,
    exterior_d,
    interior,
    lie_derive,
    pullback,
    pushforward,
    schouten,
    tensor_product,
    wedge,
)
