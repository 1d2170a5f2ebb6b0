"""Exact integral forms on supermanifolds: Grassmann kernel, Berezinians, mixed forms and their operators."""

from .errors import (
    ConfigurationError,
    DegreeError,
    DomainError,
    InvalidForm,
    NotInvertible,
    ParityError,
    ShapeError,
    SuperformsError,
)
from .grassmann import EVEN, ODD, GrassmannAlgebra, OddNotInvertible, Supernumber
from .supermatrix import SuperMatrix, berezinian, pairing, sig, sm_inv, sm_mul
from .autodiff import Point, deriv, deriv2, directional
from .forms import (
    DUAL,
    MIXED,
    STRAIGHT,
    Form,
    FormSignature,
    check_homogeneity,
    check_symmetry_pde,
    linear_combination,
    make_dual_ber_form,
    make_mixed_ber_form,
    make_straight_ber_form,
    zero_form,
)
from .operators import (
    FormOperator,
    anticommutator,
    e_alpha_straight,
    e_cov,
    e_vec,
    i_u_straight,
    mutations,
    sigma,
    sigma_alt,
    sigma_inv,
    tau,
    tau_inv,
)
from .manifold import (
    CoordinatePatch,
    CovectorField,
    NaiveForm,
    PatchFunction,
    PatchMatrix,
    VectorField,
    cartan_sides,
    dbar,
    lie_derivative,
    mixed_ber_field,
    module_action,
)
from .sampling import Sampler
from .suites import SuiteConfig, SuiteReport, run_suites

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DegreeError",
    "DomainError",
    "InvalidForm",
    "NotInvertible",
    "ParityError",
    "ShapeError",
    "SuperformsError",
    "EVEN",
    "ODD",
    "GrassmannAlgebra",
    "OddNotInvertible",
    "Supernumber",
    "SuperMatrix",
    "berezinian",
    "pairing",
    "sig",
    "sm_inv",
    "sm_mul",
    "Point",
    "deriv",
    "deriv2",
    "directional",
    "DUAL",
    "MIXED",
    "STRAIGHT",
    "Form",
    "FormSignature",
    "check_homogeneity",
    "check_symmetry_pde",
    "linear_combination",
    "make_dual_ber_form",
    "make_mixed_ber_form",
    "make_straight_ber_form",
    "zero_form",
    "FormOperator",
    "anticommutator",
    "e_alpha_straight",
    "e_cov",
    "e_vec",
    "i_u_straight",
    "mutations",
    "sigma",
    "sigma_alt",
    "sigma_inv",
    "tau",
    "tau_inv",
    "CoordinatePatch",
    "CovectorField",
    "NaiveForm",
    "PatchFunction",
    "PatchMatrix",
    "VectorField",
    "cartan_sides",
    "dbar",
    "lie_derivative",
    "mixed_ber_field",
    "module_action",
    "Sampler",
    "SuiteConfig",
    "SuiteReport",
    "run_suites",
]
