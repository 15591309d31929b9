"""Multiparameter braid matrices, their transfer matrices, spectra, spin chains and potentials."""

from ._kernels import BACKEND
from .braid import braid_residual, r_matrix, rhat, unitarity_residual, ybe_residual
from .errors import (
    BraidlabError,
    ConstraintViolation,
    DomainError,
    NumericalError,
    ResourceError,
    SingularityError,
    UnsupportedOperation,
)
from .params import (
    ParamSet,
    count_free_parameters,
    load_params,
    new_param_set,
    params_from_dict,
    params_to_dict,
    random_param_set,
    shift_params,
)
from .projectors import ProjectorLabel, projector, verify_projector_algebra
from .smatrix import PotentialTable, cayley_x, excluded_lambdas, potential
from .spectrum import (
    EigenvalueRecord,
    closed_form_spectrum,
    match_spectra,
    multiplet_census,
    oracle_spectrum,
    orbit_decompose,
)
from .spinchain import conserved_quantity, hamiltonian, rhat_derivative
from .transfer import SparseOperator, transfer_derivative, transfer_matrix

__version__ = "0.1.0"
