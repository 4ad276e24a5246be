"""Double-point interpolation, Terracini secant dimensions and surface degree bounds."""

from .interpolation import (
    DimensionReport,
    InterpolationTask,
    expected_dimension,
    generic_dimension,
    singular_system_basis,
)
from .linalg import DenseMatrix, kernel_basis, rank, rank_modular_with_retry
from .models import (
    PLANE,
    QUADRIC,
    basis,
    chi_riemann_roch,
    evaluation_rows,
    pair,
    product_of_lines,
    projective_space,
)
from .secant import base_curve_certificate, duality_check, secant_dimension

__version__ = "0.1.0"
