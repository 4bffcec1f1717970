"""Koszul-Tate/BV complexes of linear field equations over the rationals.

Build a complex, compute its cohomology block by block, and let
:func:`resolve` add the higher-order antifields that make it acyclic.
"""

from .augmentation import (
    AcyclicityReport,
    AugmentationReport,
    IdentitySet,
    augment_once,
    find_identities,
    resolve,
    verify_acyclic,
)
from .exactlinalg import Matrix, in_span, kernel_basis, left_kernel_basis, rank, rref
from .graded_algebra import (
    Generator,
    GeneratorTable,
    Parity,
    Polynomial,
    enumerate_basis,
    multiply,
    normalize,
)
from .kt_complex import (
    CohomologyRow,
    CohomologyTable,
    Complex,
    apply_delta,
    block_matrix,
    check_nilpotent,
    cohomology,
    cohomology_table,
    euler_check,
    grassmann_number,
)
from .models import (
    ModelSpec,
    build_maxwell,
    build_oscillator,
    build_random_linear,
    build_scalar2d,
    lightlike_transverse,
    maxwell_block,
)

__version__ = "0.1.0"
