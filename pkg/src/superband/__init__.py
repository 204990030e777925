"""Exact Grassmann algebra, supermatrices, band semigroups and Green's relations."""

from .bands import (
    BandElement,
    CayleyTable,
    Kind,
    ParameterGrid,
    associativity_check,
    band_decompose,
    block_isomorphism,
    cayley_table,
    higher_mul,
    irreducibility_witness,
    multiply,
    null_mul,
    rep,
    wreath_mul,
)
from .errors import (
    AlphaMismatchError,
    DegenerateError,
    DimensionError,
    DomainError,
    GradingError,
    InvalidElementError,
    NotClosedError,
    ParityError,
    ParseError,
    RelationError,
    ShapeError,
    SuperbandError,
)
from .expr import evaluate
from .grassmann import (
    AnnihilatorBasis,
    GrassmannElement,
    Parity,
    add,
    alpha_equal,
    annihilator_even,
    body,
    mul,
    parity_of,
    soul,
)
from .green import (
    EggboxDiagram,
    GreensClasses,
    Partition,
    SubsemigroupSpec,
    delta_partition,
    eggbox,
    fine_relation,
    greens_classes,
    j_universal_check,
    join,
    meet,
    psi_map,
    subsemigroup_restriction,
)
from .supermatrix import (
    Supermatrix,
    berezinian,
    is_odd_closed,
    odd_power_closed_form,
    reduce_even,
    reduce_odd,
    smul,
    supertrace,
)

__version__ = "0.1.0"
