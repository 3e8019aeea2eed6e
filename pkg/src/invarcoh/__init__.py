"""invarcoh: exact invariant rings and graded local cohomology of finite matrix groups."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    InvarcohError,
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    OrderNotInvertible,
    RingMismatch,
    NotHomogeneous,
    NotFiniteWithinBound,
    UnsupportedField,
    NotEquivariant,
    NotAComplex,
    NotHomogeneousIdeal,
    NotInvariantIdeal,
    NotStabilized,
    RangeTruncatesModule,
    ValidationError,
    ParseError,
)
from .fields import QQ, PrimeField, RationalField, field_from_json  # noqa: F401
from .polynomials import PolyRing, Polynomial  # noqa: F401
from .groups import (  # noqa: F401
    SquareMatrix,
    FiniteMatrixGroup,
    close_group,
    stock_group,
    act,
    reynolds,
    molien_coefficients,
    is_in_SL,
    FirstOrderOperator,
    act_on_operator,
)
from .invariants import invariant_basis, minimal_generators, hilbert_series  # noqa: F401
from .cech import (  # noqa: F401
    IdealSpec,
    CechLevelSlice,
    CohomologyPiece,
    LCEngine,
    cech_slice,
    lc_piece,
    STABILIZED,
    NOT_STABILIZED,
)
from .oracles import (  # noqa: F401
    OracleReport,
    top_lc_polynomial_oracle,
    hypersurface_A1_oracle,
    inverse_monomial_socle_oracle,
    run_oracle_suite,
)
