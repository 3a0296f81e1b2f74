"""E-polynomials of surface-group representation varieties, computed by
exact transfer-matrix evaluation over arbitrary finite groups and over
the affine group of the complex line, with brute-force oracles for
cross-checking."""

from .poly import (
    LaurentPoly,
    NonExactDivision,
    PolyParseError,
    ZeroBase,
    parse_poly,
    ONE,
    Q,
    U,
    V,
    ZERO,
)
from .motivic import (
    DEFAULT_REGISTRY,
    StratumRegistry,
    UnknownStratum,
    disjoint_union,
    fibration,
    standard_class,
)
from .tqft import (
    GENUS_TUBE,
    IDENTITY_TUBE,
    InvalidDatum,
    SurfaceSpec,
    TqftDatum,
    TubeGenerator,
    TubeWord,
    UnknownPunctureLabel,
    assemble_word,
    datum_from_json_dict,
    datum_to_json_dict,
    epoly_from_word,
    epoly_rep_variety,
    evaluate_raw,
    insert_identity_tubes,
    load_datum,
    puncture_tube,
    save_datum,
)
from .finite_group import (
    BudgetExceeded,
    ConjugacyClasses,
    FiniteGroup,
    GroupTooLarge,
    NotAGroup,
    NotConjugationClosed,
    brute_force_count,
    class_reduce,
    conjugacy_classes,
    conjugacy_closure,
    from_cayley_table,
    from_permutation_generators,
    genus_matrix,
    group_from_json_dict,
    group_to_json_dict,
    load_group,
    named_group,
    puncture_matrix,
    to_tqft_datum,
    tube_matrix_P,
)
from .affc import affc_closed_form, affc_datum, xk_epoly

__version__ = "0.1.0"
