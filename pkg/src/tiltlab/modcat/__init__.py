"""The module category of a finite-dimensional algebra, as quiver representations."""

from .decompose import (
    DEFAULT_SEED,
    NonSplitEndomorphism,
    Summand,
    decompose,
    end_basis,
    end_radical,
    Piece,
    indecomposables_isomorphic,
    split_with_maps,
    in_add,
    is_indecomposable,
    is_isomorphic,
    signature,
)
from .homological import (
    Ext1Result,
    InjectivePresentation,
    NotInDomain,
    ProjectiveCover,
    ProjectivePresentation,
    annihilator,
    ar_translate,
    ext1,
    gen_cog_membership,
    inflate_from_factor,
    is_injective,
    is_projective,
    minimal_presentation,
    nakayama,
    projective_cover,
    reject_submodule,
    restrict_to_factor,
    trace_submodule,
)
from .representation import (
    CanonicalModules,
    CategoryError,
    KernelCokernel,
    ProjMap,
    Representation,
    RepMap,
    canonical_modules,
    direct_sum,
    dual,
    hom_space,
    identity_map,
    injective,
    kernel_cokernel,
    linear_combination,
    map_from_generators,
    nakayama_inverse_map,
    nakayama_map,
    proj_hom_basis,
    projective,
    quotient_representation,
    realize_projective,
    simple,
    socle_dims,
    subrepresentation,
    sum_injections,
    top_dims,
    zero_map,
    zero_representation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
