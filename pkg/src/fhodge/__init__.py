"""Exact-arithmetic toolkit for level <= 1 mixed and formal Hodge structures
and linearly presented 1-motives, with verified realization equivalences."""

from .errors import (
    FHError,
    InternalError,
    MalformedInput,
    NotAlternatingError,
    NotComposable,
    NotConnected,
    NotEtale,
    NotFree,
    NotSpecial,
    ValidationFailure,
)
from .fhs import (
    FHS1Morphism,
    FHS1Object,
    HomSpace,
    Iso,
    canonical_etale,
    canonical_etale_morphism,
    check_exact,
    direct_sum,
    double_dual_compare,
    dual_fhs,
    dual_morphism,
    dual_splitting_iso,
    embed_formal,
    embed_vector,
    etale_part,
    etale_part_morphism,
    factor_through_fhs_cokernel,
    factor_through_fhs_kernel,
    fhs_cokernel,
    fhs_image,
    fhs_kernel,
    fhs_zero,
    hom_group,
    invert_morphism,
    is_isomorphism,
    lift_along_etale,
    linear_to_connected,
    make_iso,
    pi_connected,
    quotient_by_v0,
    seq_around_v0,
    seq_special,
    special_part,
    special_part_embedding,
)
from .mhs import (
    MHS1,
    MHSMorphism,
    check_polarization,
    ihom_tate,
    ihom_tate_morphism,
    mhs_cokernel,
    mhs_kernel,
    mhs_transport,
    mhs_zero,
    tate,
)
from .motives import (
    Motive,
    MotiveMorphism,
    cartier_double_dual,
    cartier_dual,
    cartier_dual_morphism,
    connected_motive,
    connected_part,
    ell_shift_iso,
    etale_motive,
    formal_only,
    hom_motive,
    invert_motive_morphism,
    motive_zero,
    quotient_by_additive,
    seq_formal_quotient,
    seq_special_motive,
    universal_vector_extension,
)
from .realize import (
    arrow,
    arrow_morphism,
    check_exact_motives,
    cokernel_motive,
    kernel_motive,
    naturality_check,
    periods_square,
    roundtrip_fm,
    roundtrip_mf,
    t_formal,
    t_formal_morphism,
    t_hodge,
    t_hodge_morphism,
)
from .scalars import Scalar, parse_scalar, format_scalar, rat

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
