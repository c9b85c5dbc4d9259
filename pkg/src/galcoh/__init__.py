"""Computational workbench for finite group cohomology and its applications
to quadratic forms and hermitian forms over the reals and the p-adics."""

__version__ = "0.1.0"

from .groups import (
    FiniteGroup, GroupError, GroupHom, all_homs, abelian_coords_to_id,
    abelian_id_to_coords, conjugate_relabeling, fingerprint_small_group,
    identity_hom, make_abelian, make_cyclic, make_direct_product, make_hom,
    make_semidirect, trivial_hom,
)
from .gmodules import (
    GModule, ModuleError, ModuleHom, gamma_real, make_module, mu_m_real,
    pullback_module, trivial_module,
)
from .cohomology import (
    Cochain, CohomologyClass, CohomologyError, CohomologyGroup,
    KunnethElement, ResourceLimitError, coboundary, change_coefficients,
    cohomology_group, cup_product, kunneth_basis, normalize_cocycle,
    pullback_class, reduce_class,
)
from .extensions import (
    Extension, ExtensionError, cocycle_of_extension, d8_class, d8_extension,
    d8_group, extension_from_cocycle, is_split,
)
from .real_galois import (
    ConditionInput, ConditionPlace, GaussianRational, HermitianForm,
    RealGaloisError, SignSequence, Signature, check_condition_double_star,
    check_condition_star, delta_image, h1_real_torsion, hermitian_signature,
    is_subgroup, j_form, sign_sequence_coordinates,
    sign_sequence_from_coordinates, su_class_of_cocycle,
)
from .pairing import (
    ComponentReport, EvaluationTable, PairingError, PairingReport, Pi1Real,
    Section, alpha_class_T2, alpha_context, coefficient_doubling_report,
    evaluate, evaluation_table, is_left_linear, kunneth_pairing_analysis,
    pi1_real, value_fraction,
)
from .local_symbols import (
    InvariantSum, LocalError, Place, TernaryForm, hilbert_symbol,
    hilbert_symbol_search_oracle, invariant_sum, is_norm_from_gaussian,
    is_square_local, ternary_isotropic,
)
from .verify import VerificationReport, VerifyError, run_checks
