"""Finite near-domains and near-fields, executable.

Model construction and axiom verification, the sharply 2-transitive
permutation action on either side of the affine correspondence, exhaustive
search for all structures of a small order, and a checker for equational
derivation scripts.
"""

from .construct import dickson_near_field, galois_field
from .errors import (
    AxiomError,
    ConstructionError,
    ContractError,
    GroupFormatError,
    NearDomainError,
    TableFormatError,
)
from .permaction import (
    PermGroup,
    SubgroupInfo,
    affine_group,
    coordinatize,
    find_isomorphism,
    involution_translation_analysis,
    is_sharply_2_transitive,
    iso_near_domain,
    permutation_characteristic,
    point_stabilizer,
    split_check,
    subgroups_avoiding,
)
from .search import (
    SearchResult,
    canonical_form,
    enumerate_near_domains,
    verify_all_near_fields,
)
from .tables import (
    AxiomReport,
    IdentityReport,
    NearDomainTable,
    characteristic,
    check_near_domain,
    compute_d,
    compute_e,
    d_identity_suite,
    d_via_quotient,
    format_table,
    is_near_domain,
    is_near_field,
    load_table,
    make_table,
    negatives,
    parse_table,
    save_table,
)
from .verify import (
    Verdict,
    check_derivation,
    check_script,
    ground_check,
    parse_derivation,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomError",
    "AxiomReport",
    "ConstructionError",
    "ContractError",
    "GroupFormatError",
    "IdentityReport",
    "NearDomainError",
    "NearDomainTable",
    "PermGroup",
    "SearchResult",
    "SubgroupInfo",
    "TableFormatError",
    "Verdict",
    "affine_group",
    "canonical_form",
    "characteristic",
    "check_derivation",
    "check_near_domain",
    "check_script",
    "compute_d",
    "compute_e",
    "coordinatize",
    "d_identity_suite",
    "d_via_quotient",
    "dickson_near_field",
    "enumerate_near_domains",
    "find_isomorphism",
    "format_table",
    "galois_field",
    "ground_check",
    "involution_translation_analysis",
    "is_near_domain",
    "is_near_field",
    "is_sharply_2_transitive",
    "iso_near_domain",
    "load_table",
    "make_table",
    "negatives",
    "parse_derivation",
    "parse_table",
    "permutation_characteristic",
    "point_stabilizer",
    "save_table",
    "split_check",
    "subgroups_avoiding",
    "verify_all_near_fields",
]
