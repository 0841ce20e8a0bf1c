"""Exact computation of twisted Schur multipliers, representation groups,
semi-projective monomial representations, and semilinear matrix geometry.

The engine works over exact arithmetic throughout: cohomology classes live
in integer lattices handled by sparse Smith normal forms, scalars are roots
of unity tracked by exponents, and the geometry layer uses cyclotomic
numbers with rational coefficients.  Groups act on coefficients through a
sign character phi (complex conjugation on C*), and all classical (trivial
phi) results are the special case phi = 1.
"""

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (InputError, PreconditionError, ResourceError,
                     TwistedSchurError)
from .groups import (FiniteGroup, GroupFingerprint, cyclic_group,
                     dihedral_group, direct_product, fingerprint,
                     from_permutation_generators,
                     generalized_quaternion_group, heisenberg27_group,
                     identify_group, is_isomorphic, metacyclic_group,
                     semidihedral_group, standard_group)
from .gmodules import (DualCharacter, TwistedModule, dual_characters,
                       epsilon_of, finite_module, is_equivariant_character,
                       mu_module, sign_module)
from .cohomology import (CocycleTable, CohomologyGroup, bockstein_class,
                         cohomology_group, h2_class_representatives,
                         solve_coboundary, twisted_multiplier)
from .extensions import (ExtensionData, build_extension,
                         enumerate_module_structures, is_stem, transgression)
from .repgroups import (CriterionReport, RepGroupResult, satisfies_criterion,
                        twisted_representation_groups)
from .semiprojective import (LiftResult, MonomialSemilinearMap,
                             SemiProjectiveRep, extract_cocycle,
                             lift_over_extension, regular_semiprojective_rep,
                             rep_from_dict, rep_to_dict,
                             verify_semiprojective)
from .cyclotomic import (CyclotomicField, CyclotomicNumber,
                         cyclotomic_field, cyclotomic_polynomial)
from .geometry import (ComplexLattice, ScalarStabilizer, SemilinearMatrix,
                       heisenberg_demo, heisenberg_generators,
                       lattice_scalar_stabilizer, preserves_lattice,
                       schroedinger_matrices, semilinear_group_closure)
from .formats import (SCHEMA, attach_schema, cocycle_from_dict,
                      cocycle_to_dict, dump_json, extension_from_dict,
                      extension_to_dict, group_from_dict, group_to_dict,
                      load_json_file, module_from_spec, module_to_spec,
                      repgroup_result_to_dict)
from .selftest import run_selftest

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG", "RunConfig",
    "TwistedSchurError", "InputError", "ResourceError", "PreconditionError",
    "FiniteGroup", "GroupFingerprint", "cyclic_group", "dihedral_group",
    "direct_product", "fingerprint", "from_permutation_generators",
    "generalized_quaternion_group", "heisenberg27_group", "identify_group",
    "is_isomorphic", "metacyclic_group", "semidihedral_group",
    "standard_group",
    "TwistedModule", "DualCharacter", "dual_characters", "epsilon_of",
    "finite_module", "is_equivariant_character", "mu_module", "sign_module",
    "CocycleTable", "CohomologyGroup", "bockstein_class", "cohomology_group",
    "h2_class_representatives", "solve_coboundary", "twisted_multiplier",
    "ExtensionData", "build_extension", "enumerate_module_structures",
    "is_equivariant_character", "is_stem", "transgression",
    "CriterionReport", "RepGroupResult", "satisfies_criterion",
    "twisted_representation_groups",
    "LiftResult", "MonomialSemilinearMap", "SemiProjectiveRep",
    "extract_cocycle", "lift_over_extension", "regular_semiprojective_rep",
    "rep_from_dict", "rep_to_dict", "verify_semiprojective",
    "CyclotomicField", "CyclotomicNumber", "cyclotomic_field",
    "cyclotomic_polynomial",
    "ComplexLattice", "ScalarStabilizer", "SemilinearMatrix",
    "heisenberg_demo", "heisenberg_generators", "lattice_scalar_stabilizer",
    "preserves_lattice", "schroedinger_matrices", "semilinear_group_closure",
    "SCHEMA", "attach_schema", "cocycle_from_dict", "cocycle_to_dict",
    "dump_json", "extension_from_dict", "extension_to_dict",
    "group_from_dict", "group_to_dict", "load_json_file", "module_from_spec",
    "module_to_spec", "repgroup_result_to_dict",
    "run_selftest",
    "__version__",
]
