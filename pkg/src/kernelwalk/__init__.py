"""Exact kernel structure, limit measures, and observable operators for
random walks on finite transformation semigroups."""

from . import errors
from .observables import (ObservableSet, ProjectionSet, build_observables,
                          friedman_check, identity_suite,
                          level2_relation_table, observables_from_generators,
                          observables_from_measure, projection_identities,
                          projections, split_probability)
from .ratlinalg import (Rational, RationalMatrix, SpectralProjection,
                        abel_limit, abel_numeric, charpoly,
                        fixed_space_dimension, image_basis, invert,
                        kernel_basis, rank, solve, spectral_projection)
from .semigroup import (KernelStructure, Semigroup, element_order, generate,
                        kernel, kernel_from_generators, local_group_table,
                        minimal_rank, order_profile, rees_coordinates,
                        rees_product, rees_structure, sandwich,
                        sandwich_table)
from .tensor2 import (a_tensor, basic_relations, descent_sides, fields_level2,
                      kron, kron_power, mat_of, omega_tensor,
                      omega_tensor_from_measure, trace_identities, vec_of)
from .transforms import (Transformation, apply_word, compose,
                         identity_transformation, idempotent_from,
                         kernel_partition_of, matrix_of, parse_word, range_of,
                         range_state_vector, rank_of)
from .walkmeasure import (LimitMeasure, average_matrix, convolve, haar_check,
                          normalize_weights, walk_limit)
from .zeon import (SubsetIndex, a_level, a2_pair, delta_matrix, f_map,
                   fixed_point_report, g_map, hat, integration_by_parts,
                   kernel_rank_zeon, marginal_descent, omega_level,
                   omega_level_from_measure, permanent, polarization_sides,
                   unhat, zeon_basic_relations, zeon_power,
                   zeon_trace_identities)

__version__ = "0.1.0"
