"""spinclosure: can a macroscopic field generate a generalized spin's dynamics?

Numerical laboratory deciding, for each Bloch-ball dimension d, whether an
invariant pairwise interaction with a coherent macroscopic field closes the
spin's transformation group, plus the supporting dynamics: the d=3
composite system with its quantum / mirror split, the exact quantum
mean-field limit, and tensor-field-generated flows in d = 4, 5.
"""

from .closure import (ClosureVerdict, MembershipReport, algebra_membership, closure_verdict,
                      field_generator, stabilizer_commutant_check, stabilizer_subalgebra)
from .coherent import (CoherentSpec, CoherentStatistics, coarse_grain, coherent_outcome_distribution,
                       coherent_overlap)
from .dynamics import (D3Trajectory, MeanFieldResult, PairwiseInteraction, TensorField,
                       classify_solution, d4_coherent_field, d4_three_body_generator,
                       density_matrix, evolve_bloch, heisenberg_consistency_check,
                       integrate_bloch, integrate_composite_d3, mean_field_reduction,
                       positivity_scan, tensor_field_generator, trajectory_positivity_minimum)
from .groups import (GroupSpec, LieAlgebraBasis, g2_algebra_basis, g2_generator, group_by_name,
                     matrix_exp, minimal_transitive_group, random_group_element, so_algebra_basis,
                     su3_real_algebra_basis, su_real_algebra_basis, su_real_embedding,
                     symplectic_form)
from .invariants import (IndeterminateNullSpace, InvariantTensor, SolutionSpace,
                         commutant_dimension, invariance_operator, invariant_tensors,
                         levi_civita, octonion_structure_tensor, trivial_multiplicity,
                         verify_invariance)
from .qlimit import (ErrorScalingReport, FidelityResult, SectorHamiltonian,
                     brute_force_crosscheck, error_scaling_sweep, exact_fidelity,
                     rotated_frame_check, sector_hamiltonian)
from .states import (BlochVector, CompositeState, born_probability, composite_probability,
                     product_state)

__version__ = "0.1.0"

__all__ = [
    "BlochVector", "CompositeState", "born_probability", "composite_probability",
    "product_state",
    "CoherentSpec", "CoherentStatistics", "coherent_overlap", "coherent_outcome_distribution",
    "coarse_grain",
    "GroupSpec", "LieAlgebraBasis", "so_algebra_basis", "g2_generator", "g2_algebra_basis",
    "su_real_embedding", "su3_real_algebra_basis", "su_real_algebra_basis", "symplectic_form",
    "minimal_transitive_group", "group_by_name", "matrix_exp", "random_group_element",
    "InvariantTensor", "SolutionSpace", "IndeterminateNullSpace", "invariance_operator",
    "invariant_tensors", "trivial_multiplicity", "commutant_dimension", "verify_invariance",
    "levi_civita", "octonion_structure_tensor",
    "MembershipReport", "ClosureVerdict", "algebra_membership", "field_generator",
    "stabilizer_subalgebra", "stabilizer_commutant_check", "closure_verdict",
    "PairwiseInteraction", "MeanFieldResult", "D3Trajectory", "TensorField",
    "evolve_bloch", "mean_field_reduction", "integrate_composite_d3", "positivity_scan",
    "trajectory_positivity_minimum", "classify_solution", "density_matrix",
    "heisenberg_consistency_check", "d4_three_body_generator", "d4_coherent_field",
    "tensor_field_generator", "integrate_bloch",
    "SectorHamiltonian", "FidelityResult", "ErrorScalingReport", "sector_hamiltonian",
    "exact_fidelity", "error_scaling_sweep", "brute_force_crosscheck", "rotated_frame_check",
    "__version__",
]
