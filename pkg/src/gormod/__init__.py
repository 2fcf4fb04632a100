"""Exact computations with divisor class groups, cyclic covers, and
finite-dimensional graded algebras."""

from .cones import AffineMonoid, WeilDivisor, from_ring_spec
from .divisors import (ModuleClass, det_class, tensor_det, hom_det, nakayama,
                       is_q_gorenstein, gm_criterion, gm_exists,
                       ar_duality_check, end_selfdual_torsion, lift_to_cover,
                       restrict_from_cover, module_class)
from .cover import (GradedCover, CoverElement, build_cover, multiply,
                    check_cocycle, check_strong_grading, cover_as_monoid,
                    is_gorenstein_cover, q_change_iso, hom_S_Si_check,
                    find_monoid_isomorphism)
# The depth function itself stays namespaced (gormod.depth.depth) so the
# submodule attribute is not shadowed.
from .depth import FaceLattice, face_lattice, chambers, is_cm, gorenstein
from .findim import (FinDimGradedAlgebra, FinDimModule, validate, radical,
                     gl_dim, inj_dim_self, verify_homological_transfer,
                     algebra_from_spec)
from .smash import (SmashAlgebra, smash_product, diagonal_embed,
                    average_split, push_down, graded_end, skew_group_ring,
                    endR_S_iso_check)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
