"""Averaged entropy functions and their Reed-Solomon extreme rays."""

from .dist import (EntropyVector, JointDistribution, dist_entropy, dist_marginal,
                   dist_product, dist_uniform_code, entropy_vector, random_distribution)
from .geometry import (AverageVector, DiffVector, ShannonReport, average_map, decompose,
                       lambda_membership, phi_membership, second_diff, second_diff_inv,
                       shannon_check_elemental, shannon_check_full, unit_ray)
from .gf2m import FieldSpec, f_add, f_inv, f_mul, field_make
from .harness import achieve, extreme_ray_distribution, verify_ray, verify_theorem
from .rs_code import RSCode, rs_encode, rs_enumerate, rs_make, rs_mds_check

__version__ = "0.1.0"
