"""Exact Artin and Swan conductors of representations of local Galois and Weil groups."""

from .characters import (Character, ClassFunction, NegativeInfinity, artin_class_function,
                         artin_conductor_sum, check_irreducible_depth_formula, check_twisting,
                         conductor_lower_integral, conductor_upper_integral, depth, fixed_dim,
                         inner_product, is_irreducible, linear_characters, swan_class_function,
                         swan_part, tame_part, tensor)
from .exactnum import Cyclotomic, as_rational, cyclotomic_polynomial, galois_apply
from .groups import FiniteGroup, Subgroup, cyclic, from_table, unit_group_mod
from .ramification import (HerbrandFunction, RamifiedGroup, lower_group, phi, psi,
                           quotient_filtration, upper_breaks, upper_group, upper_to_lower)
from .weildeligne import (MatrixRep, WeilDeligneRep, deligne_conductor, integral_conductor,
                          serre_conductor, tate_424_check, theorem_check)

__version__ = "0.1.0"

__all__ = [
    "Character", "ClassFunction", "NegativeInfinity", "artin_class_function", "artin_conductor_sum",
    "check_irreducible_depth_formula", "check_twisting", "conductor_lower_integral",
    "conductor_upper_integral", "depth", "fixed_dim", "inner_product", "is_irreducible",
    "linear_characters", "swan_class_function", "swan_part", "tame_part", "tensor",
    "Cyclotomic", "as_rational", "cyclotomic_polynomial", "galois_apply",
    "FiniteGroup", "Subgroup", "cyclic", "from_table", "unit_group_mod",
    "HerbrandFunction", "RamifiedGroup", "lower_group", "phi", "psi", "quotient_filtration",
    "upper_breaks", "upper_group", "upper_to_lower",
    "MatrixRep", "WeilDeligneRep", "deligne_conductor", "integral_conductor", "serre_conductor",
    "tate_424_check", "theorem_check",
]
