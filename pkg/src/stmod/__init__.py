"""Exact computations in the stable module category of a finite group over F_p."""

from .ar import ar_class, ar_sequence, strong_ghost_witness
from .cohom import periodicity_witness, tate_dual_of_identity, tate_group, tate_induced
from .ghosts import is_eventual_ghost_window, is_ghost, is_ghost_window, is_strong_ghost
from .groups import CapExceeded, GroupError, Subgroup, named_group, sylow_subgroup
from .reps import Module, ModuleError, ModuleMap, dual, dual_map, induce, induce_map, restrict, restrict_map, standard_module
from .stable import StableContext, cone, is_stably_zero, omega, omega_map, stable_hom, syzygy

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "GroupError",
    "Module",
    "ModuleError",
    "ModuleMap",
    "StableContext",
    "Subgroup",
    "ar_class",
    "ar_sequence",
    "cone",
    "dual",
    "dual_map",
    "induce",
    "induce_map",
    "is_eventual_ghost_window",
    "is_ghost",
    "is_ghost_window",
    "is_stably_zero",
    "is_strong_ghost",
    "named_group",
    "omega",
    "omega_map",
    "periodicity_witness",
    "restrict",
    "restrict_map",
    "stable_hom",
    "standard_module",
    "strong_ghost_witness",
    "sylow_subgroup",
    "syzygy",
    "tate_dual_of_identity",
    "tate_group",
    "tate_induced",
]
