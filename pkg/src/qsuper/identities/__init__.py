"""Weak equality, proposition builders, F_mu and the invertibility pipeline."""

from .weak import (VarPair, HFactor, WeakIdentity, Sym, Num, weak_symmetrize, weak_equal,
                   numeric_symmetrized, spot_check)
from .props import (PROPS, Instance, instances, check_prop, check_instance, admissible,
                    all_instances, grid, D_mu)
from .fmu import IntegralCoeffs, fmu_terms, build_F_mu, check_F_mu
from .invert import charge_mismatch, invertibility_eval, specialize, prefactor

__all__ = [
    "VarPair", "HFactor", "WeakIdentity", "Sym", "Num", "weak_symmetrize", "weak_equal",
    "numeric_symmetrized", "spot_check", "PROPS", "Instance", "instances", "check_prop",
    "check_instance", "admissible", "all_instances", "grid", "D_mu",
    "IntegralCoeffs", "fmu_terms", "build_F_mu", "check_F_mu",
    "charge_mismatch", "invertibility_eval", "specialize", "prefactor",
]
