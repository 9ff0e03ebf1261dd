"""Sublinear expectations over finite scenario sets, the G-heat equation,
and an empirical convergence harness for the robust central limit theorem
with mean uncertainty."""

from .clt import (
    ConditionReport,
    ConvergenceReport,
    SequenceModel,
    build_iid_family,
    build_perturbed_family,
    check_conditions,
    cross_space_check,
    run_clt,
)
from .errors import NumericsError, ValidationError
from .functions import TestFunction, named_function
from .gfunction import GParams, beta, g_eval, verify_g_properties
from .heat import (
    SolverConfig,
    ValueFunction,
    cfl_limit,
    classical_oracle,
    semigroup_check,
    solve,
    stable_dt,
    value_at,
)
from .nested import NestedEvalConfig, bruteforce_nested, count_policies, nested_expect
from .scenarios import (
    DiscreteDistribution,
    ScenarioSet,
    expect,
    holder_check,
    identically_distributed,
    lower_expect,
    verify_axioms,
)

__all__ = [
    "ConditionReport",
    "ConvergenceReport",
    "DiscreteDistribution",
    "GParams",
    "NestedEvalConfig",
    "NumericsError",
    "ScenarioSet",
    "SequenceModel",
    "SolverConfig",
    "TestFunction",
    "ValidationError",
    "ValueFunction",
    "beta",
    "bruteforce_nested",
    "build_iid_family",
    "build_perturbed_family",
    "cfl_limit",
    "check_conditions",
    "classical_oracle",
    "count_policies",
    "cross_space_check",
    "expect",
    "g_eval",
    "holder_check",
    "identically_distributed",
    "lower_expect",
    "named_function",
    "nested_expect",
    "run_clt",
    "semigroup_check",
    "solve",
    "stable_dt",
    "value_at",
    "verify_axioms",
    "verify_g_properties",
]

__version__ = "0.1.0"
