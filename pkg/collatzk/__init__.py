"""collatzk: the generalized Collatz map 3n+3^k, its closed forms and range verification.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
from collatzk.analysis import (
    classical_stopping_time,
    classify_cycle_entry,
    figure_dataset,
    group_by_stopping_time,
    odd_count_conflicts,
    odd_term_count,
    total_stopping_time,
)
from collatzk.check import CrossCheck, run_cross_check
from collatzk.dyadic import DyadicRational
from collatzk.dynamics import (
    default_budget,
    detect_cycle,
    fold_trajectory,
    parity_profile,
    step,
    three_adic_valuation,
    trajectory,
)
from collatzk.enum import CheckFlags, CycleTag, ExitCode, OutputFormat, TrajectoryStatus
from collatzk.formula import (
    epsilon,
    epsilon_sum,
    eval_term_formula,
    k0_term_formula,
    same_time_partner,
    total_stopping_time_formula,
)
from collatzk.models import (
    AnalysisRow,
    CycleReport,
    EpsilonFlag,
    OddEvenProfile,
    Params,
    SweepConfig,
    Trajectory,
    VerificationReport,
)
from collatzk.verifier import run_sweep, spot_check_large, verify_chunk

__all__ = [
    "AnalysisRow",
    "CheckFlags",
    "CrossCheck",
    "CycleReport",
    "CycleTag",
    "DyadicRational",
    "EpsilonFlag",
    "ExitCode",
    "OddEvenProfile",
    "OutputFormat",
    "Params",
    "SweepConfig",
    "Trajectory",
    "TrajectoryStatus",
    "VerificationReport",
    "classical_stopping_time",
    "classify_cycle_entry",
    "default_budget",
    "detect_cycle",
    "epsilon",
    "epsilon_sum",
    "eval_term_formula",
    "figure_dataset",
    "fold_trajectory",
    "group_by_stopping_time",
    "k0_term_formula",
    "odd_count_conflicts",
    "odd_term_count",
    "parity_profile",
    "run_cross_check",
    "run_sweep",
    "same_time_partner",
    "spot_check_large",
    "step",
    "three_adic_valuation",
    "total_stopping_time",
    "total_stopping_time_formula",
    "trajectory",
    "verify_chunk",
]
