"""Player strategies: greedy minimum-degree, matching builder, path builder."""

from .common import StepOutcome
from .mindeg import (
    MIN_DEGREE_STRATEGIES,
    MinDegreeTrace,
    TwoPhaseTrace,
    case_probabilities_mindeg,
    greedy_ham_path,
    greedy_pm_large_k,
    max_degree_circle_step,
    mindeg_expected_changes,
    mindeg_step,
    run_min_degree,
    select_square_index,
    two_phase_mindeg,
    uniform_circle_step,
)
from .matching import (
    M_GREEN,
    M_RED,
    M_UNCOL,
    PMState,
    PMTrace,
    UNSAT,
    classify_pm,
    pm_case_probabilities,
    pm_completion,
    pm_expected_changes,
    pm_run,
    pm_step,
    verify_perfect_matching,
)
from .hamilton import (
    GREEN,
    HamState,
    HamTrace,
    OFF_MATCHED,
    OFF_UNSAT,
    PERMISSIBLE,
    RED,
    USELESS,
    classify_ham,
    ham_case_probabilities,
    ham_completion,
    ham_expected_changes,
    ham_run,
    ham_step,
    verify_hamiltonian_cycle,
)

__all__ = [
    "StepOutcome",
    "MIN_DEGREE_STRATEGIES",
    "MinDegreeTrace",
    "TwoPhaseTrace",
    "case_probabilities_mindeg",
    "greedy_ham_path",
    "greedy_pm_large_k",
    "max_degree_circle_step",
    "mindeg_expected_changes",
    "mindeg_step",
    "run_min_degree",
    "select_square_index",
    "two_phase_mindeg",
    "uniform_circle_step",
    "PMState",
    "PMTrace",
    "UNSAT",
    "M_UNCOL",
    "M_RED",
    "M_GREEN",
    "classify_pm",
    "pm_case_probabilities",
    "pm_completion",
    "pm_expected_changes",
    "pm_run",
    "pm_step",
    "verify_perfect_matching",
    "HamState",
    "HamTrace",
    "OFF_UNSAT",
    "OFF_MATCHED",
    "RED",
    "GREEN",
    "USELESS",
    "PERMISSIBLE",
    "classify_ham",
    "ham_case_probabilities",
    "ham_completion",
    "ham_expected_changes",
    "ham_run",
    "ham_step",
    "verify_hamiltonian_cycle",
]
