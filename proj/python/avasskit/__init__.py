"""Pre*, reachability and well-structuredness analyses for affine counter machines."""

from ._avasskit import (
    BudgetExceeded,
    InputError,
    Machine,
    SemilinearSet,
    build_n1,
    build_n2,
    build_pcp_machine,
    builtin_examples,
    classify,
    control_state_reachable,
    coverable,
    coverable_via_reduction,
    is_functional,
    is_strongly_monotone,
    is_well_structured,
    is_wqo,
    parse_machine,
    post_star,
    prestar,
    reachable,
    reachable_total_positive,
)

__all__ = [name for name in dir() if not name.startswith("_")]
