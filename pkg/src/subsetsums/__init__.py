"""Exact subset-sum counting over finite abelian groups."""
from ._kernels import BACKEND
from .group import (
    Element,
    GroupError,
    GroupSpec,
    abelian_groups,
    add,
    element_from_index,
    element_to_index,
    make_group,
    neg,
    parse_group,
    scalar_mul,
    total_sum,
)
from .counting import (
    CountTable,
    ExactnessError,
    LimitExceeded,
    count_brute_force,
    count_dp,
    count_via_recurrence,
    f_via_eq3,
    f_via_lemma,
    g_recurrence_holds,
    g_terminal,
    g_value,
)

__version__ = "0.1.0"
