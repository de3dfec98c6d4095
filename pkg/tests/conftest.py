import itertools

import pytest

from subsetsums.group import abelian_groups_upto, make_group


def oracle_elements(orders):
    """Residue tuples in canonical order (last coordinate fastest)."""
    return list(itertools.product(*[range(d) for d in orders]))


def oracle_sum(orders, elems):
    acc = [0] * len(orders)
    for e in elems:
        acc = [(u + v) % d for u, v, d in zip(acc, e, orders)]
    return tuple(acc)


def oracle_row(orders, h):
    """f_a(h) for every a, straight from the definition."""
    els = oracle_elements(orders)
    pos = {e: i for i, e in enumerate(els)}
    row = [0] * len(els)
    for subset in itertools.combinations(els, h):
        row[pos[oracle_sum(orders, subset)]] += 1
    return tuple(row)


def oracle_g(orders, h, i, a_idx, x_idx):
    """(h-i)-subsets containing x with sum a - i x, by enumeration."""
    els = oracle_elements(orders)
    a, x = els[a_idx], els[x_idx]
    target = tuple((u - i * v) % d for u, v, d in zip(a, x, orders))
    return sum(1 for s in itertools.combinations(els, h - i)
               if x in s and oracle_sum(orders, s) == target)


SMALL_GROUPS = abelian_groups_upto(12)


@pytest.fixture(params=SMALL_GROUPS, ids=str)
def small_group(request):
    return request.param


@pytest.fixture
def z4():
    return make_group([4])
