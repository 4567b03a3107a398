from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from recforge import validate
from recforge.errors import BudgetExceeded
from recforge.independence import (IndependenceQuery, check_independence,
                                   syndetic_independence_probe)
from recforge.words import de_bruijn_prefix, periodic, thue_morse

DB = de_bruijn_prefix(11)


def test_de_bruijn_passes_three_shifts():
    res = check_independence(IndependenceQuery(de_bruijn_prefix(10), ["0", "1"], [0, 3, 7]))
    assert res.independent and res.realized == 8
    assert validate.check_independence(de_bruijn_prefix(10), ["0", "1"], [0, 3, 7], res) == []


def test_periodic_misses_00():
    x = periodic("01", 1000)
    res = check_independence(IndependenceQuery(x, ["0", "1"], [0, 1]))
    assert not res.independent and res.missing == (0, 0)
    assert validate.check_independence(x, ["0", "1"], [0, 1], res) == []


def test_thue_morse_all_two_blocks():
    assert check_independence(IndependenceQuery(thue_morse(2 ** 14), ["0", "1"], [0, 1])).independent


def test_query_validation():
    x = periodic("01", 100)
    with pytest.raises(ValueError):
        IndependenceQuery(x, ["0"], [0])
    with pytest.raises(ValueError):
        IndependenceQuery(x, ["0", "11"], [0])
    with pytest.raises(ValueError):
        IndependenceQuery(x, ["0", "0"], [0])
    with pytest.raises(ValueError):
        IndependenceQuery(x, ["0", "1"], [])
    with pytest.raises(ValueError):
        IndependenceQuery(x, ["0", "1"], range(13))
    with pytest.raises(ValueError):
        IndependenceQuery(x, ["0", "1"], [100])


def test_budget_exceeded_reports_count():
    q = IndependenceQuery(DB, ["0", "1"], range(10))
    with pytest.raises(BudgetExceeded) as err:
        check_independence(q, budget=100)
    assert err.value.needed == 1024


def test_full_shift_completeness_on_de_bruijn():
    # every block of length 11 occurs, so every J inside [0, 10] is an independence set
    for J in [(0,), (2, 9), (0, 5, 10), (1, 4, 6, 10)]:
        res = check_independence(IndependenceQuery(DB, ["0", "1"], J))
        assert res.independent
        assert validate.is_independent(DB, ["0", "1"], J)


def test_probe_periodic_exhaustive_failure():
    rep = syndetic_independence_probe(periodic("01", 1000), ["0", "1"], 2, 2)
    assert rep.found is None and rep.exhausted and rep.complete
    assert rep.examined == rep.candidates == 4


def test_probe_de_bruijn_finds_set():
    rep = syndetic_independence_probe(de_bruijn_prefix(10), ["0", "1"], 5, 3)
    assert rep.found == (0, 1, 2)
    assert check_independence(IndependenceQuery(de_bruijn_prefix(10), ["0", "1"], rep.found)).independent


def test_probe_size_one():
    rep = syndetic_independence_probe(thue_morse(1000), ["0", "1"], 3, 1)
    assert rep.found == (0,)


def test_probe_budget_partial():
    rep = syndetic_independence_probe(periodic("01", 1000), ["0", "1"], 3, 3, budget=2)
    assert rep.found is None and not rep.exhausted and rep.examined == 2


@settings(max_examples=40, deadline=None)
@given(st.text("01", min_size=30, max_size=200), st.sets(st.integers(0, 8), min_size=1, max_size=4))
def test_independence_matches_oracle_and_is_monotone(s, J):
    q = IndependenceQuery(s, ["0", "1"], J)
    res = check_independence(q)
    assert res.independent == validate.is_independent(s, ["0", "1"], J)
    assert validate.check_independence(s, ["0", "1"], J, res) == []
    if res.independent:
        for k in range(1, len(J)):
            for sub in combinations(sorted(J), k):
                assert check_independence(IndependenceQuery(s, ["0", "1"], sub)).independent
