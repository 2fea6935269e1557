#!/usr/bin/env python3
"""
Exact and generic rank over QQ and GF(p).
"""

import json

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational

from lyutab.errors import InvalidInput
from lyutab.linalg.exactla import (
    MonomialMatrix,
    ScalarMatrix,
    generic_rank,
    generic_rank_exact,
    generic_rank_randomized,
    rank,
)
from lyutab.linalg.fields import FieldSpec

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def monomial_matrix(rows, k, nvars=2):
    """Dense rows of (coef, exponents) or None."""
    entries = {(r, c): cell for r, row in enumerate(rows) for c, cell in enumerate(row) if cell is not None}
    return MonomialMatrix.build(len(rows), len(rows[0]), nvars, k, entries)


@st.composite
def small_monomial_matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    cell = st.one_of(st.none(), st.tuples(st.integers(min_value=-3, max_value=3), st.tuples(st.integers(0, 2), st.integers(0, 2))))
    grid = draw(st.lists(st.lists(cell, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return monomial_matrix(grid, QQ)


def test_field_spec_validation():
    assert str(QQ) == "QQ" and str(F2) == "GF(2)"
    assert FieldSpec.from_characteristic(0) == QQ
    with pytest.raises(InvalidInput):
        FieldSpec.from_characteristic(4)
    with pytest.raises(InvalidInput):
        FieldSpec.prime(2 ** 31 + 11)


def test_rationals_reduce_mod_p():
    half = QQ.element(Rational(1, 2))
    assert F3.to_int(F3.convert_from(half, QQ)) == 2
    with pytest.raises(InvalidInput):
        F2.convert_from(half, QQ)


def test_scalar_rank_depends_on_characteristic():
    M = ScalarMatrix.from_rows([[1, 2], [3, 4]], QQ)
    assert rank(M) == 2
    assert rank(M, F2) == 1
    assert rank(ScalarMatrix.from_rows([[0, 0], [0, 0]], QQ)) == 0
    assert rank(M.transpose()) == 2


def test_ragged_rows_are_rejected():
    with pytest.raises(InvalidInput):
        ScalarMatrix.from_rows([[1, 2], [3]], QQ)


def test_generic_rank_exact_of_polynomial_matrices():
    x1, x2 = (1, 0), (0, 1)
    full = monomial_matrix([[(1, x1), (1, x2)], [(1, x2), (1, x1)]], QQ)
    assert generic_rank_exact(full) == 2
    assert generic_rank_exact(full, F2) == 2
    repeated = monomial_matrix([[(1, x1), (1, x2)], [(1, x1), (1, x2)]], QQ)
    assert generic_rank_exact(repeated) == 1
    singular = monomial_matrix([[(1, (1, 1)), (1, (2, 0))], [(1, (0, 2)), (1, (1, 1))]], QQ)
    assert generic_rank_exact(singular) == 1


def test_generic_rank_drops_in_characteristic_two():
    # det = 2 x1 x2
    M = monomial_matrix([[(1, (1, 0)), (1, (0, 1))], [(-1, (1, 0)), (1, (0, 1))]], QQ)
    assert generic_rank_exact(M) == 2
    assert generic_rank_exact(M, F2) == 1


@given(small_monomial_matrices(), st.integers(min_value=0, max_value=2 ** 32))
@settings(max_examples=40, deadline=None)
def test_randomized_rank_agrees_over_rationals(M, seed):
    exact = generic_rank_exact(M)
    result = generic_rank_randomized(M, seed=seed)
    assert result.rank <= exact
    assert result.rank == exact


@given(small_monomial_matrices(), st.integers(min_value=0, max_value=2 ** 32))
@settings(max_examples=25, deadline=None)
def test_randomized_rank_is_a_lower_bound_over_gf2(M, seed):
    exact = generic_rank_exact(M, F2)
    result = generic_rank_randomized(M, F2, seed=seed)
    assert result.rank <= exact
    reduced = M.over(F2)
    if reduced.entries:
        assert result.field_order > 2 * min(M.rows, M.cols) * reduced.max_degree
        assert result.failure_bound <= 0.5


@st.composite
def six_by_six_monomial_matrices(draw):
    cell = st.one_of(st.none(), st.tuples(st.integers(min_value=-3, max_value=3), st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))))
    grid = draw(st.lists(st.lists(cell, min_size=6, max_size=6), min_size=6, max_size=6))
    return monomial_matrix(grid, QQ, nvars=3)


@pytest.mark.parametrize("k", [QQ, F2])
@given(M=six_by_six_monomial_matrices(), seed=st.integers(min_value=0, max_value=2 ** 32))
@settings(max_examples=200, deadline=None)
def test_randomized_rank_matches_exact_on_six_by_six_matrices(k, M, seed):
    result = generic_rank_randomized(M, k, seed=seed)
    assert result.rank == generic_rank_exact(M, k)


def test_prime_fields_sample_from_at_least_4096_elements():
    M = monomial_matrix([[(1, (1, 0)), (1, (0, 1))], [(1, (0, 1)), (1, (1, 0))]], F2)
    result = generic_rank_randomized(M, seed=3)
    assert result.field_order == 2 ** 12
    assert result.failure_bound < 1e-3


def test_randomized_mode_is_deterministic_for_a_seed():
    M = monomial_matrix([[(1, (1, 0)), (1, (0, 1)), None], [None, (1, (1, 0)), (1, (0, 1))]], F3)
    first = generic_rank(M, mode="randomized", seed=7)
    second = generic_rank(M, mode="randomized", seed=7)
    assert first == second
    assert first.mode == "randomized" and first.trials == 3


def test_unknown_rank_mode():
    M = monomial_matrix([[(1, (1, 0))]], QQ)
    with pytest.raises(InvalidInput):
        generic_rank(M, mode="symbolic")
    with pytest.raises(InvalidInput):
        generic_rank_randomized(M, trials=0)


def test_json_dumps_are_row_major():
    M = monomial_matrix([[(2, (1, 0)), None]], F3)
    dump = json.loads(M.to_json())
    assert dump["field"] == "GF(3)"
    assert dump["entries"] == [[{"coef": "2", "exponents": [1, 0]}, None]]
    scalar = json.loads(ScalarMatrix.from_rows([[Rational(3, 4), 0]], QQ).to_json())
    assert scalar["entries"] == [["3/4", "0"]]


def test_out_of_range_entries_are_rejected():
    with pytest.raises(InvalidInput):
        MonomialMatrix.build(1, 1, 2, QQ, {(1, 0): (1, (1, 0))})
    with pytest.raises(InvalidInput):
        MonomialMatrix.build(1, 1, 2, QQ, {(0, 0): (1, (1, 0, 0))})
