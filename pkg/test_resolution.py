#!/usr/bin/env python3
"""
Taylor complexes, pruning to minimal resolutions, and the two Betti oracles.
"""

import pickle

import pytest
from hypothesis import given, settings, strategies as st

from lyutab.analysis.resolution import (
    BettiTable,
    betti_table,
    check_complex,
    hochster_betti,
    koszul_betti,
    lcm_lattice,
    prune_to_minimal,
    quotient_betti,
    resolution_betti,
    taylor_complex,
)
from lyutab.combinatorics import corpus
from lyutab.combinatorics.monomial import Monomial, MonomialIdeal, dual_ideal, from_complex, squarefree
from lyutab.errors import BudgetExceeded, InvalidIdeal, InvalidInput
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import Budgets

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)


@st.composite
def small_ideals(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    count = draw(st.integers(min_value=1, max_value=5))
    gens = draw(st.lists(st.tuples(*[st.integers(0, 2)] * n).filter(any), min_size=count, max_size=count))
    return MonomialIdeal.from_generators(n, [Monomial(g) for g in gens])


def test_koszul_complex_of_two_variables():
    betti = resolution_betti(squarefree(2, [[1], [2]]), QQ)
    assert betti.graded == {(0, 1): 2, (1, 2): 1}
    assert betti.totals == [2, 1]
    assert betti.projective_dimension == 1
    assert betti.regularity == 1


def test_path_ideal():
    betti = resolution_betti(squarefree(3, [[1, 2], [2, 3]]), QQ)
    assert betti.graded == {(0, 2): 2, (1, 3): 1}


def test_taylor_complex_is_a_complex():
    ideal = MonomialIdeal.parse(3, ["x1^2", "x1*x2", "x2*x3", "x3^2"])
    C = taylor_complex(ideal, QQ)
    assert C.ranks == [4, 6, 4, 1]
    assert check_complex(C) == []
    assert not C.is_minimal
    with pytest.raises(InvalidInput):
        betti_table(C)


def test_taylor_budget():
    ideal = squarefree(4, [[1], [2], [3], [4]])
    with pytest.raises(BudgetExceeded):
        taylor_complex(ideal, QQ, Budgets(taylor_generators=3))


def test_improper_ideals_have_no_resolution():
    with pytest.raises(InvalidIdeal):
        resolution_betti(MonomialIdeal.zero(2), QQ)
    with pytest.raises(InvalidIdeal):
        resolution_betti(MonomialIdeal.unit(2), QQ)


def test_pruning_order_does_not_change_betti_numbers():
    ideal = MonomialIdeal.parse(3, ["x1^2", "x1*x2", "x2^2", "x2*x3"])
    C = taylor_complex(ideal, QQ)
    forward = prune_to_minimal(C, "row-major", debug=True)
    backward = prune_to_minimal(C, "reverse", debug=True)
    assert forward.is_minimal and backward.is_minimal
    assert check_complex(forward) == [] and check_complex(backward) == []
    assert betti_table(forward) == betti_table(backward)
    with pytest.raises(InvalidInput):
        prune_to_minimal(C, "sideways")


def test_projective_plane_betti_numbers_depend_on_characteristic():
    ideal = corpus.rp2_ideal()
    over_q = resolution_betti(ideal, QQ)
    over_f2 = resolution_betti(ideal, F2)
    assert over_q.graded == {(0, 3): 10, (1, 4): 15, (2, 5): 6}
    assert over_f2.graded == {(0, 3): 10, (1, 4): 15, (2, 5): 6, (2, 6): 1, (3, 6): 1}
    assert over_q != over_f2


@pytest.mark.parametrize("k", [QQ, F2, FieldSpec.prime(3)])
def test_oracles_agree_on_the_projective_plane(k):
    ideal = corpus.rp2_ideal()
    direct = resolution_betti(ideal, k)
    assert hochster_betti(ideal, k) == direct
    assert koszul_betti(ideal, k) == direct


@given(small_ideals())
@settings(max_examples=40, deadline=None)
def test_pruned_taylor_matches_koszul_oracle(ideal):
    assert resolution_betti(ideal, QQ) == koszul_betti(ideal, QQ)


@pytest.mark.slow
@pytest.mark.parametrize("k", [QQ, F2, FieldSpec.prime(3)])
def test_oracles_agree_on_every_small_complex(k):
    for delta in corpus.exhaustive_corpus(5):
        ideal = from_complex(delta)
        direct = resolution_betti(ideal, k)
        assert hochster_betti(ideal, k) == direct, delta
        assert koszul_betti(ideal, k) == direct, delta


def test_quotient_betti_shifts_and_adds_the_ring():
    betti = resolution_betti(squarefree(2, [[1], [2]]), QQ)
    quotient = quotient_betti(betti)
    assert quotient.graded == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert quotient.alternating_sum == 0


def test_lcm_lattice():
    ideal = squarefree(3, [[1, 2], [2, 3]])
    assert lcm_lattice(ideal) == [(0, 1, 1), (1, 1, 0), (1, 1, 1)]


def test_betti_frame_layout():
    frame = resolution_betti(corpus.rp2_ideal(), F2).to_frame()
    assert list(frame.index) == [3, 4]
    assert list(frame.columns) == [0, 1, 2, 3]
    assert frame.loc[3, 2] == 6 and frame.loc[4, 2] == 1
    assert frame.attrs["totals"] == [10, 15, 7, 1]


def test_hochster_needs_a_squarefree_ideal():
    with pytest.raises(InvalidInput):
        hochster_betti(MonomialIdeal.parse(2, ["x1^2"]), QQ)


def test_threads_do_not_change_the_oracle():
    ideal = dual_ideal(corpus.rp2_ideal())
    assert hochster_betti(ideal, F2, threads=2) == hochster_betti(ideal, F2)


def test_threads_work_after_the_field_domain_is_built():
    F2.element(1)
    assert "domain" in vars(F2)
    clone = pickle.loads(pickle.dumps(F2))
    assert clone == F2
    assert clone.element(3) == F2.element(1)
    ideal = dual_ideal(corpus.rp2_ideal())
    serial = koszul_betti(ideal, F2)
    assert koszul_betti(ideal, F2, threads=2) == serial
    assert hochster_betti(ideal, F2, threads=2) == serial


def test_betti_table_equality_is_multigraded():
    a = BettiTable.from_counts(2, [((0, (1, 0)), 1)])
    b = BettiTable.from_counts(2, [((0, (0, 1)), 1)])
    assert a.graded == b.graded
    assert a != b
