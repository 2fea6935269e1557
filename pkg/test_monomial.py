#!/usr/bin/env python3
"""
Monomial ideals: parsing, Stanley-Reisner correspondence, duality and ideal operations.
"""

import logging

import pytest
from hypothesis import given, settings, strategies as st

from lyutab.combinatorics import corpus
from lyutab.combinatorics.monomial import (
    Monomial,
    MonomialIdeal,
    degree_component,
    dual_ideal,
    embed,
    from_complex,
    from_facets,
    height,
    intersect,
    parse_monomial,
    radical,
    squarefree,
    sum_disjoint,
    to_complex,
)
from lyutab.combinatorics.simplicial import SimplicialComplex, alexander_dual
from lyutab.errors import BudgetExceeded, InvalidIdeal, InvalidInput, NotSquarefree
from lyutab.utils.config import Budgets


@st.composite
def squarefree_ideals(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    supports = draw(st.lists(st.lists(st.integers(min_value=1, max_value=n), min_size=1, max_size=n), min_size=1, max_size=5))
    return squarefree(n, supports)


def test_parse_and_print_monomials():
    m = parse_monomial("x1*x2^2", 3)
    assert m.exponents == (1, 2, 0)
    assert str(m) == "x1*x2^2"
    assert parse_monomial("x1 x3", 3).exponents == (1, 0, 1)
    assert str(Monomial.one(2)) == "1"
    with pytest.raises(InvalidInput):
        parse_monomial("x4", 3)
    with pytest.raises(InvalidInput):
        parse_monomial("y1", 3)


def test_generators_are_minimalised(caplog):
    with caplog.at_level(logging.WARNING):
        ideal = MonomialIdeal.parse(2, ["x1", "x1*x2", "x1"])
    assert ideal.texts() == ["x1"]
    assert "non-minimal" in caplog.text


def test_zero_and_unit_ideals():
    zero = MonomialIdeal.from_generators(2, [])
    unit = MonomialIdeal.parse(2, ["1", "x1"])
    assert zero.is_zero and unit.is_unit
    with pytest.raises(InvalidIdeal):
        zero.require_proper()
    with pytest.raises(InvalidIdeal):
        unit.require_proper()
    assert to_complex(zero).is_full_simplex
    assert to_complex(unit).void


def test_stanley_reisner_round_trip():
    hollow = SimplicialComplex.from_facets(3, [[1, 2], [1, 3], [2, 3]])
    ideal = from_complex(hollow)
    assert ideal.texts() == ["x1*x2*x3"]
    assert to_complex(ideal) == hollow
    with pytest.raises(InvalidIdeal):
        from_complex(SimplicialComplex.simplex(3))


def test_ghost_vertices_become_linear_generators():
    ideal = from_facets(3, [[1, 2]])
    assert ideal.texts() == ["x3"]
    assert ideal.has_linear_generator


def test_dual_ideal_is_the_minimal_vertex_covers():
    ideal = squarefree(3, [[1, 2], [3]])
    assert dual_ideal(ideal) == squarefree(3, [[1, 3], [2, 3]])
    with pytest.raises(NotSquarefree):
        dual_ideal(MonomialIdeal.parse(2, ["x1^2"]))


def test_projective_plane_ideal_is_self_dual():
    ideal = corpus.rp2_ideal()
    assert len(ideal.gens) == 10
    assert dual_ideal(ideal) == ideal


@given(squarefree_ideals())
@settings(max_examples=60, deadline=None)
def test_dual_ideal_matches_alexander_dual(ideal):
    assert dual_ideal(dual_ideal(ideal)) == ideal
    assert to_complex(dual_ideal(ideal)) == alexander_dual(to_complex(ideal))


def test_radical():
    ideal = MonomialIdeal.parse(3, ["x1^2*x2", "x3^3", "x1*x2^4"])
    assert radical(ideal) == squarefree(3, [[1, 2], [3]])
    assert radical(squarefree(2, [[1]])) == squarefree(2, [[1]])


def test_intersect_takes_lcms():
    assert intersect(squarefree(2, [[1]]), squarefree(2, [[2]])) == squarefree(2, [[1, 2]])
    assert intersect(MonomialIdeal.parse(2, ["x1^2"]), MonomialIdeal.parse(2, ["x1*x2"])).texts() == ["x1^2*x2"]
    with pytest.raises(InvalidInput):
        intersect(squarefree(2, [[1]]), squarefree(3, [[1]]))


def test_sum_and_embed_use_fresh_variables():
    x1 = squarefree(1, [[1]])
    assert sum_disjoint(x1, x1) == squarefree(2, [[1], [2]])
    assert embed(x1, 3, 2) == squarefree(3, [[3]])
    with pytest.raises(InvalidInput):
        embed(x1, 1, 1)


def test_degree_component():
    ideal = MonomialIdeal.parse(3, ["x1", "x2*x3"])
    component = degree_component(ideal, 2)
    assert sorted(component.texts()) == sorted(["x1^2", "x1*x2", "x1*x3", "x2*x3"])
    assert degree_component(ideal, 0).is_zero
    with pytest.raises(BudgetExceeded):
        degree_component(ideal, 3, Budgets(component_degree=2))


def test_height_is_the_smallest_cover():
    assert height(squarefree(2, [[1, 2]])) == 1
    assert height(corpus.five_variable_ideal()) == 2
    assert height(corpus.rp2_ideal()) == 3


def test_five_variable_ideal_generators():
    ideal = corpus.five_variable_ideal()
    assert sorted(ideal.texts()) == sorted(["x1*x3*x5", "x1*x4*x5", "x2*x3*x5", "x2*x4*x5", "x1*x2*x3*x4"])


def test_membership():
    ideal = MonomialIdeal.parse(3, ["x1*x2", "x3^2"])
    assert ideal.contains(parse_monomial("x1*x2^3", 3))
    assert not ideal.contains(parse_monomial("x1*x3", 3))
    assert ideal.min_degree == 2 and ideal.max_degree == 2
