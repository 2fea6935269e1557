#!/usr/bin/env python3
"""
Simplicial complexes: normalisation, homology, duality and subdivision.
"""

import logging

import pytest
from hypothesis import given, settings, strategies as st

from lyutab.combinatorics import corpus
from lyutab.combinatorics.simplicial import (
    SimplicialComplex,
    alexander_dual,
    barycentric_subdivision,
    canonical_form,
    codim_one_component_count,
    connected_components_nonisolated,
    dimension,
    f_vector,
    faces,
    is_pure,
    join,
    mask_of,
    minimal_transversals,
    reduced_homology,
    reduced_homology_dims,
    restriction,
    vertices,
    vertices_of,
)
from lyutab.errors import BudgetExceeded, InvalidInput, NonPureComplex, VoidComplex
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.config import Budgets

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)

HOLLOW_TRIANGLE = SimplicialComplex.from_facets(3, [[1, 2], [1, 3], [2, 3]])


@st.composite
def complexes(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    facets = draw(st.lists(st.lists(st.integers(min_value=1, max_value=n), max_size=n), min_size=1, max_size=6))
    return SimplicialComplex.from_facets(n, facets)


def test_non_maximal_facets_are_dropped_with_a_warning(caplog):
    with caplog.at_level(logging.WARNING):
        delta = SimplicialComplex.from_facets(3, [[1, 2], [1], [1, 2]])
    assert delta.facet_lists() == [[1, 2]]
    assert "non-maximal" in caplog.text


def test_void_and_empty_complex_are_distinct():
    void = SimplicialComplex.from_facets(2, [])
    empty = SimplicialComplex.from_facets(2, [[]])
    assert void.void and not empty.void
    assert empty.is_empty_complex
    assert list(faces(empty)) == [0]
    assert reduced_homology_dims(empty, QQ) == [1]
    with pytest.raises(VoidComplex):
        reduced_homology_dims(void, QQ)


def test_vertex_outside_range_is_rejected():
    with pytest.raises(InvalidInput):
        SimplicialComplex.from_facets(2, [[1, 3]])


def test_hollow_triangle_has_a_one_cycle():
    assert f_vector(HOLLOW_TRIANGLE) == (1, 3, 3)
    assert dimension(HOLLOW_TRIANGLE) == 1
    assert reduced_homology_dims(HOLLOW_TRIANGLE, QQ) == [0, 0, 1]
    assert reduced_homology(HOLLOW_TRIANGLE, QQ, 1) == 1
    assert reduced_homology(HOLLOW_TRIANGLE, QQ, 5) == 0


def test_projective_plane_homology_depends_on_the_field():
    rp2 = corpus.rp2_complex()
    assert f_vector(rp2) == (1, 6, 15, 10)
    assert reduced_homology_dims(rp2, QQ) == [0, 0, 0, 0]
    assert reduced_homology_dims(rp2, F2) == [0, 0, 1, 1]
    assert reduced_homology_dims(rp2, FieldSpec.prime(3)) == [0, 0, 0, 0]


def test_alexander_dual_of_empty_complex_is_the_points():
    dual = alexander_dual(SimplicialComplex.empty_complex(2))
    assert dual.facet_lists() == [[1], [2]]


def test_alexander_dual_of_full_simplex_is_void(caplog):
    with caplog.at_level(logging.WARNING):
        dual = alexander_dual(SimplicialComplex.simplex(3))
    assert dual.void
    assert "void" in caplog.text


@given(complexes())
@settings(max_examples=60, deadline=None)
def test_double_dual_is_the_identity(delta):
    if delta.is_full_simplex:
        return
    assert alexander_dual(alexander_dual(delta)) == delta


@given(complexes())
@settings(max_examples=60, deadline=None)
def test_euler_characteristic_matches_homology(delta):
    counts = f_vector(delta)
    dims = reduced_homology_dims(delta, QQ)
    assert sum((-1) ** s * f for s, f in enumerate(counts)) == sum((-1) ** s * h for s, h in enumerate(dims))


def test_restriction_reindexes_vertices():
    delta = SimplicialComplex.from_facets(4, [[1, 2, 4], [3, 4]])
    restricted = restriction(delta, [2, 3, 4])
    assert restricted.n == 3
    assert restricted.facet_lists() == [[1, 3], [2, 3]]


@given(complexes(), st.data())
@settings(max_examples=80, deadline=None)
def test_restriction_keeps_exactly_the_faces_inside_sigma(delta, data):
    sigma = data.draw(st.sets(st.integers(min_value=1, max_value=delta.n)))
    sigma_mask = mask_of(sigma)
    relabel = {v: i + 1 for i, v in enumerate(sorted(sigma))}
    expected = {mask_of(relabel[v] for v in vertices_of(face)) for face in faces(delta) if face & ~sigma_mask == 0}
    restricted = restriction(delta, sigma)
    assert restricted.n == len(sigma)
    assert set(faces(restricted)) == expected


def test_vertices_skip_ghosts():
    delta = SimplicialComplex.from_facets(4, [[1, 2], [4]])
    assert vertices(delta) == [1, 2, 4]


def test_components_ignore_isolated_points():
    assert connected_components_nonisolated(corpus.figure_one_complex()) == 3
    assert connected_components_nonisolated(SimplicialComplex.from_facets(3, [[1], [2], [3]])) == 0


def test_codim_one_components():
    bowtie = SimplicialComplex.from_facets(5, [[1, 2, 3], [3, 4, 5]])
    assert is_pure(bowtie)
    assert codim_one_component_count(bowtie) == 2
    assert codim_one_component_count(corpus.rp2_complex()) == 1
    with pytest.raises(NonPureComplex):
        codim_one_component_count(corpus.figure_one_complex())


def test_barycentric_subdivision_of_hollow_triangle():
    sd = barycentric_subdivision(HOLLOW_TRIANGLE)
    assert sd.n == 6
    assert f_vector(sd) == (1, 6, 6)
    assert reduced_homology_dims(sd, QQ) == reduced_homology_dims(HOLLOW_TRIANGLE, QQ)


@pytest.mark.parametrize("k", [QQ, F2, FieldSpec.prime(3)])
def test_subdivision_keeps_reduced_homology_on_small_complexes(k):
    for delta in corpus.exhaustive_corpus(4):
        if delta.is_empty_complex:
            continue
        sd = barycentric_subdivision(delta)
        assert reduced_homology_dims(sd, k) == reduced_homology_dims(delta, k), delta


def test_barycentric_subdivision_respects_vertex_budget():
    with pytest.raises(BudgetExceeded):
        barycentric_subdivision(corpus.rp2_complex())
    sd = barycentric_subdivision(corpus.rp2_complex(), Budgets(subdivision_vertices=31))
    assert f_vector(sd)[-1] == 60


def test_barycentric_subdivision_rejects_empty_complex():
    with pytest.raises(VoidComplex):
        barycentric_subdivision(SimplicialComplex.empty_complex(2))


def test_join_of_two_points_is_an_edge():
    point = SimplicialComplex.simplex(1)
    assert join(point, point).is_full_simplex
    assert join(HOLLOW_TRIANGLE, SimplicialComplex.from_facets(2, [[1], [2]])).n == 5


def test_canonical_form_identifies_relabelings():
    a = SimplicialComplex.from_facets(3, [[1, 2], [3]])
    b = SimplicialComplex.from_facets(3, [[2, 3], [1]])
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(a) != canonical_form(HOLLOW_TRIANGLE)


def test_minimal_transversals():
    # edges {1,2} and {3}
    assert minimal_transversals([0b011, 0b100]) == (0b101, 0b110)


def test_corpus_counts_isomorphism_classes():
    assert len(corpus.complexes_up_to_isomorphism(2)) == 3
    assert len(corpus.complexes_up_to_isomorphism(3)) == 8
    assert len(corpus.complexes_up_to_isomorphism(4)) == 28
