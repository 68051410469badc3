import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depthposet.cancellation import is_shallow, is_shallow_order, shallow_pairs
from depthposet.complex import Cell, Filter, LefschetzComplex
from depthposet.depth import (
    DepthPoset,
    build_depth_poset,
    is_linear_extension,
    order_pi,
    poset_violations,
    reduce_alpha,
    reduce_omega,
    split_by_dimension,
)
from depthposet.matrix import build_matrix, standard_reduction
from depthposet.oracle import brute_depth_poset, enumerate_shallow_orders, random_instance

from conftest import labeled
from helpers import origin_incidence
from test_cancellation import _cancel_all

ALPHA = [("h", "G"), ("e", "E"), ("d", "C"), ("f", "F"), ("b", "B"), ("c", "D"), ("g", "H")]
OMEGA = [("b", "B"), ("d", "C"), ("f", "F"), ("e", "E"), ("c", "D"), ("h", "G"), ("g", "H")]
# Hasse diagram of the circle fixture, computed by brute force and frozen.
CIRCLE_HASSE = {
    (("b", "B"), ("c", "D")),
    (("d", "C"), ("c", "D")),
    (("e", "E"), ("c", "D")),
    (("f", "F"), ("c", "D")),
    (("c", "D"), ("g", "H")),
    (("h", "G"), ("g", "H")),
}


def _two_components():
    """Two disjoint edges whose birth-death intervals [1,2] and [4,5] do not overlap."""
    cells = tuple(Cell(i, d, n) for i, (n, d) in enumerate(
        [("a1", 0), ("b1", 0), ("e1", 1), ("a2", 0), ("b2", 0), ("e2", 1)]
    ))
    complex = LefschetzComplex(cells, frozenset({(0, 2), (1, 2), (3, 5), (4, 5)}))
    return complex, Filter((0.0, 1.0, 2.0, 3.0, 4.0, 5.0))


def _labeled_relations(complex, rels):
    return {(tuple(complex.labels(a)), tuple(complex.labels(b))) for a, b in rels}


def test_alpha_and_omega_on_circle(circle_fx):
    complex, filter = circle_fx
    m = build_matrix(complex, filter)
    alpha, _ = reduce_alpha(m)
    omega, _ = reduce_omega(m)
    assert labeled(complex, [p.cells for p in alpha]) == ALPHA
    assert labeled(complex, [p.cells for p in omega]) == OMEGA


def test_reductions_leave_input_untouched(circle_fx):
    m = build_matrix(*circle_fx)
    before = (list(m.cols), list(m.rows))
    reduce_alpha(m)
    reduce_omega(m)
    assert (m.cols, m.rows) == before


def test_zero_matrix_reductions():
    complex = LefschetzComplex((Cell(0, 0), Cell(1, 2)))
    m = build_matrix(complex, Filter((0.0, 1.0)))
    assert reduce_alpha(m) == ([], frozenset())
    assert reduce_omega(m) == ([], frozenset())


def test_circle_depth_poset(circle_fx):
    complex, filter = circle_fx
    poset = build_depth_poset(complex, filter)
    assert len(poset) == 7
    assert _labeled_relations(complex, poset.hasse_relations()) == CIRCLE_HASSE
    assert poset.relations() == brute_depth_poset(complex, filter).relations()
    m = build_matrix(complex, filter)
    for order in (reduce_alpha(m)[0], reduce_omega(m)[0], order_pi(standard_reduction(m), filter)):
        assert is_linear_extension(poset, order)


def test_reverse_alpha_is_not_a_linear_extension(circle_fx):
    complex, filter = circle_fx
    alpha, _ = reduce_alpha(build_matrix(complex, filter))
    assert not is_linear_extension(build_depth_poset(complex, filter), alpha[::-1])


def test_is_linear_extension_rejects_non_permutation(circle_fx):
    complex, filter = circle_fx
    alpha, _ = reduce_alpha(build_matrix(complex, filter))
    with pytest.raises(ValueError):
        is_linear_extension(build_depth_poset(complex, filter), alpha[:-1])


def test_empty_poset():
    poset = DepthPoset((), frozenset())
    assert is_linear_extension(poset, [])
    assert split_by_dimension(poset) == []


def test_disjoint_intervals_give_empty_relation():
    complex, filter = _two_components()
    poset = build_depth_poset(complex, filter)
    assert len(poset) == 2 and not poset.closure


def test_order_pi_ties_and_single_pair():
    complex, filter = _two_components()
    pairing = standard_reduction(build_matrix(complex, filter))
    pi = order_pi(pairing, filter)
    assert [complex.labels(p.cells) for p in pi] == [["b1", "e1"], ["b2", "e2"]]
    assert is_shallow_order(complex, filter, pi)
    assert order_pi(pairing.pairs[:1], filter) == list(pairing.pairs[:1])


def test_order_pi_on_circle(circle_fx):
    complex, filter = circle_fx
    pi = order_pi(standard_reduction(build_matrix(complex, filter)), filter)
    assert is_shallow_order(complex, filter, pi)


def test_split_circle(circle_fx):
    parts = split_by_dimension(build_depth_poset(*circle_fx))
    assert len(parts) == 1 and len(parts[0]) == 7


def _instances(count, **kw):
    return [random_instance(seed, **kw) for seed in range(count)]


def test_reductions_take_one_step_per_pair_and_sort_monotonically():
    for inst in _instances(150, max_bd=8, max_dim=3):
        m = build_matrix(inst.complex, inst.filter)
        bd = standard_reduction(m).cell_pairs()
        steps = []
        alpha, _ = reduce_alpha(m, on_step=lambda i, p, w: steps.append(i))
        assert len(steps) == len(bd) == len(alpha)
        assert {p.cells for p in alpha} == bd
        births = [inst.filter[p.birth] for p in alpha]
        assert births == sorted(births, reverse=True)
        steps.clear()
        omega, _ = reduce_omega(m, on_step=lambda i, p, w: steps.append(i))
        assert len(steps) == len(bd)
        assert {p.cells for p in omega} == bd
        deaths = [inst.filter[p.death] for p in omega]
        assert deaths == sorted(deaths)
        assert is_shallow_order(inst.complex, inst.filter, alpha)
        assert is_shallow_order(inst.complex, inst.filter, omega)


@pytest.mark.parametrize("reduce", [reduce_alpha, reduce_omega])
def test_working_matrix_is_boundary_of_quotient(reduce):
    for inst in _instances(100, max_bd=7, max_dim=3):
        m = build_matrix(inst.complex, inst.filter)
        done = []
        current = [inst.complex, inst.filter]

        def check(i, pair, work):
            cx, f = current
            s, t = cx.local_id(pair.birth), cx.local_id(pair.death)
            assert is_shallow(cx, f, s, t)
            done.append(pair.cells)
            current[:] = _cancel_all(inst.complex, inst.filter, done)
            assert work.entries() == origin_incidence(current[0])
            alive = {work.order[p] for p in range(work.size) if (work.alive >> p) & 1}
            assert alive == set(current[0].origin)

        reduce(m, on_step=check)


def test_book_relations_are_nested_and_consistent():
    for inst in _instances(200, max_bd=8, max_dim=3):
        poset = build_depth_poset(inst.complex, inst.filter)
        assert poset_violations(poset, inst.filter) == []


def test_matches_brute_force_in_two_dimensions():
    for inst in _instances(150, max_bd=7, min_dim=2, max_dim=3):
        fast = build_depth_poset(inst.complex, inst.filter)
        assert fast.relations() == brute_depth_poset(inst.complex, inst.filter).relations()


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_linear_extensions_are_exactly_shallow_orders(seed):
    inst = random_instance(seed, max_bd=6)
    poset = build_depth_poset(inst.complex, inst.filter)
    extensions = {
        tuple(poset.elements[i].cells for i in ext) for ext in nx.all_topological_sorts(poset.graph())
    }
    assert extensions == set(enumerate_shallow_orders(inst.complex, inst.filter))


def test_split_by_dimension_recomposes():
    seen_dims = set()
    for inst in _instances(100, max_bd=8, min_dim=2, max_dim=3):
        poset = build_depth_poset(inst.complex, inst.filter)
        parts = split_by_dimension(poset)
        recomposed = set()
        for d, part in enumerate(parts):
            assert all(p.dim == d for p in part.elements)
            recomposed |= part.relations()
            if part.closure:
                seen_dims.add(d)
        assert recomposed == poset.relations()
        assert sum(len(p) for p in parts) == len(poset)
    assert {0, 1} <= seen_dims


def test_shallow_pairs_are_minimal_elements():
    for inst in _instances(100):
        poset = build_depth_poset(inst.complex, inst.filter)
        index = poset.index()
        targets = {j for _, j in poset.closure}
        minimal = {poset.elements[i].cells for i in range(len(poset)) if i not in targets}
        assert minimal == {tuple(p) for p in shallow_pairs(inst.complex, inst.filter)}
        assert set(index) >= minimal
