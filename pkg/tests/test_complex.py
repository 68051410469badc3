import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depthposet.complex import (
    Cell,
    Filter,
    LefschetzComplex,
    betti,
    check_filter,
    from_simplicial,
    perturb_ties,
    sublevel,
    validate_complex,
)
from depthposet.cancellation import cancel
from depthposet.oracle import random_filtered_complex


def test_dunce_hat_is_valid(dunce_fx):
    complex, filter = dunce_fx
    assert validate_complex(complex) == []
    assert check_filter(complex, filter) == []


def test_empty_complex_is_valid():
    assert validate_complex(LefschetzComplex()) == []
    assert betti(LefschetzComplex()).ranks == ()


def test_odd_boundary_of_boundary_is_reported():
    cells = (Cell(0, 0, "v"), Cell(1, 1, "e"), Cell(2, 2, "t"))
    complex = LefschetzComplex(cells, frozenset({(0, 1), (1, 2)}))
    violations = validate_complex(complex)
    assert len(violations) == 1
    assert "v" in violations[0] and "t" in violations[0]


def test_dimension_violation_is_reported():
    cells = (Cell(0, 0, "v"), Cell(1, 2, "t"))
    violations = validate_complex(LefschetzComplex(cells, frozenset({(0, 1)})))
    assert violations and violations[0].startswith("dimension")


def test_non_contiguous_ids_rejected():
    with pytest.raises(ValueError):
        LefschetzComplex((Cell(1, 0),))


def test_from_simplicial_edge():
    complex = from_simplicial([{1}, {2}, {1, 2}])
    assert [c.dim for c in complex.cells] == [0, 0, 1]
    assert len(complex.incidence) == 2


def test_from_simplicial_triangle_completes_faces():
    complex = from_simplicial([{1, 2, 3}])
    assert len(complex) == 7
    assert validate_complex(complex) == []
    assert betti(complex).ranks == (1, 0, 0)


def test_from_simplicial_duplicate_names_index():
    with pytest.raises(ValueError, match="index 2"):
        from_simplicial([{1}, {1, 2}, {2, 1}])


def test_circle_fixture_shape(circle_fx):
    complex, filter = circle_fx
    assert len(complex) == 16
    assert len(complex.incidence) == 16
    assert validate_complex(complex) == []
    assert check_filter(complex, filter) == []
    assert betti(complex).ranks == (1, 1)


def test_dunce_hat_betti_before_and_after(dunce_fx):
    complex, filter = dunce_fx
    assert betti(complex).ranks == (1, 0, 0)
    quotient, _ = cancel(complex, filter, complex.by_label("AA"), complex.by_label("Dh"))
    assert betti(quotient).ranks == (1, 0, 0)


def test_isolated_cells_of_distant_dimensions():
    complex = LefschetzComplex((Cell(0, 0), Cell(1, 3)))
    assert validate_complex(complex) == []
    assert betti(complex).ranks == (1, 0, 0, 1)


def test_sublevel_extremes(circle_fx):
    complex, filter = circle_fx
    assert len(sublevel(complex, filter, -1.0)) == 0
    assert len(sublevel(complex, filter, 100.0)) == 16


def test_sublevel_between_b_and_B(circle_fx):
    complex, filter = circle_fx
    sub = sublevel(complex, filter, 3.2)
    assert sorted(c.label for c in sub.cells) == ["a", "b", "c", "g"]
    assert not sub.incidence
    assert validate_complex(sub) == []


def test_check_filter_reports_tie_and_monotonicity():
    complex = from_simplicial([{1, 2}])
    assert any(v.startswith("tie") for v in check_filter(complex, Filter((0.0, 0.0, 1.0))))
    assert any(v.startswith("monotonicity") for v in check_filter(complex, Filter((0.0, 2.0, 1.0))))
    assert check_filter(complex, Filter((0.0, math.inf, 5.0)))


def test_perturb_ties_breaks_ties_monotonically():
    complex = from_simplicial([{1, 2}, {2, 3}])
    values = [0.0, 1.0, 1.0, 1.0, 2.0]
    f = perturb_ties(complex, values)
    assert check_filter(complex, f) == []
    assert f[0] == 0.0 and f[1] == 1.0 and f[4] == 2.0


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    n=st.integers(1, 7),
    dim=st.integers(0, 3),
    density=st.floats(0.05, 1.0),
    a=st.floats(0.0, 1.0),
    b=st.floats(0.0, 1.0),
)
def test_sublevel_is_monotone_and_valid(seed, n, dim, density, a, b):
    complex, filter = random_filtered_complex(seed, n, dim, density)
    lo, hi = sorted((a, b))
    small, big = sublevel(complex, filter, lo), sublevel(complex, filter, hi)
    assert set(small.origin) <= set(big.origin)
    assert validate_complex(small) == []
