"""Independent oracles shared by the test modules."""
import numpy as np

from depthposet.complex import Cell, LefschetzComplex


def dense(matrix):
    n = matrix.size
    a = np.zeros((n, n), dtype=np.uint8)
    for j, col in enumerate(matrix.cols):
        for i in range(n):
            a[i, j] = (col >> i) & 1
    return a


def gf2_rank_dense(a):
    a = np.array(a, dtype=np.uint8) % 2
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def dense_minor_rank(a, s, t):
    n = a.shape[0]
    if s >= n or t < 0:
        return 0
    return gf2_rank_dense(a[s:, : t + 1])


def cancel_by_rows(complex, filter, s, t):
    """Cancellation via row operations: add row s to every row x with x < t."""
    inc = set(complex.incidence)
    for x in complex.facets(t):
        if x == s:
            continue
        for y in complex.cofacets(s):
            inc ^= {(x, y)}
    keep = [i for i in range(len(complex)) if i not in (s, t)]
    new = {old: k for k, old in enumerate(keep)}
    cells = tuple(Cell(new[i], complex.cells[i].dim, complex.cells[i].label) for i in keep)
    incidence = frozenset((new[x], new[y]) for x, y in inc if x in new and y in new)
    return LefschetzComplex(cells, incidence, tuple(complex.origin[i] for i in keep)), filter.restrict(keep)


def origin_incidence(complex):
    return {(complex.origin[x], complex.origin[y]) for x, y in complex.incidence}
