"""Small named complexes used by tests, docs and the CLI."""
from __future__ import annotations

from .complex import Cell, Filter, LefschetzComplex, from_simplicial

# Minima a..h and maxima A..H alternate around the circle: a A b B c C ... h H.
CIRCLE_VERTEX_VALUES = dict(a=0.0, g=1.0, c=2.0, b=3.0, f=4.0, d=5.0, e=6.0, h=7.0)
CIRCLE_EDGE_VALUES = dict(B=3.5, C=5.5, F=5.8, E=6.5, D=6.8, G=7.5, H=8.0, A=9.0)


def circle() -> tuple[LefschetzComplex, Filter]:
    """Function on a circle with 8 minima (vertices) and 8 maxima (edges)."""
    verts = "abcdefgh"
    labels = {frozenset([v]): v for v in verts}
    edges = []
    for i, v in enumerate(verts):
        e = frozenset([v, verts[(i + 1) % 8]])
        labels[e] = v.upper()
        edges.append(e)
    cx = from_simplicial(edges, labels)
    values = {**CIRCLE_VERTEX_VALUES, **CIRCLE_EDGE_VALUES}
    return cx, Filter(tuple(values[c.label] for c in cx.cells))


def dunce_hat() -> tuple[LefschetzComplex, Filter]:
    """Cylinder with a Dunce hat glued to one boundary circle.

    Loops AA and BB have empty boundary; the cylinder disk bounds AA + BB and
    the Dunce hat disk wraps AA three times, which is AA mod 2.
    """
    names = ["A", "B", "AB", "AA", "BB", "Cyl", "Dh"]
    dims = [0, 0, 1, 1, 1, 2, 2]
    cells = tuple(Cell(i, d, n) for i, (n, d) in enumerate(zip(names, dims)))
    idx = {n: i for i, n in enumerate(names)}
    incidence = frozenset(
        (idx[x], idx[y])
        for x, y in [("A", "AB"), ("B", "AB"), ("AA", "Cyl"), ("BB", "Cyl"), ("AA", "Dh")]
    )
    return LefschetzComplex(cells, incidence), Filter(tuple(float(i) for i in range(len(names))))
