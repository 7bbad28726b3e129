"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from newtonpoly.polygon import INF, ElementaryPolygon, NewtonPolygon

extents = st.integers(min_value=1, max_value=9)

elementary = st.builds(ElementaryPolygon, extents, extents)


@st.composite
def polygons(draw, max_edges=4, offsets=False, allow_infinite=False):
    edges = draw(st.lists(elementary, min_size=0, max_size=max_edges))
    if allow_infinite:
        if draw(st.booleans()):
            edges.append(ElementaryPolygon(draw(extents), INF))
        if draw(st.booleans()):
            edges.append(ElementaryPolygon(INF, draw(extents)))
    xo = draw(st.integers(min_value=0, max_value=3)) if offsets else 0
    yo = draw(st.integers(min_value=0, max_value=3)) if offsets else 0
    return NewtonPolygon(xo, yo, tuple(edges))


@st.composite
def finite_polygons(draw, max_edges=4):
    edges = draw(st.lists(elementary, min_size=1, max_size=max_edges))
    return NewtonPolygon(0, 0, tuple(edges))
