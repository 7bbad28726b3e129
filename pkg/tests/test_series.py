import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonpoly.errors import (
    NotAnEdge,
    NotIsolated,
    NotUnitary,
    PrecisionInsufficient,
)
from newtonpoly.field import QQ
from newtonpoly.polygon import ElementaryPolygon, make_elementary, polygon_sum
from newtonpoly.product import product
from newtonpoly.series import (
    TruncatedSeries,
    YPolynomial,
    edge_polynomial,
    format_polynomial,
    format_series,
    intersection_number,
    is_nondegenerate_pair,
    newton_polygon_of,
    parse_polynomial,
    parse_series,
    polygon_edges,
    realization_polygon,
    shifted_resultant,
    sylvester_resultant,
)


def P(text):
    return parse_polynomial(text)


class TestSeriesArithmetic:
    def test_inverse(self):
        s = parse_series("1 - x + O(x^8)")
        inv = s.inverse()
        assert (s * inv).coeffs == ((0, QQ.one()),)

    def test_geometric_inverse(self):
        s = parse_series("1 - x")
        inv = s.inverse(target=5)
        assert inv == parse_series("1 + x + x^2 + x^3 + x^4 + O(x^5)")

    def test_order_certified(self):
        s = TruncatedSeries.zero(QQ, "x", precision=4)
        with pytest.raises(PrecisionInsufficient):
            s.order()

    def test_exact_zero_order(self):
        from newtonpoly.polygon import INF

        assert TruncatedSeries.zero(QQ, "x").order() == INF

    def test_mul_precision(self):
        a = parse_series("x^2 + O(x^5)")
        b = parse_series("x^3 + O(x^4)")
        assert (a * b).precision == 6  # min(5 + 3, 4 + 2)

    def test_exact_div(self):
        a = parse_series("x^2 - x^4")
        b = parse_series("1 + x")
        q = a.exact_div(b)
        assert q * b == a


class TestParsing:
    def test_round_trip_exact(self):
        f = P("y^2 - 3/2*x^3 + x*y")
        assert parse_polynomial(format_polynomial(f)) == f

    def test_round_trip_precision(self):
        f = P("y^2 - x^3 + O(x^5)")
        assert parse_polynomial(format_polynomial(f)) == f

    def test_round_trip_extension(self):
        f = P("adjoin u: u^2 - 3; y^2 - u*x + 1/2*x^2")
        text = "adjoin u: u^2 - 3; " + format_polynomial(f)
        assert parse_polynomial(text) == f

    def test_series_round_trip(self):
        s = parse_series("2 - 1/3*x^2 + O(x^9)")
        assert parse_series(format_series(s)) == s

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            parse_polynomial("y +* x")
        with pytest.raises(ValueError):
            parse_polynomial("z^2 - x")  # unknown name

    def test_ragged_precision_rejected(self):
        exact = TruncatedSeries.constant(QQ, "x", 1)
        cut = TruncatedSeries.zero(QQ, "x", precision=3)
        f = YPolynomial.make([cut, exact])
        with pytest.raises(ValueError):
            format_polynomial(f)

    @given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 3),
                              st.integers(-6, 6).filter(bool)), min_size=1, max_size=6))
    @settings(max_examples=80)
    def test_random_round_trip(self, terms):
        f = YPolynomial.from_terms({(i, j): Fraction(c) for i, j, c in terms})
        if f.is_zero():
            return
        assert parse_polynomial(format_polynomial(f)) == f


class TestNewtonPolygon:
    def test_cusp(self):
        assert newton_polygon_of(P("y^2 - x^3")) == make_elementary(3, 2)

    def test_three_branch_product(self):
        f = P("y - x") * P("y - x^2") * P("y^2 - x^3")
        expected = polygon_sum(
            polygon_sum(make_elementary(1, 1), make_elementary(2, 1)),
            make_elementary(3, 2),
        )
        assert newton_polygon_of(f) == expected
        assert f.coeffs[0].order() == 6  # lengths 1+2+3

    def test_hidden_term(self):
        with pytest.raises(PrecisionInsufficient):
            newton_polygon_of(P("y - x + O(x)"))

    def test_hidden_term_no_finite_precision(self):
        # hidden constant-term row cannot be certified at any finite order
        f = P("y^2 + x^3 + O(x^2)")
        with pytest.raises(PrecisionInsufficient) as err:
            newton_polygon_of(f)
        assert err.value.required is None

    def test_hidden_term_required_hint(self):
        # y-coefficient unknown beyond O(x); hull undecided until x-order 3
        c0 = TruncatedSeries.monomial(QQ, "x", 4)
        c1 = TruncatedSeries.zero(QQ, "x", precision=1)
        c2 = TruncatedSeries.zero(QQ, "x")
        c3 = TruncatedSeries.constant(QQ, "x", 1)
        f = YPolynomial.make([c0, c1, c2, c3])
        with pytest.raises(PrecisionInsufficient) as err:
            newton_polygon_of(f)
        assert err.value.required == 3

    def test_unit_multiple_invariance(self):
        f = P("y^2 - x^3")
        u = P("1 + 2*x + x^3")
        assert newton_polygon_of(u * f) == newton_polygon_of(f)

    @given(st.data())
    @settings(max_examples=200)
    def test_product_additivity(self, data):
        def factor():
            a = data.draw(st.integers(1, 3))
            b = data.draw(st.integers(1, 4))
            c = data.draw(st.integers(-3, 3).filter(bool))
            return YPolynomial.from_terms({(0, a): Fraction(1), (b, 0): Fraction(c)})

        f, g = factor(), factor()
        assert newton_polygon_of(f * g) == polygon_sum(
            newton_polygon_of(f), newton_polygon_of(g)
        )


class TestEdges:
    def test_edge_polynomial(self):
        f = P("y^2 - x^3 + x^4")
        assert edge_polynomial(f, ElementaryPolygon(3, 2)) == P("y^2 - x^3")

    def test_collinear_edge(self):
        f = P("y^2 + 2*x*y + x^2 + x^3")
        assert edge_polynomial(f, ElementaryPolygon(2, 2)) == P("y^2 + 2*x*y + x^2")

    def test_not_an_edge(self):
        with pytest.raises(NotAnEdge):
            edge_polynomial(P("y^2 - x^3"), ElementaryPolygon(1, 1))

    def test_positions(self):
        f = P("y - x") * P("y^2 - x^3")
        edges = polygon_edges(f)
        assert [(e.elem.ell, e.elem.h) for e in edges] == [(1, 1), (3, 2)]
        assert edges[0].top == (0, 3)


class TestNondegeneracy:
    def test_spec_trio(self):
        assert is_nondegenerate_pair(P("y - x^2"), P("y^2 + x^3"))
        assert not is_nondegenerate_pair(P("y - x^2"), P("y^2 - x^3"))
        assert not is_nondegenerate_pair(P("y - x"), P("y - x"))


class TestResultants:
    def test_cusp_line(self):
        r = sylvester_resultant(P("y - x^2"), P("y^2 - x^3"))
        assert r.order() == 3
        # x^3(x - 1) up to sign
        assert r == parse_series("x^4 - x^3") or r == parse_series("x^3 - x^4")

    def test_degree_one(self):
        r = sylvester_resultant(P("y - 3*x"), P("y - 5*x"))
        assert r == parse_series("2*x") or r == parse_series("-2*x")

    def test_self_resultant_zero(self):
        f = P("y^2 - x^3")
        assert sylvester_resultant(f, f).is_zero()

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            sylvester_resultant(P("x*y - x^2"), P("y - x"))

    def test_truncated_rejected(self):
        with pytest.raises(PrecisionInsufficient):
            sylvester_resultant(P("y - x + O(x^9)"), P("y - x^2"))


class TestShiftedResultant:
    def test_simple_pair(self):
        r = shifted_resultant(P("y - x"), P("y - 2*x"))
        monic = r if r.coeffs[-1].coefficient(0) == 1 else -r
        assert format_polynomial(monic).replace("T", "y") == "y + x"
        assert newton_polygon_of(r) == make_elementary(1, 1)

    def test_coinciding_roots(self):
        r = shifted_resultant(P("y - x"), P("y - x"))
        monic = r if r.coeffs[-1].coefficient(0) == 1 else -r
        assert format_polynomial(monic) == "T"

    def test_degree_and_constant_term(self):
        rng = random.Random(3)
        for _ in range(10):
            f = YPolynomial.from_terms({
                (0, rng.randint(1, 3)): Fraction(1),
                (rng.randint(1, 3), 0): Fraction(rng.choice([1, 2, -1])),
            })
            g = YPolynomial.from_terms({
                (0, rng.randint(1, 2)): Fraction(1),
                (rng.randint(1, 3), 0): Fraction(rng.choice([1, 3, -2])),
            })
            r = shifted_resultant(f, g)
            assert r.degree() == f.degree() * g.degree()
            assert r.coeffs[0] == sylvester_resultant(f, g)

    def test_realization_orientation(self):
        # asymmetric pair: the identity needs the realization orientation
        p1, p2 = P("y - x"), P("y^2 - 2*x")
        assert is_nondegenerate_pair(p1, p2)
        res = shifted_resultant(p1, p2)
        assert newton_polygon_of(res) == make_elementary(1, 2)
        lhs = realization_polygon(res)
        rhs = product(realization_polygon(p1), realization_polygon(p2))
        assert lhs == rhs == make_elementary(2, 1)
        assert newton_polygon_of(res) != product(newton_polygon_of(p1), newton_polygon_of(p2))


class TestIntersection:
    def test_worked(self):
        assert intersection_number(P("y - x^2"), P("y^2 + x^3")) == 3

    def test_transverse_lines(self):
        assert intersection_number(P("y"), P("y - x")) == 1

    def test_not_isolated(self):
        f = P("y^2 - x^3")
        with pytest.raises(NotIsolated):
            intersection_number(f, f)
