import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonpoly.errors import ReducibleExtension
from newtonpoly.field import (
    QQ,
    factor_poly,
    poly_degree,
    poly_gcd,
    poly_mul,
    squarefree_decomposition,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=8)


@pytest.fixture(scope="module")
def qq_sqrt2():
    return QQ.extend([-2, 0, 1], name="r2", verify=True)


@pytest.fixture(scope="module")
def tower(qq_sqrt2):
    r2 = qq_sqrt2.generator()
    # adjoin a root of u^2 - (1 + r2)
    return qq_sqrt2.extend([-(qq_sqrt2.one() + r2), qq_sqrt2.zero(), qq_sqrt2.one()],
                           name="s", verify=True)


class TestArithmetic:
    def test_difference_of_squares(self, qq_sqrt2):
        r2 = qq_sqrt2.generator()
        assert (r2 + 1) * (r2 - 1) == qq_sqrt2.one()

    def test_inverse(self, qq_sqrt2):
        r2 = qq_sqrt2.generator()
        e = qq_sqrt2.one() + r2
        assert e * e.inverse() == qq_sqrt2.one()

    def test_tower_relations(self, tower):
        s = tower.generator()
        r2 = tower.generator_named("r2")
        assert s * s == tower.one() + r2
        assert (s + 1) * (s + 1).inverse() == tower.one()

    def test_power(self, tower):
        s = tower.generator()
        assert s**4 == (tower.one() + tower.generator_named("r2")) ** 2

    def test_rational_detection(self, qq_sqrt2):
        r2 = qq_sqrt2.generator()
        assert (r2 * r2).rational_value() == 2
        assert r2.rational_value() is None

    def test_lift(self, qq_sqrt2, tower):
        r2 = qq_sqrt2.generator()
        lifted = tower.lift(r2)
        assert lifted * lifted == tower.from_rational(2)

    @given(rationals, rationals)
    @settings(max_examples=40)
    def test_field_axioms_sample(self, a, b):
        k = QQ.extend([-3, 0, 1], name="g")
        x = k.from_rational(a) + k.generator()
        y = k.from_rational(b) - k.generator() * 2
        assert (x + y) * (x - y) == x * x - y * y
        if not y.is_zero():
            assert (x / y) * y == x


class TestExtensions:
    def test_reducible_rejected(self):
        with pytest.raises(ReducibleExtension):
            QQ.extend([-4, 0, 1], name="bad", verify=True)  # u^2 - 4 = (u-2)(u+2)

    def test_name_collision(self, qq_sqrt2):
        with pytest.raises(ValueError):
            qq_sqrt2.extend([-5, 0, 1], name="r2")

    def test_degree(self, tower):
        assert tower.degree() == 4


class TestFactorisation:
    def test_over_qq_irreducible(self):
        p = [QQ.from_rational(-2), QQ.zero(), QQ.one()]
        factors = factor_poly(QQ, p)
        assert len(factors) == 1 and factors[0][1] == 1
        assert poly_degree(factors[0][0]) == 2

    def test_over_extension_splits(self, qq_sqrt2):
        p = [qq_sqrt2.from_rational(-2), qq_sqrt2.zero(), qq_sqrt2.one()]
        factors = factor_poly(qq_sqrt2, p)
        assert [poly_degree(f) for f, _ in factors] == [1, 1]

    def test_over_tower(self, tower):
        one_plus = tower.one() + tower.lift(tower.generator_named("r2"))
        p = [-one_plus, tower.zero(), tower.one()]
        factors = factor_poly(tower, p)
        assert [poly_degree(f) for f, _ in factors] == [1, 1]
        # roots are +-s
        s = tower.generator()
        roots = {(-f[0]) for f, _ in factors}
        assert roots == {s, -s}

    def test_multiplicities(self):
        one = QQ.one()
        lin1 = [QQ.from_rational(-1), one]
        lin2 = [QQ.from_rational(2), one]
        p = poly_mul(QQ, poly_mul(QQ, lin1, lin1), lin2)
        factors = factor_poly(QQ, p)
        assert sorted(m for _, m in factors) == [1, 2]

    def test_product_reconstruction(self, qq_sqrt2):
        r2 = qq_sqrt2.generator()
        lin1 = [-r2, qq_sqrt2.one()]
        lin2 = [r2 + 1, qq_sqrt2.one()]
        p = poly_mul(qq_sqrt2, lin1, lin2)
        factors = factor_poly(qq_sqrt2, p)
        total = [qq_sqrt2.one()]
        for f, m in factors:
            for _ in range(m):
                total = poly_mul(qq_sqrt2, total, f)
        assert total == p

    def test_yun(self):
        one = QQ.one()
        lin1 = [QQ.from_rational(-1), one]
        lin2 = [QQ.from_rational(2), one]
        p = poly_mul(QQ, poly_mul(QQ, lin1, lin1), lin2)
        parts = squarefree_decomposition(QQ, p)
        assert [(poly_degree(f), m) for f, m in parts] == [(1, 1), (1, 2)]

    def test_gcd(self, qq_sqrt2):
        r2 = qq_sqrt2.generator()
        a = poly_mul(qq_sqrt2, [-r2, qq_sqrt2.one()], [qq_sqrt2.one(), qq_sqrt2.one()])
        b = poly_mul(qq_sqrt2, [-r2, qq_sqrt2.one()], [qq_sqrt2.from_rational(3), qq_sqrt2.one()])
        g = poly_gcd(qq_sqrt2, a, b)
        assert g == [-r2, qq_sqrt2.one()]
