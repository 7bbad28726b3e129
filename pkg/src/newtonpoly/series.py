"""Truncated power series and unitary polynomials over ground-field towers.

A :class:`TruncatedSeries` stores sparse exact coefficients below an explicit
precision bound (INF for exact polynomials); every operation propagates the
bound pessimistically, and polygon or valuation extraction refuses to answer
when a hidden term could change the result.

A :class:`YPolynomial` is a polynomial in a distinguished variable y whose
coefficients are truncated series in x.  This module extracts Newton polygons
and edge polynomials, decides nondegeneracy of pairs, and computes Sylvester
resultants, the shifted resultant realising the polygon product, and
resultant-valuation intersection numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import field as fld
from .errors import (
    NotAnEdge,
    NotIsolated,
    NotUnitary,
    PrecisionInsufficient,
    YDivisible,
)
from .field import QQ, FieldElement, GroundField
from .polygon import (
    INF,
    ElementaryPolygon,
    NewtonPolygon,
    boundary_at,
    from_support,
    is_inf,
)


def join_fields(k1: GroundField, k2: GroundField) -> GroundField:
    if k1.is_prefix_of(k2):
        return k2
    if k2.is_prefix_of(k1):
        return k1
    raise ValueError("towers are not nested; cannot join")


# -- truncated series ---------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Sparse exact series; exponents >= precision are unknown."""

    field: GroundField
    var: str
    coeffs: tuple  # ((exp, FieldElement), ...) sorted, nonzero, exp < precision
    precision: object = INF

    @staticmethod
    def make(field, var, coeff_map, precision=INF) -> "TruncatedSeries":
        items = []
        for exp, c in sorted(coeff_map.items()):
            if exp < 0:
                raise ValueError("negative exponents are not supported")
            c = field.coerce(c)
            if not c.is_zero() and exp < precision:
                items.append((int(exp), c))
        return TruncatedSeries(field, var, tuple(items), precision)

    @staticmethod
    def zero(field, var, precision=INF) -> "TruncatedSeries":
        return TruncatedSeries(field, var, (), precision)

    @staticmethod
    def constant(field, var, value, precision=INF) -> "TruncatedSeries":
        return TruncatedSeries.make(field, var, {0: value}, precision)

    @staticmethod
    def monomial(field, var, exp, value=1, precision=INF) -> "TruncatedSeries":
        return TruncatedSeries.make(field, var, {exp: value}, precision)

    # -- structure -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return is_inf(self.precision)

    def is_zero(self) -> bool:
        """Identically zero, certified (needs exact precision)."""
        return not self.coeffs and self.is_exact

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    def order(self):
        """Valuation; INF for the exact zero series.

        Raises PrecisionInsufficient when the series vanishes to a finite
        precision bound, since a hidden term may exist.
        """
        if self.coeffs:
            return self.coeffs[0][0]
        if self.is_exact:
            return INF
        raise PrecisionInsufficient(
            f"series vanishes to O({self.var}^{self.precision}); order unknown",
            required=self.precision,
        )

    def degree(self) -> int:
        if not self.is_exact:
            raise PrecisionInsufficient("degree of a truncated series is unknown")
        if not self.coeffs:
            raise ValueError("degree of the zero series")
        return self.coeffs[-1][0]

    def leading_coefficient(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0][1]

    def coefficient(self, exp: int) -> FieldElement:
        if exp >= self.precision:
            raise PrecisionInsufficient(
                f"coefficient of {self.var}^{exp} beyond precision {self.precision}",
                required=exp + 1,
            )
        for e, c in self.coeffs:
            if e == exp:
                return c
        return self.field.zero()

    def as_dict(self) -> dict:
        return {e: c for e, c in self.coeffs}

    # -- field/precision management ---------------------------------------

    def lift_field(self, new_field: GroundField) -> "TruncatedSeries":
        if new_field == self.field:
            return self
        return TruncatedSeries(
            new_field,
            self.var,
            tuple((e, new_field.lift(c)) for e, c in self.coeffs),
            self.precision,
        )

    def truncate(self, precision) -> "TruncatedSeries":
        p = min(self.precision, precision)
        return TruncatedSeries(
            self.field, self.var, tuple((e, c) for e, c in self.coeffs if e < p), p
        )

    def _coerce_pair(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = TruncatedSeries.constant(self.field, self.var, self.field.coerce(other))
        if other.var != self.var:
            raise ValueError(f"variable mismatch {self.var} vs {other.var}")
        k = join_fields(self.field, other.field)
        return self.lift_field(k), other.lift_field(k)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce_pair(other)
        p = min(a.precision, b.precision)
        out = dict(a.coeffs)
        for e, c in b.coeffs:
            out[e] = out[e] + c if e in out else c
        return TruncatedSeries.make(a.field, a.var, out, p)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(
            self.field, self.var, tuple((e, -c) for e, c in self.coeffs), self.precision
        )

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce_pair(other)
        # known part of the product: min(p_a + v_b, p_b + v_a)
        if is_inf(a.precision) and is_inf(b.precision):
            p = INF
        else:
            va = a.coeffs[0][0] if a.coeffs else a.precision
            vb = b.coeffs[0][0] if b.coeffs else b.precision
            p = min(a.precision + vb, b.precision + va)
        out: dict = {}
        for e1, c1 in a.coeffs:
            for e2, c2 in b.coeffs:
                e = e1 + e2
                if e >= p:
                    continue
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return TruncatedSeries.make(a.field, a.var, out, p)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncatedSeries":
        c = self.field.coerce(c)
        return TruncatedSeries.make(
            self.field, self.var, {e: v * c for e, v in self.coeffs}, self.precision
        )

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by var^k; k may be negative if no exponent drops below 0."""
        if self.coeffs and self.coeffs[0][0] + k < 0:
            raise ValueError("shift would create negative exponents")
        return TruncatedSeries(
            self.field,
            self.var,
            tuple((e + k, c) for e, c in self.coeffs),
            self.precision if is_inf(self.precision) else self.precision + k,
        )

    def substitute_pow(self, e: int, new_var=None) -> "TruncatedSeries":
        """Replace var by new_var**e."""
        if e < 1:
            raise ValueError("exponent must be positive")
        p = self.precision if is_inf(self.precision) else self.precision * e
        return TruncatedSeries(
            self.field,
            new_var or self.var,
            tuple((exp * e, c) for exp, c in self.coeffs),
            p,
        )

    def rename(self, new_var: str) -> "TruncatedSeries":
        return TruncatedSeries(self.field, new_var, self.coeffs, self.precision)

    def inverse(self, target=None) -> "TruncatedSeries":
        """Multiplicative inverse of a unit series, to the given precision."""
        if not self.coeffs or self.coeffs[0][0] != 0:
            raise NotUnitary("series inverse needs a unit (order-0) series")
        p = self.precision if target is None else min(self.precision, target)
        if is_inf(p):
            if len(self.coeffs) == 1:
                return TruncatedSeries.constant(self.field, self.var, self.coeffs[0][1].inverse())
            raise PrecisionInsufficient("inverse of a non-constant unit needs a finite target")
        a = self.as_dict()
        inv0 = a[0].inverse()
        out = {0: inv0}
        for n in range(1, p):
            acc = self.field.zero()
            for e, c in self.coeffs:
                if 0 < e <= n:
                    term = out.get(n - e)
                    if term is not None:
                        acc = acc + c * term
            if not acc.is_zero():
                out[n] = -(inv0 * acc)
        return TruncatedSeries.make(self.field, self.var, out, p)

    def exact_div(self, other) -> "TruncatedSeries":
        """Exact polynomial division; both operands must be exact."""
        a, b = self._coerce_pair(other)
        if not (a.is_exact and b.is_exact):
            raise PrecisionInsufficient("exact division needs exact operands")
        if b.is_zero():
            raise ZeroDivisionError("division by the zero series")
        num = dict(a.coeffs)
        den = b.as_dict()
        dlead = max(den)
        dlc_inv = den[dlead].inverse()
        out = {}
        while num:
            nlead = max(num)
            if nlead < dlead:
                raise ArithmeticError("exact division has a remainder")
            q = num[nlead] * dlc_inv
            out[nlead - dlead] = q
            for e, c in den.items():
                tgt = nlead - dlead + e
                v = num.get(tgt, a.field.zero()) - q * c
                if v.is_zero():
                    num.pop(tgt, None)
                else:
                    num[tgt] = v
        return TruncatedSeries.make(a.field, a.var, out, INF)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.precision == other.precision
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.precision, self.field, self.coeffs))

    def __repr__(self):
        return format_series(self)


# -- polynomials in y over series ----------------------------------------------


@dataclass(frozen=True)
class YPolynomial:
    """Polynomial in yvar with TruncatedSeries coefficients in xvar."""

    xvar: str
    yvar: str
    coeffs: tuple  # index = y-degree

    @staticmethod
    def make(coeffs, xvar="x", yvar="y") -> "YPolynomial":
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        common = coeffs[0].field
        for c in coeffs[1:]:
            common = join_fields(common, c.field)
        coeffs = [c.lift_field(common) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        return YPolynomial(xvar, yvar, tuple(coeffs))

    @staticmethod
    def from_terms(terms, field=QQ, xvar="x", yvar="y", precision=INF) -> "YPolynomial":
        """Build from {(xexp, ydeg): coefficient}."""
        maxdeg = max((j for (_, j) in terms), default=0)
        cols: list[dict] = [dict() for _ in range(maxdeg + 1)]
        for (i, j), c in terms.items():
            cols[j][i] = c
        return YPolynomial.make(
            [TruncatedSeries.make(field, xvar, col, precision) for col in cols],
            xvar,
            yvar,
        )

    @property
    def field(self) -> GroundField:
        return self.coeffs[0].field

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_unitary(self) -> bool:
        """Leading coefficient is a unit series (order 0)."""
        lead = self.coeffs[-1]
        return bool(lead.coeffs) and lead.coeffs[0][0] == 0

    def is_y_divisible(self) -> bool:
        return self.coeffs[0].is_zero()

    def lift_field(self, new_field) -> "YPolynomial":
        return YPolynomial(self.xvar, self.yvar, tuple(c.lift_field(new_field) for c in self.coeffs))

    def _coerce_pair(self, other):
        if isinstance(other, (int, Fraction, FieldElement, TruncatedSeries)):
            if not isinstance(other, TruncatedSeries):
                other = TruncatedSeries.constant(self.field, self.xvar, self.field.coerce(other))
            other = YPolynomial.make([other], self.xvar, self.yvar)
        if (other.xvar, other.yvar) != (self.xvar, self.yvar):
            raise ValueError("variable mismatch")
        k = join_fields(self.field, other.field)
        return self.lift_field(k), other.lift_field(k)

    def __add__(self, other):
        a, b = self._coerce_pair(other)
        n = max(len(a.coeffs), len(b.coeffs))
        z = TruncatedSeries.zero(a.field, a.xvar)
        return YPolynomial.make(
            [
                (a.coeffs[i] if i < len(a.coeffs) else z)
                + (b.coeffs[i] if i < len(b.coeffs) else z)
                for i in range(n)
            ],
            a.xvar,
            a.yvar,
        )

    __radd__ = __add__

    def __neg__(self):
        return YPolynomial(self.xvar, self.yvar, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce_pair(other)
        z = TruncatedSeries.zero(a.field, a.xvar)
        out = [z] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ca * cb
        return YPolynomial.make(out, a.xvar, a.yvar)

    __rmul__ = __mul__

    def scale_series(self, s: TruncatedSeries) -> "YPolynomial":
        return YPolynomial.make([c * s for c in self.coeffs], self.xvar, self.yvar)

    def dy(self) -> "YPolynomial":
        if self.degree() == 0:
            return YPolynomial.make(
                [TruncatedSeries.zero(self.field, self.xvar)], self.xvar, self.yvar
            )
        return YPolynomial.make(
            [self.coeffs[k].scale(k) for k in range(1, len(self.coeffs))],
            self.xvar,
            self.yvar,
        )

    def dx(self) -> "YPolynomial":
        out = []
        for c in self.coeffs:
            p = c.precision if is_inf(c.precision) else max(c.precision - 1, 0)
            out.append(
                TruncatedSeries.make(
                    c.field, c.var, {e - 1: v * e for e, v in c.coeffs if e >= 1}, p
                )
            )
        return YPolynomial.make(out, self.xvar, self.yvar)

    def eval_y(self, s: TruncatedSeries) -> TruncatedSeries:
        """Horner evaluation of f(x, s(x)) at a series in the same variable."""
        k = join_fields(self.field, s.field)
        s = s.lift_field(k)
        if s.var != self.xvar:
            raise ValueError("substituted series must use the x-variable")
        acc = TruncatedSeries.zero(k, s.var)
        for c in reversed(self.coeffs):
            acc = acc * s + c.lift_field(k)
        return acc

    def eval_on_branch(self, e: int, yseries: TruncatedSeries) -> TruncatedSeries:
        """Evaluate f(t^e, y(t)) for a branch parameterisation."""
        k = join_fields(self.field, yseries.field)
        ys = yseries.lift_field(k)
        acc = TruncatedSeries.zero(k, ys.var)
        for c in reversed(self.coeffs):
            cs = c.lift_field(k).substitute_pow(e, new_var=ys.var)
            acc = acc * ys + cs
        return acc

    def substitute_linear(self, a, b, c, d) -> "YPolynomial":
        """Exact coordinate change (x, y) -> (a x + b y, c x + d y)."""
        k = self.field
        xs = YPolynomial.from_terms(
            {(1, 0): k.coerce(a), (0, 1): k.coerce(b)}, k, self.xvar, self.yvar
        )
        ys = YPolynomial.from_terms(
            {(1, 0): k.coerce(c), (0, 1): k.coerce(d)}, k, self.xvar, self.yvar
        )
        acc = YPolynomial.from_terms({}, k, self.xvar, self.yvar)
        for coeff in reversed(self.coeffs):
            if not coeff.is_exact:
                raise PrecisionInsufficient("coordinate change needs exact coefficients")
            cx = _poly_of_series(coeff, xs)
            acc = acc * ys + cx
        return acc

    def support(self) -> dict:
        """Known support {(xexp, ydeg): coefficient}."""
        out = {}
        for j, c in enumerate(self.coeffs):
            for e, v in c.coeffs:
                out[(e, j)] = v
        return out

    def multiplicity(self) -> int:
        """Lowest total degree of a known term (order of the curve germ)."""
        supp = self.support()
        if not supp:
            raise ValueError("zero polynomial")
        return min(i + j for i, j in supp)

    def coefficient(self, xexp: int, ydeg: int) -> FieldElement:
        if ydeg >= len(self.coeffs):
            return self.field.zero()
        return self.coeffs[ydeg].coefficient(xexp)

    def __repr__(self):
        return format_polynomial(self)


def _series_at_series(c: TruncatedSeries, xs: "YPolynomial") -> "YPolynomial":
    """Evaluate a series coefficient at a polynomial substitution for x."""
    acc = YPolynomial.from_terms({}, xs.field, xs.xvar, xs.yvar)
    power = YPolynomial.from_terms({(0, 0): xs.field.one()}, xs.field, xs.xvar, xs.yvar)
    prev = 0
    for e, v in c.coeffs:
        for _ in range(e - prev):
            power = power * xs
        prev = e
        acc = acc + power.scale_series(
            TruncatedSeries.constant(xs.field, xs.xvar, v)
        )
    return acc


_poly_of_series = _series_at_series


# -- Newton polygon extraction ---------------------------------------------------


def newton_polygon_of(f: YPolynomial) -> NewtonPolygon:
    """Newton polygon of the support, certified against hidden terms."""
    points = []
    hidden = []
    for j, c in enumerate(f.coeffs):
        if c.coeffs:
            points.append((c.coeffs[0][0], j))
        elif not c.is_exact:
            hidden.append((c.precision, j))
    if not points:
        if hidden:
            raise PrecisionInsufficient("all coefficients vanish to their precision")
        raise ValueError("newton polygon of the zero polynomial")
    poly = from_support(points)
    for px, j in hidden:
        if boundary_at(poly, px) > j:
            need = _deciding_precision(poly, j)
            hint = (
                f"need x-precision {need}"
                if need is not None
                else "no finite precision decides; certify the coefficient exactly"
            )
            raise PrecisionInsufficient(
                f"hidden term in the y^{j} coefficient could change the polygon; " + hint,
                required=need,
            )
    return poly


def _deciding_precision(poly: NewtonPolygon, j: int):
    """Least integer abscissa where the known boundary drops to j, if any."""
    if j < poly.y_offset:
        return None  # a term at this y-degree changes the hull at every order
    x = 0
    while boundary_at(poly, x) > j:
        x += 1
    return x


@dataclass(frozen=True)
class PolygonEdge:
    """A compact edge of N(f), with its top vertex position."""

    elem: ElementaryPolygon
    top: tuple  # (A, B + h)

    @property
    def bottom(self):
        return (self.top[0] + self.elem.ell, self.top[1] - self.elem.h)


def polygon_edges(f: YPolynomial):
    """Compact edges of N(f), steepest first."""
    poly = newton_polygon_of(f)
    verts = poly.vertices()
    return [
        PolygonEdge(e, verts[i])
        for i, e in enumerate(poly.edges)
    ]


def edge_polynomial(f: YPolynomial, edge) -> YPolynomial:
    """Sub-sum of f's terms whose exponents lie on the given compact edge."""
    edges = polygon_edges(f)
    if isinstance(edge, ElementaryPolygon):
        matches = [e for e in edges if e.elem == edge]
        if not matches:
            raise NotAnEdge(f"{edge!r} is not an edge of N(f)")
        edge = matches[0]
    elif isinstance(edge, PolygonEdge):
        if edge not in edges:
            raise NotAnEdge(f"{edge!r} is not an edge of N(f)")
    else:
        raise TypeError("edge must be an ElementaryPolygon or PolygonEdge")
    (ax, ay), (bx, by) = edge.top, edge.bottom
    terms = {}
    for (i, j), v in f.support().items():
        # on segment iff cross product vanishes and within the x-range
        if (bx - ax) * (j - ay) - (by - ay) * (i - ax) == 0 and ax <= i <= bx:
            terms[(i, j)] = v
    return YPolynomial.from_terms(terms, f.field, f.xvar, f.yvar)


def edge_lattice_coefficients(f: YPolynomial, edge: PolygonEdge):
    """Coefficients c_0..c_g of the lattice points along the edge, top down.

    The edge {l/h} with g = gcd(l, h), l = g*q, h = g*p carries lattice
    points (A + j*q, B + h - j*p); c_j is f's coefficient there.
    """
    from math import gcd

    ell, h = edge.elem.ell, edge.elem.h
    g = gcd(ell, h)
    q, p = ell // g, h // g
    ax, ay = edge.top
    return [f.coefficient(ax + j * q, ay - j * p) for j in range(g + 1)], q, p, g


def dehomogenized_edge_poly(f: YPolynomial, edge: PolygonEdge):
    """Polynomial psi(u) whose nonzero roots are the leading coefficients
    of the roots of f with valuation l/h along this edge."""
    cs, q, p, g = edge_lattice_coefficients(f, edge)
    k = f.field
    psi = [k.zero()] * (g * p + 1)
    for j, c in enumerate(cs):
        psi[(g - j) * p] = c
    return fld._poly_strip(psi)


def is_nondegenerate_pair(f1: YPolynomial, f2: YPolynomial) -> bool:
    """No pair of edge polynomials shares a root off the coordinate axes.

    Decided exactly: the dehomogenised edge polynomials (one variable, the
    leading-coefficient variable of each edge's slope substitution) must have
    trivial gcd for every pair of compact edges.
    """
    k = join_fields(f1.field, f2.field)
    f1, f2 = f1.lift_field(k), f2.lift_field(k)
    for e1 in polygon_edges(f1):
        psi1 = dehomogenized_edge_poly(f1, e1)
        for e2 in polygon_edges(f2):
            psi2 = dehomogenized_edge_poly(f2, e2)
            if fld.poly_degree(fld.poly_gcd(k, psi1, psi2)) > 0:
                return False
    return True


# -- determinants and resultants ---------------------------------------------


class _SeriesRing:
    """Bareiss ring adapter for exact series."""

    def __init__(self, field, var):
        self.zero = TruncatedSeries.zero(field, var)
        self.one = TruncatedSeries.constant(field, var, 1)

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def div(a, b):
        return a.exact_div(b)

    @staticmethod
    def is_zero(a):
        return a.is_zero()


class _YPolyRing:
    """Bareiss ring adapter for polynomials in T over exact series."""

    def __init__(self, field, xvar, yvar):
        self.zero = YPolynomial.from_terms({}, field, xvar, yvar)
        self.one = YPolynomial.from_terms({(0, 0): field.one()}, field, xvar, yvar)

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def div(a, b):
        return _ypoly_exact_div(a, b)

    @staticmethod
    def is_zero(a):
        return a.is_zero()


def _ypoly_exact_div(num: YPolynomial, den: YPolynomial) -> YPolynomial:
    """Exact division in (K[x])[T], long division with exact series division."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    z = TruncatedSeries.zero(num.field, num.xvar)
    ncoeffs = list(num.coeffs)
    dd = den.degree()
    dlc = den.coeffs[-1]
    out = [z] * max(len(ncoeffs) - dd, 1)
    while True:
        while len(ncoeffs) > 1 and ncoeffs[-1].is_zero():
            ncoeffs.pop()
        if len(ncoeffs) == 1 and ncoeffs[0].is_zero():
            break
        nd = len(ncoeffs) - 1
        if nd < dd:
            raise ArithmeticError("exact polynomial division has a remainder")
        q = ncoeffs[-1].exact_div(dlc)
        out[nd - dd] = out[nd - dd] + q
        for i, c in enumerate(den.coeffs):
            ncoeffs[nd - dd + i] = ncoeffs[nd - dd + i] - q * c
    return YPolynomial.make(out, num.xvar, num.yvar)


def bareiss_determinant(rows, ring):
    """Fraction-free determinant over an integral domain adapter."""
    n = len(rows)
    if n == 0:
        return ring.one
    m = [list(r) for r in rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            pivot = next((i for i in range(k + 1, n) if not ring.is_zero(m[i][k])), None)
            if pivot is None:
                return ring.zero
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(m[i][j], m[k][k]), ring.mul(m[i][k], m[k][j]))
                m[i][j] = ring.div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = ring.sub(ring.zero, det)
    return det


def _require_exact_unitary(f: YPolynomial, what: str):
    lead = f.coeffs[-1]
    if not lead.coeffs:
        if lead.is_exact:
            raise ValueError(f"{what}: zero polynomial")
        raise PrecisionInsufficient(f"{what}: leading coefficient vanishes to precision")
    if lead.coeffs[0][0] != 0:
        raise NotUnitary(f"{what}: leading coefficient has positive order")
    for c in f.coeffs:
        if not c.is_exact:
            raise PrecisionInsufficient(
                f"{what}: resultants require exact (untruncated) coefficients"
            )


def sylvester_resultant(p1: YPolynomial, p2: YPolynomial) -> TruncatedSeries:
    """Resultant with respect to y, as an exact series in x."""
    k = join_fields(p1.field, p2.field)
    p1, p2 = p1.lift_field(k), p2.lift_field(k)
    _require_exact_unitary(p1, "sylvester_resultant")
    _require_exact_unitary(p2, "sylvester_resultant")
    m, n = p1.degree(), p2.degree()
    if m == 0 and n == 0:
        return TruncatedSeries.constant(k, p1.xvar, 1)
    ring = _SeriesRing(k, p1.xvar)
    size = m + n
    rows = []
    desc1 = list(reversed(p1.coeffs))
    desc2 = list(reversed(p2.coeffs))
    for i in range(n):
        rows.append([ring.zero] * i + desc1 + [ring.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ring.zero] * i + desc2 + [ring.zero] * (size - n - 1 - i))
    return bareiss_determinant(rows, ring)


def shifted_resultant(p1: YPolynomial, p2: YPolynomial) -> YPolynomial:
    """Res_U(P1(T+U), P2(U)): a unitary polynomial of degree deg P1 * deg P2
    in T whose constant term is the plain resultant.

    For nondegenerate pairs its Newton polygon realises N(P1) * N(P2); the
    polygon of the output must be read with the T-axis horizontal (see
    resultant_polygon), the orientation under which the product's height is
    the valuation of the resultant.
    """
    k = join_fields(p1.field, p2.field)
    p1, p2 = p1.lift_field(k), p2.lift_field(k)
    _require_exact_unitary(p1, "shifted_resultant")
    _require_exact_unitary(p2, "shifted_resultant")
    if p1.is_y_divisible() or p2.is_y_divisible():
        raise YDivisible("shifted resultant requires polynomials not divisible by y")
    m, n = p1.degree(), p2.degree()
    ring = _YPolyRing(k, p1.xvar, "T")
    # P1(T+U) as a polynomial in U: coefficient of U^k is sum_j C(j,k) a_j T^(j-k)
    p1_in_u = []
    for kk in range(m + 1):
        terms = {}
        for j in range(kk, m + 1):
            series = p1.coeffs[j]
            for e, v in series.coeffs:
                key = (e, j - kk)
                add = v * comb(j, kk)
                terms[key] = terms[key] + add if key in terms else add
        p1_in_u.append(YPolynomial.from_terms(terms, k, p1.xvar, "T"))
    p2_in_u = [
        YPolynomial.make([c], p1.xvar, "T") for c in p2.coeffs
    ]
    size = m + n
    rows = []
    desc1 = list(reversed(p1_in_u))
    desc2 = list(reversed(p2_in_u))
    for i in range(n):
        rows.append([ring.zero] * i + desc1 + [ring.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ring.zero] * i + desc2 + [ring.zero] * (size - n - 1 - i))
    res = bareiss_determinant(rows, ring)
    assert res.degree() == m * n, "shifted resultant degree must be deg P1 * deg P2"
    lead = res.coeffs[-1]
    if not lead.coeffs or lead.coeffs[0][0] != 0:
        raise NotUnitary("shifted resultant leading coefficient is not a unit")
    # keep the raw P1-top-rows determinant: evaluating the same matrix at
    # T = 0 gives the plain resultant, so Res^V(0) = Res holds on the nose;
    # the output is (-1)^(deg P1 deg P2) times the monic product of root
    # differences, and signs are not contract bearing
    return res


def realization_polygon(f: YPolynomial) -> NewtonPolygon:
    """Newton polygon with the distinguished variable on the horizontal axis.

    The product realization N(Res_U(P1(T+U), P2(U))) = N(P1) * N(P2) is an
    identity of polygons in this orientation (apply it to both operands and
    the output); in the standard orientation the two sides differ on
    asymmetric pairs, e.g. P1 = y - x, P2 = y^2 - 2x.  The height of the
    product is then the valuation of the plain resultant.
    """
    from .polygon import transpose

    return transpose(newton_polygon_of(f))


def intersection_number(f1: YPolynomial, f2: YPolynomial) -> int:
    """ord_x Res_y(f1, f2), the colength of the ideal pair."""
    res = sylvester_resultant(f1, f2)
    order = res.order()
    if is_inf(order):
        raise NotIsolated("resultant vanishes identically")
    return order


# -- text format ----------------------------------------------------------------


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        ch = self.text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", self.text[self.pos:j], j)
        if ch.isalpha() or ch == "_":
            j = self.pos
            while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                j += 1
            return ("name", self.text[self.pos:j], j)
        if ch in "+-*/^():;,=<>":
            return ("op", ch, self.pos + 1)
        raise ValueError(f"unexpected character {ch!r} at {self.pos}")

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of input")
        self.pos = tok[2]
        return tok

    def accept(self, kind, value=None):
        tok = self.peek()
        if tok and tok[0] == kind and (value is None or tok[1] == value):
            self.pos = tok[2]
            return tok
        return None

    def expect(self, kind, value=None):
        tok = self.accept(kind, value)
        if tok is None:
            raise ValueError(f"expected {value or kind} at position {self.pos}")
        return tok

    def at_end(self):
        return self.peek() is None


class _PolyValue:
    """Value during parsing: {(xexp, ydeg): FieldElement} plus a precision."""

    __slots__ = ("terms", "precision")

    def __init__(self, terms, precision=INF):
        self.terms = terms
        self.precision = precision


def _pv_add(field, a, b, sub=False):
    out = dict(a.terms)
    for key, v in b.terms.items():
        w = -v if sub else v
        out[key] = out[key] + w if key in out else w
    return _PolyValue({k: v for k, v in out.items() if not v.is_zero()},
                      min(a.precision, b.precision))


def _pv_mul(field, a, b):
    out = {}
    for (i1, j1), v1 in a.terms.items():
        for (i2, j2), v2 in b.terms.items():
            key = (i1 + i2, j1 + j2)
            v = v1 * v2
            out[key] = out[key] + v if key in out else v
    return _PolyValue({k: v for k, v in out.items() if not v.is_zero()},
                      min(a.precision, b.precision))


class _Parser:
    def __init__(self, text, field, xvar, yvar):
        self.tz = _Tokenizer(text)
        self.field = field
        self.xvar = xvar
        self.yvar = yvar

    def const(self, q):
        return _PolyValue({(0, 0): self.field.coerce(q)} if q else {})

    def parse_expr(self):
        if self.tz.accept("op", "-"):
            acc = _pv_add(self.field, self.const(0), self.parse_term(), sub=True)
        else:
            acc = self.parse_term()
        while True:
            if self.tz.accept("op", "+"):
                # allow a trailing O(x^p) precision marker
                o = self.try_o_term()
                if o is not None:
                    acc.precision = min(acc.precision, o)
                    continue
                acc = _pv_add(self.field, acc, self.parse_term())
            elif self.tz.accept("op", "-"):
                acc = _pv_add(self.field, acc, self.parse_term(), sub=True)
            else:
                return acc

    def try_o_term(self):
        save = self.tz.pos
        tok = self.tz.accept("name", "O")
        if tok is None:
            return None
        if not self.tz.accept("op", "("):
            self.tz.pos = save
            return None
        name = self.tz.expect("name")[1]
        if name != self.xvar:
            raise ValueError(f"precision marker must use {self.xvar}")
        if self.tz.accept("op", "^"):
            p = int(self.tz.expect("int")[1])
        else:
            p = 1
        self.tz.expect("op", ")")
        return p

    def parse_term(self):
        acc = self.parse_power()
        while True:
            if self.tz.accept("op", "*"):
                acc = _pv_mul(self.field, acc, self.parse_power())
            elif self.tz.accept("op", "/"):
                den = self.parse_power()
                if set(den.terms) - {(0, 0)}:
                    raise ValueError("division only by constants")
                inv = den.terms[(0, 0)].inverse()
                acc = _pv_mul(self.field, acc, _PolyValue({(0, 0): inv}))
            else:
                return acc

    def parse_power(self):
        base = self.parse_atom()
        if self.tz.accept("op", "^"):
            n = int(self.tz.expect("int")[1])
            acc = self.const(1)
            for _ in range(n):
                acc = _pv_mul(self.field, acc, base)
            return acc
        return base

    def parse_atom(self):
        if self.tz.accept("op", "("):
            inner = self.parse_expr()
            self.tz.expect("op", ")")
            return inner
        if self.tz.accept("op", "-"):
            return _pv_add(self.field, self.const(0), self.parse_power(), sub=True)
        tok = self.tz.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        if tok[0] == "int":
            self.tz.next()
            return self.const(int(tok[1]))
        if tok[0] == "name":
            self.tz.next()
            name = tok[1]
            if name == self.xvar:
                return _PolyValue({(1, 0): self.field.one()})
            if name == self.yvar:
                return _PolyValue({(0, 1): self.field.one()})
            try:
                return _PolyValue({(0, 0): self.field.generator_named(name)})
            except KeyError:
                raise ValueError(f"unknown name {name!r}") from None
        raise ValueError(f"unexpected token {tok[1]!r}")


def parse_polynomial(text, field=None, xvar="x", yvar="y") -> YPolynomial:
    """Parse the sparse text format, with optional adjoin clauses.

    Example: ``adjoin u: u^2 - 3; y^2 - u*x^3``.
    """
    field = field or QQ
    parts = [p for p in text.split(";") if p.strip()]
    for clause in parts[:-1]:
        field = _parse_adjoin(clause, field)
    body = parts[-1] if parts else ""
    parser = _Parser(body, field, xvar, yvar)
    value = parser.parse_expr()
    if not parser.tz.at_end():
        raise ValueError(f"trailing input at position {parser.tz.pos}")
    return YPolynomial.from_terms(value.terms, field, xvar, yvar, value.precision)


def parse_series(text, field=None, var="x") -> TruncatedSeries:
    poly = parse_polynomial(text, field=field, xvar=var, yvar="_unused_y")
    if poly.degree() > 0:
        raise ValueError("input is not a univariate series")
    return poly.coeffs[0]


def _parse_adjoin(clause, field) -> GroundField:
    tz = _Tokenizer(clause)
    tz.expect("name", "adjoin")
    name = tz.expect("name")[1]
    tz.expect("op", ":")
    rest = clause[tz.pos:]
    # parse the defining polynomial with the new name acting as the variable
    parser = _Parser(rest, field, xvar=name, yvar="_unused_y")
    value = parser.parse_expr()
    if not parser.tz.at_end():
        raise ValueError("trailing input in adjoin clause")
    deg = max(i for i, _ in value.terms)
    coeffs = [field.zero() for _ in range(deg + 1)]
    for (i, j), v in value.terms.items():
        assert j == 0
        coeffs[i] = v
    return field.extend(coeffs, name=name, verify=True)


def _format_field_coeff(c: FieldElement, *, lead=False):
    q = c.rational_value()
    if q is not None:
        text = str(q)
        neg = text.startswith("-")
        mag = text[1:] if neg else text
        return neg, mag
    return False, f"({c!r})"


def _format_monomial(mag, xvar, e, yvar=None, j=0):
    pieces = []
    if mag != "1" or (e == 0 and j == 0):
        pieces.append(mag)
    if e:
        pieces.append(f"{xvar}^{e}" if e > 1 else xvar)
    if j:
        pieces.append(f"{yvar}^{j}" if j > 1 else yvar)
    return "*".join(pieces)


def format_series(s: TruncatedSeries) -> str:
    bits = []
    for e, c in s.coeffs:
        neg, mag = _format_field_coeff(c)
        bits.append((neg, _format_monomial(mag, s.var, e)))
    if bits:
        text = ("-" if bits[0][0] else "") + bits[0][1]
        for neg, term in bits[1:]:
            text += (" - " if neg else " + ") + term
    else:
        text = "0"
    if not is_inf(s.precision):
        tail = f"O({s.var}^{s.precision})"
        text = f"{text} + {tail}" if text != "0" else tail
    return text


def format_polynomial(f: YPolynomial) -> str:
    """Canonical sparse term list; bit-exact under parse_polynomial.

    Polynomials must have one uniform precision across coefficients (exact
    counts as uniform); the known terms are printed flat with at most one
    trailing O(x^p) marker.
    """
    precisions = {c.precision for c in f.coeffs}
    if len(precisions) > 1:
        raise ValueError("text format requires a uniform coefficient precision")
    prec = precisions.pop()
    items = []
    for j in range(f.degree(), -1, -1):
        for e, c in f.coeffs[j].coeffs:
            items.append((j, e, c))
    items.sort(key=lambda t: (-t[0], t[1]))
    bits = []
    for j, e, c in items:
        neg, mag = _format_field_coeff(c)
        bits.append((neg, _format_monomial(mag, f.xvar, e, f.yvar, j)))
    if bits:
        out = ("-" if bits[0][0] else "") + bits[0][1]
        for neg, term in bits[1:]:
            out += (" - " if neg else " + ") + term
    else:
        out = "0"
    if not is_inf(prec):
        tail = f"O({f.xvar}^{prec})"
        out = f"{out} + {tail}" if out != "0" else tail
    return out
