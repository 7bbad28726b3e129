"""Exact ground fields: towers of simple algebraic extensions over Q.

An element of a tower with steps of degrees d_1, ..., d_m is stored as nested
tuples: a level-0 element is a Fraction, a level-k element is a tuple of d_k
level-(k-1) elements (coefficients in the k-th generator).  All arithmetic is
exact; inverses come from the extended Euclidean algorithm one level down.

Univariate factorisation over Q delegates to sympy; over a proper tower it
uses Trager's norm descent (iterated resultants eliminate the generators,
sympy factors the rational norm, gcds over the tower lift the factors).  The
lifted factorisation is re-verified by multiplying back, so a badly chosen
shift can only cause a retry, never a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import ReducibleExtension

_RESERVED_NAMES = {"x", "y", "t", "T", "U", "O", "inf"}


@dataclass(frozen=True)
class ExtensionStep:
    name: str
    minpoly: tuple  # monic coefficients over the previous level, ascending

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1


class GroundField:
    """Immutable tower of simple extensions of the rationals."""

    __slots__ = ("steps",)

    def __init__(self, steps=()):
        object.__setattr__(self, "steps", tuple(steps))

    def __setattr__(self, name, value):
        raise AttributeError("GroundField is immutable")

    def __eq__(self, other):
        return isinstance(other, GroundField) and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        if not self.steps:
            return "QQ"
        parts = ", ".join(
            f"{s.name}: {self._poly_str(s.minpoly, s.name, level)}"
            for level, s in enumerate(self.steps)
        )
        return f"QQ[{parts}]"

    def _poly_str(self, coeffs, var, level):
        terms = []
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if _data_is_zero(c):
                continue
            cs = _data_str(c, self, level)
            if k == 0:
                terms.append(cs)
            else:
                head = "" if cs == "1" else ("-" if cs == "-1" else cs + "*")
                terms.append(f"{head}{var}^{k}" if k > 1 else f"{head}{var}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    # -- basic structure ---------------------------------------------------

    @property
    def level(self) -> int:
        return len(self.steps)

    def degree(self) -> int:
        d = 1
        for s in self.steps:
            d *= s.degree
        return d

    def is_prefix_of(self, other: "GroundField") -> bool:
        return self.steps == other.steps[: self.level]

    # -- element constructors ----------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, _const(Fraction(0), self.level, self))

    def one(self) -> "FieldElement":
        return FieldElement(self, _const(Fraction(1), self.level, self))

    def from_rational(self, q) -> "FieldElement":
        return FieldElement(self, _const(Fraction(q), self.level, self))

    def generator(self, index=None) -> "FieldElement":
        """The top generator, or the one at the given step index."""
        if index is None:
            index = self.level - 1
        if not 0 <= index < self.level:
            raise ValueError("no such generator")
        data = _gen_data(self, index)
        return FieldElement(self, data)

    def generator_named(self, name: str) -> "FieldElement":
        for i, s in enumerate(self.steps):
            if s.name == name:
                return self.generator(i)
        raise KeyError(name)

    def lift(self, elem: "FieldElement") -> "FieldElement":
        """Embed an element of a prefix tower into this tower."""
        if elem.field == self:
            return elem
        if not elem.field.is_prefix_of(self):
            raise ValueError("element does not live in a prefix of this field")
        data = elem.data
        for k in range(elem.field.level, self.level):
            deg = self.steps[k].degree
            pad = _const(Fraction(0), k, self)
            data = (data,) + tuple(pad for _ in range(deg - 1))
        return FieldElement(self, data)

    def extend(self, minpoly_coeffs, name=None, verify=False) -> "GroundField":
        """Adjoin a root of a monic polynomial over this field.

        With verify=True the polynomial is factored first and a reducible
        input raises ReducibleExtension.
        """
        coeffs = [self.coerce(c) for c in minpoly_coeffs]
        coeffs = _poly_strip(coeffs)
        if len(coeffs) < 2:
            raise ValueError("defining polynomial must have positive degree")
        if not (coeffs[-1] - self.one()).is_zero():
            inv = coeffs[-1].inverse()
            coeffs = [c * inv for c in coeffs]
        if name is None:
            name = f"a{self.level + 1}"
        if name in _RESERVED_NAMES or any(s.name == name for s in self.steps):
            raise ValueError(f"generator name {name!r} unavailable")
        if verify and len(coeffs) > 2:
            factors = factor_poly(self, coeffs)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ReducibleExtension(
                    f"defining polynomial for {name} is reducible over {self!r}"
                )
        step = ExtensionStep(name, tuple(c.data for c in coeffs))
        return GroundField(self.steps + (step,))

    def coerce(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return self.lift(value)
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")


QQ = GroundField()


# -- raw data helpers --------------------------------------------------------


def _const(q: Fraction, level: int, field: GroundField):
    data = q
    for k in range(level):
        deg = field.steps[k].degree
        data = (data,) + tuple(_const(Fraction(0), k, field) for _ in range(deg - 1))
    return data


def _gen_data(field: GroundField, index: int):
    deg = field.steps[index].degree
    zero = _const(Fraction(0), index, field)
    one = _const(Fraction(1), index, field)
    if deg == 1:
        # degenerate degree-1 step: generator is a constant
        mp = field.steps[index].minpoly
        data = _dneg(index, mp[0])
    else:
        data = (zero, one) + tuple(zero for _ in range(deg - 2))
    for k in range(index + 1, field.level):
        d = field.steps[k].degree
        pad = _const(Fraction(0), k, field)
        data = (data,) + tuple(pad for _ in range(d - 1))
    return data


def _data_is_zero(data) -> bool:
    if isinstance(data, Fraction):
        return data == 0
    return all(_data_is_zero(c) for c in data)


def _dadd(level, a, b):
    if level == 0:
        return a + b
    return tuple(_dadd(level - 1, x, y) for x, y in zip(a, b))


def _dneg(level, a):
    if level == 0:
        return -a
    return tuple(_dneg(level - 1, x) for x in a)


def _dsub(level, a, b):
    return _dadd(level, a, _dneg(level, b))


def _dscale(level, a, q: Fraction):
    if level == 0:
        return a * q
    return tuple(_dscale(level - 1, x, q) for x in a)


def _dmul(field, level, a, b):
    if level == 0:
        return a * b
    deg = len(a)
    lower = level - 1
    zero = _const(Fraction(0), lower, field)
    prod = [zero] * (2 * deg - 1)
    for i, ai in enumerate(a):
        if _data_is_zero(ai):
            continue
        for j, bj in enumerate(b):
            if _data_is_zero(bj):
                continue
            prod[i + j] = _dadd(lower, prod[i + j], _dmul(field, lower, ai, bj))
    mp = field.steps[level - 1].minpoly
    # reduce modulo the monic minimal polynomial
    for k in range(len(prod) - 1, deg - 1, -1):
        c = prod[k]
        if _data_is_zero(c):
            continue
        for j in range(deg):
            prod[k - deg + j] = _dsub(
                lower, prod[k - deg + j], _dmul(field, lower, c, mp[j])
            )
    return tuple(prod[:deg])


def _dinv(field, level, a):
    if level == 0:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a
    # extended Euclid between a (as poly in the top generator) and the minpoly
    lower = level - 1
    mp = field.steps[level - 1].minpoly
    r0 = list(mp)
    r1 = list(a)
    s0 = [_const(Fraction(0), lower, field)]
    s1 = [_const(Fraction(1), lower, field)]
    while True:
        r1 = _rstrip(r1)
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        if len(r1) == 1:
            c_inv = _dinv(field, lower, r1[0])
            res = [_dmul(field, lower, c_inv, c) for c in s1]
            break
        q, r = _rdivmod(field, lower, r0, r1)
        s0, s1 = s1, _rsub(field, lower, s0, _rmul(field, lower, q, s1))
        r0, r1 = r1, r
    deg = len(mp) - 1
    zero = _const(Fraction(0), lower, field)
    assert len(res) <= deg, "Bezout coefficient exceeded the extension degree"
    return tuple((res + [zero] * deg)[:deg])


def _rstrip(poly):
    while poly and _data_is_zero(poly[-1]):
        poly.pop()
    return poly


def _rsub(field, level, a, b):
    n = max(len(a), len(b))
    zero = _const(Fraction(0), level, field)
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(_dsub(level, x, y))
    return out


def _rmul(field, level, a, b):
    zero = _const(Fraction(0), level, field)
    out = [zero] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if _data_is_zero(ai):
            continue
        for j, bj in enumerate(b):
            if _data_is_zero(bj):
                continue
            out[i + j] = _dadd(level, out[i + j], _dmul(field, level, ai, bj))
    return out


def _rdivmod(field, level, num, den):
    num = list(num)
    den = _rstrip(list(den))
    lc_inv = _dinv(field, level, den[-1])
    quot = [_const(Fraction(0), level, field)] * max(len(num) - len(den) + 1, 0)
    while len(_rstrip(num)) >= len(den):
        num = _rstrip(num)
        shift = len(num) - len(den)
        factor = _dmul(field, level, num[-1], lc_inv)
        quot[shift] = _dadd(level, quot[shift], factor)
        for i, c in enumerate(den):
            num[shift + i] = _dsub(level, num[shift + i], _dmul(field, level, factor, c))
    return quot, _rstrip(num)


def _data_str(data, field: GroundField, level: int) -> str:
    if level == 0:
        return str(data)
    name = field.steps[level - 1].name
    terms = []
    for k, c in enumerate(data):
        if _data_is_zero(c):
            continue
        cs = _data_str(c, field, level - 1)
        if any(op in cs[1:] for op in "+-") and level - 1 > 0:
            cs = f"({cs})"
        if k == 0:
            terms.append(cs)
        elif cs == "1":
            terms.append(name if k == 1 else f"{name}^{k}")
        elif cs == "-1":
            terms.append(f"-{name}" if k == 1 else f"-{name}^{k}")
        else:
            terms.append(f"{cs}*{name}" if k == 1 else f"{cs}*{name}^{k}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class FieldElement:
    """Element of a GroundField tower; arithmetic is exact and immutable."""

    field: GroundField
    data: object

    def is_zero(self) -> bool:
        return _data_is_zero(self.data)

    def is_rational(self) -> bool:
        return self.rational_value() is not None

    def rational_value(self):
        data = self.data
        level = self.field.level
        while level > 0:
            if any(not _data_is_zero(c) for c in data[1:]):
                return None
            data = data[0]
            level -= 1
        return data

    def _binary(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            if self.field.is_prefix_of(other.field):
                return other.field.lift(self), other
            if other.field.is_prefix_of(self.field):
                return self, self.field.lift(other)
            raise ValueError("elements of unrelated towers")
        return self, other

    def __add__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, _dadd(a.field.level, a.data, b.data))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, _dneg(self.field.level, self.data))

    def __sub__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, _dsub(a.field.level, a.data, b.data))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, _dmul(a.field, a.field.level, a.data, b.data))

    __rmul__ = __mul__

    def inverse(self):
        if self.field.level == 0:
            return FieldElement(self.field, Fraction(1) / self.data)
        return FieldElement(self.field, _dinv(self.field, self.field.level, self.data))

    def __truediv__(self, other):
        pair = self._binary(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        try:
            a, b = self._binary(other)
        except ValueError:
            return False
        return a.data == b.data

    def __hash__(self):
        return hash((self.field, self.data))

    def __repr__(self):
        return _data_str(self.data, self.field, self.field.level)


# -- polynomials over a field -------------------------------------------------
# Polynomials are lists of FieldElement, ascending degree, stripped.


def _poly_strip(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def poly_degree(p) -> int:
    return len(p) - 1


def poly_add(field, p, q):
    n = max(len(p), len(q))
    z = field.zero()
    return _poly_strip([
        (p[i] if i < len(p) else z) + (q[i] if i < len(q) else z) for i in range(n)
    ])


def poly_sub(field, p, q):
    return poly_add(field, p, [-c for c in q])


def poly_mul(field, p, q):
    if not p or not q:
        return []
    z = field.zero()
    out = [z] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return _poly_strip(out)


def poly_scale(field, p, c):
    return _poly_strip([a * c for a in p])


def poly_divmod(field, num, den):
    num = list(num)
    den = _poly_strip(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lc_inv = den[-1].inverse()
    q = [field.zero()] * max(len(num) - len(den) + 1, 0)
    while len(_poly_strip(num)) >= len(den):
        num = _poly_strip(num)
        shift = len(num) - len(den)
        f = num[-1] * lc_inv
        q[shift] = q[shift] + f
        for i, c in enumerate(den):
            num[shift + i] = num[shift + i] - f * c
    return _poly_strip(q), _poly_strip(num)


def poly_monic(field, p):
    p = _poly_strip(list(p))
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(field, p, q):
    a, b = _poly_strip(list(p)), _poly_strip(list(q))
    while b:
        _, r = poly_divmod(field, a, b)
        a, b = b, r
    return poly_monic(field, a)


def poly_diff(field, p):
    return _poly_strip([p[i] * i for i in range(1, len(p))])


def poly_eval(field, p, x):
    acc = field.zero()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_compose_linear(field, p, a, b):
    """p(a*u + b) by Horner."""
    acc = []
    lin = [b, a]
    for c in reversed(p):
        acc = poly_add(field, poly_mul(field, acc, lin), [c])
    return acc


def squarefree_decomposition(field, p):
    """Yun's algorithm; returns [(monic squarefree factor, multiplicity)]."""
    p = poly_monic(field, p)
    if poly_degree(p) < 1:
        return []
    d = poly_diff(field, p)
    a0 = poly_gcd(field, p, d)
    b, _ = poly_divmod(field, p, a0)
    c, _ = poly_divmod(field, d, a0)
    out = []
    i = 1
    dcur = poly_sub(field, c, poly_diff(field, b))
    while poly_degree(b) > 0:
        ai = poly_gcd(field, b, dcur)
        if poly_degree(ai) > 0:
            out.append((poly_monic(field, ai), i))
        b, _ = poly_divmod(field, b, ai)
        c, _ = poly_divmod(field, dcur, ai)
        dcur = poly_sub(field, c, poly_diff(field, b))
        i += 1
    return out


# -- factorisation -------------------------------------------------------------


def _rational_poly_to_sympy(coeffs, u):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], u)


def _sympy_poly_to_rational(poly) -> list[Fraction]:
    return [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


def _factor_over_qq(field, p):
    u = sympy.Symbol("u")
    coeffs = [c.rational_value() for c in p]
    assert all(c is not None for c in coeffs)
    spoly = _rational_poly_to_sympy(coeffs, u)
    _, factors = spoly.factor_list()
    out = []
    for fac, mult in factors:
        fc = _sympy_poly_to_rational(sympy.Poly(fac, u))
        lead = fc[-1]
        fc = [c / lead for c in fc]
        out.append(([field.from_rational(c) for c in fc], int(mult)))
    out.sort(key=lambda fm: (poly_degree(fm[0]), _poly_sort_key(fm[0])))
    return out


def _poly_sort_key(p):
    return tuple(repr(c) for c in p)


def _data_to_sympy(data, level, symbols):
    if level == 0:
        return sympy.Rational(data.numerator, data.denominator)
    return sympy.Add(*[
        _data_to_sympy(c, level - 1, symbols) * symbols[level - 1] ** k
        for k, c in enumerate(data)
    ])


def _norm_to_qq(field, p, u):
    """Norm of p in K[u] down to Q[u] via iterated resultants."""
    symbols = [sympy.Symbol(s.name) for s in field.steps]
    expr = sympy.Add(*[
        _data_to_sympy(c.data, field.level, symbols) * u ** k for k, c in enumerate(p)
    ])
    for level in range(field.level, 0, -1):
        step = field.steps[level - 1]
        mp = sympy.Add(*[
            _data_to_sympy(c, level - 1, symbols) * symbols[level - 1] ** k
            for k, c in enumerate(step.minpoly)
        ])
        expr = sympy.resultant(sympy.expand(mp), sympy.expand(expr), symbols[level - 1])
    return sympy.Poly(sympy.expand(expr), u)


def _trager_factor(field, p):
    """Factor a monic squarefree p over a proper tower."""
    u = sympy.Symbol("u")
    gamma = field.generator(0)
    for i in range(1, field.level):
        gamma = gamma + field.generator(i)
    for s in (0, 1, -1, 2, -2, 3, -3, 5, -5, 7):
        shift = field.from_rational(s) * gamma
        shifted = poly_compose_linear(field, p, field.one(), -shift)
        norm = _norm_to_qq(field, shifted, u)
        if norm.degree() != poly_degree(p) * field.degree():
            continue
        if sympy.degree(sympy.gcd(norm, norm.diff(u)), u) > 0:
            continue
        _, rational_factors = norm.factor_list()
        pieces = []
        for fac, _ in rational_factors:
            fc = _sympy_poly_to_rational(sympy.Poly(fac, u))
            lifted = [field.from_rational(c / fc[-1]) for c in fc]
            g = poly_gcd(field, shifted, lifted)
            if poly_degree(g) > 0:
                pieces.append(poly_compose_linear(field, g, field.one(), shift))
        product = [field.one()]
        for piece in pieces:
            product = poly_mul(field, product, piece)
        if _poly_strip(poly_sub(field, product, list(p))):
            continue  # bad shift; the verification failed
        pieces.sort(key=lambda f: (poly_degree(f), _poly_sort_key(f)))
        return [(piece, 1) for piece in pieces]
    raise ArithmeticError("no Trager shift produced a squarefree norm")


def factor_poly(field, p):
    """Monic irreducible factors with multiplicity, deterministically ordered."""
    p = poly_monic(field, list(p))
    if poly_degree(p) < 1:
        return []
    out = []
    for sqf, mult in squarefree_decomposition(field, p):
        if field.level == 0:
            parts = _factor_over_qq(field, sqf)
        else:
            parts = _trager_factor(field, sqf)
        for fac, m in parts:
            out.append((fac, m * mult))
    out.sort(key=lambda fm: (poly_degree(fm[0]), _poly_sort_key(fm[0])))
    return out
