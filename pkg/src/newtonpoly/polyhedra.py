"""Newton polyhedra of monomial supports in dimension d <= 4.

The region of a polyhedron is ``conv(generators) + R_{>=0}^d``.  Covolume
(the volume of the complement inside the positive orthant) is computed
exactly: the complement is contained in the box ``[0, M]^d`` with M the
largest generator coordinate, the intersection ``region /\\ box`` equals the
convex hull of the corner set ``{A + (M - A) o eps : eps in {0,1}^d}``, and
that polytope's volume is obtained from a hull triangulation whose
combinatorics come from qhull but whose geometry is re-verified and summed
in exact integer arithmetic.

Mixed covolumes are extracted from the polynomial ``Vol(sum lambda_i N_i)``
by exact interpolation on an integer grid, matching their defining identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EmptySupport,
    IndexMismatch,
    InfiniteVolume,
    NonIntegralMultiplicity,
    NonPolynomialGrowth,
)

MAX_DIM = 4


# -- exact hull helpers ------------------------------------------------------


def _det(rows):
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _facet_normal(points):
    """Integer normal of the hyperplane through d affinely independent points."""
    d = len(points[0])
    base = points[0]
    rows = [[p[i] - base[i] for i in range(d)] for p in points[1:]]
    normal = []
    for i in range(d):
        minor = [[r[j] for j in range(d) if j != i] for r in rows]
        sub = _det(minor) if minor else Fraction(1)
        normal.append((-1) ** i * sub)
    if all(c == 0 for c in normal):
        return None
    nums = [int(c) for c in normal]
    g = 0
    for c in nums:
        g = gcd(g, abs(c))
    return tuple(c // g for c in nums)


class _HullCertificationError(RuntimeError):
    pass


def _dot(n, p):
    return sum(a * b for a, b in zip(n, p))


def _ring_2d(points):
    """Convex-position ring of 2d points, counterclockwise, strict turns."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(list(reversed(pts)))
    ring = lower[:-1] + upper[:-1]
    return ring


def _independent_subset(points, d):
    """d affinely independent points, or None."""
    base = points[0]
    chosen = [base]
    rows = []
    for p in points[1:]:
        cand = rows + [[Fraction(p[i] - base[i]) for i in range(d)]]
        if _matrix_rank(cand) == len(cand):
            rows = cand
            chosen.append(p)
            if len(chosen) == d:
                return chosen
    return None


def _matrix_rank(rows):
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _exact_facets(points):
    """Facets of conv(points) as (inward normal, offset, on-points), exact.

    In dimension >= 3, qhull supplies candidate hyperplanes; each facet is
    reconstructed exactly from points on it, verified to support the point
    set, and the facet complex is certified closed by matching every ridge
    to exactly two facets.  A certification failure raises rather than
    returning a wrong answer.
    """
    pts = sorted(set(map(tuple, points)))
    d = len(pts[0])
    if d == 1:
        lo, hi = pts[0][0], pts[-1][0]
        if lo == hi:
            raise _HullCertificationError("degenerate 1d hull")
        return [((1,), lo, ((lo,),)), ((-1,), -hi, ((hi,),))]
    if d == 2:
        ring = _ring_2d(pts)
        if len(ring) < 3:
            raise _HullCertificationError("collinear 2d point set")
        facets = []
        for i, a in enumerate(ring):
            b = ring[(i + 1) % len(ring)]
            normal = (a[1] - b[1], b[0] - a[0])
            g = gcd(abs(normal[0]), abs(normal[1]))
            normal = (normal[0] // g, normal[1] // g)
            off = _dot(normal, a)
            if any(_dot(normal, p) < off for p in pts):
                normal = (-normal[0], -normal[1])
                off = -off
            on = tuple(p for p in pts if _dot(normal, p) == off)
            facets.append((normal, off, on))
        return facets

    from scipy.spatial import ConvexHull  # hyperplane hints only

    hull = ConvexHull(pts)
    scale = max(1.0, max(abs(c) for p in pts for c in p))
    hint_rows = {tuple(round(v, 9) for v in row) for row in hull.equations.tolist()}
    facets = {}
    for row in sorted(hint_rows):
        nf, c = row[:-1], row[-1]
        near = [p for p in pts if abs(_dot(nf, p) + c) < 1e-6 * scale]
        if len(near) < d:
            continue
        basis = _independent_subset(near, d)
        if basis is None:
            continue
        normal = _facet_normal(basis)
        if normal is None:
            continue
        off = _dot(normal, basis[0])
        values = [_dot(normal, p) for p in pts]
        if all(v >= off for v in values):
            pass
        elif all(v <= off for v in values):
            normal = tuple(-x for x in normal)
            off = -off
            values = [-v for v in values]
        else:
            continue  # spurious hint; the closure check guards completeness
        on = tuple(p for p, v in zip(pts, values) if v == off)
        facets[(normal, off)] = (normal, off, on)
    facets = list(facets.values())
    if not facets:
        raise _HullCertificationError("no facets reconstructed")
    ridge_count: dict = {}
    for normal, off, on in facets:
        for ridge in _facet_ridges(on, normal):
            ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
    if any(c != 2 for c in ridge_count.values()):
        raise _HullCertificationError("facet complex is not closed")
    return facets


def _project_facet(on, normal):
    """Drop the coordinate of largest |normal| entry; injective on the facet."""
    k = max(range(len(normal)), key=lambda i: abs(normal[i]))
    shadow = {tuple(c for i, c in enumerate(p) if i != k): p for p in on}
    return shadow


def _facet_ridges(on, normal):
    """Ridge identifiers (sorted point tuples) of a facet, exactly."""
    d = len(normal)
    shadow = _project_facet(on, normal)
    flat = sorted(shadow)
    if d == 2:
        return [(shadow[flat[0]],), (shadow[flat[-1]],)]
    return [
        tuple(sorted(shadow[p] for p in sub_on))
        for _, _, sub_on in _exact_facets(flat)
    ]


def _facet_triangulation(on, normal):
    """(d-1)-simplices covering the facet, as tuples of d original points."""
    d = len(normal)
    shadow = _project_facet(on, normal)
    flat = sorted(shadow)
    if d == 2:
        return [(shadow[flat[0]], shadow[flat[-1]])]
    if d == 3:
        ring = _ring_2d(flat)
        return [
            (shadow[ring[0]], shadow[ring[i]], shadow[ring[i + 1]])
            for i in range(1, len(ring) - 1)
        ]
    # d == 4: tetrahedralise the 3-dimensional facet by a vertex fan
    anchor = flat[0]
    tets = []
    for sub_normal, sub_off, sub_on in _exact_facets(flat):
        if anchor in sub_on:
            continue
        for tri in _facet_triangulation(sub_on, sub_normal):
            tets.append((shadow[anchor],) + tuple(shadow[p] for p in tri))
    return tets


def _polytope_volume(points) -> Fraction:
    """Exact volume of conv(points) for integer points."""
    pts = sorted(set(map(tuple, points)))
    d = len(pts[0])
    if _affine_rank(pts) < d:
        return Fraction(0)
    if d == 1:
        return Fraction(pts[-1][0] - pts[0][0])
    facets = _exact_facets(pts)
    centroid = tuple(Fraction(sum(p[i] for p in pts), len(pts)) for i in range(d))
    total = Fraction(0)
    for normal, off, on in facets:
        for simplex in _facet_triangulation(on, normal):
            rows = [[Fraction(p[i]) - centroid[i] for i in range(d)] for p in simplex]
            total += abs(_det(rows))
    return total / factorial(d)


# -- the polyhedron type -----------------------------------------------------


@dataclass(frozen=True)
class MixedVolumeIndex:
    """Index alpha = (alpha_1, ..., alpha_r) with |alpha| = d."""

    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        if any(a < 0 for a in self.alpha):
            raise IndexMismatch("index entries must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.alpha)


class NewtonPolyhedron:
    """Upward-closed region conv(generators) + R_{>=0}^d, exact and immutable."""

    __slots__ = ("dim", "generators", "_hull_vertices", "_hull_facets", "_covolume")

    def __init__(self, dim, generators):
        dim = int(dim)
        if dim < 1:
            raise ValueError("dimension must be positive")
        if dim > MAX_DIM:
            raise DimensionTooLarge(f"dimension {dim} exceeds the supported bound {MAX_DIM}")
        gens = sorted({tuple(int(c) for c in g) for g in generators})
        if not gens:
            raise EmptySupport("no generators")
        for g in gens:
            if len(g) != dim:
                raise DimensionMismatch(f"generator {g} does not have dimension {dim}")
            if any(c < 0 for c in g):
                raise ValueError("generator coordinates must be nonnegative")
        # drop componentwise-dominated (redundant) generators
        minimal = tuple(
            g for g in gens
            if not any(h != g and all(hc <= gc for hc, gc in zip(h, g)) for h in gens)
        )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "generators", minimal)
        object.__setattr__(self, "_hull_vertices", None)
        object.__setattr__(self, "_hull_facets", None)
        if self.is_finite_volume:
            object.__setattr__(self, "_covolume", self._compute_covolume())
            object.__setattr__(self, "_hull_facets", self._compute_region_facets())
            verts = sorted({p for n, b, pts in self._hull_facets for p in pts})
            object.__setattr__(self, "_hull_vertices", tuple(verts))
        else:
            object.__setattr__(self, "_covolume", None)

    def __setattr__(self, name, value):
        raise AttributeError("NewtonPolyhedron is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, NewtonPolyhedron)
            and self.dim == other.dim
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.dim, self.generators))

    def __repr__(self):
        return f"NewtonPolyhedron(dim={self.dim}, generators={list(self.generators)})"

    @property
    def is_finite_volume(self) -> bool:
        """True iff every coordinate axis meets the region."""
        for i in range(self.dim):
            if not any(
                all(c == 0 for j, c in enumerate(g) if j != i) for g in self.generators
            ):
                return False
        return True

    @property
    def max_coordinate(self) -> int:
        return max(max(g) for g in self.generators)

    def _corner_points(self, box=None):
        """Vertex superset of region /\\ [0, box]^d."""
        m = self.max_coordinate if box is None else box
        corners = set()
        for g in self.generators:
            for eps in itertools.product((0, 1), repeat=self.dim):
                corners.add(tuple(g[i] if e == 0 else m for i, e in enumerate(eps)))
        return sorted(corners)

    def _compute_covolume(self) -> Fraction:
        m = self.max_coordinate
        if m == 0:
            return Fraction(0)
        inner = _polytope_volume(self._corner_points(m))
        return Fraction(m) ** self.dim - inner

    def _compute_region_facets(self):
        """Compact facets of the region as (normal, offset, points-on-facet).

        A compact facet has a strictly positive inward normal; it is the
        convex hull of the generators lying on its supporting hyperplane.
        """
        gens = self.generators
        d = self.dim
        seen = {}
        if d == 1:
            g = min(gens)[0]
            return ((1,), g, (min(gens),)),
        for subset in itertools.combinations(gens, d):
            normal = _facet_normal(list(subset))
            if normal is None:
                continue
            if all(c < 0 for c in normal):
                normal = tuple(-c for c in normal)
            if not all(c > 0 for c in normal):
                continue
            b = sum(n * c for n, c in zip(normal, subset[0]))
            if any(sum(n * c for n, c in zip(normal, g)) < b for g in gens):
                continue
            on_face = tuple(
                g for g in gens if sum(n * c for n, c in zip(normal, g)) == b
            )
            seen[(normal, b)] = on_face
        facets = []
        for (normal, b), pts in sorted(seen.items()):
            if _affine_rank(pts) == d - 1:
                facets.append((normal, b, pts))
        return tuple(facets)

    # -- serialisation ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"dim": self.dim, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "NewtonPolyhedron":
        return cls(data["dim"], data["generators"])


def _affine_rank(points) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in pts[1:]]
    # Gaussian elimination over Fractions
    rows = [list(map(Fraction, r)) for r in rows]
    rank = 0
    cols = len(base)
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def from_support_d(dim, points) -> NewtonPolyhedron:
    """Polyhedron generated by a set of lattice points in N^dim."""
    return NewtonPolyhedron(dim, points)


def sum_d(n1: NewtonPolyhedron, n2: NewtonPolyhedron) -> NewtonPolyhedron:
    """Hull of pairwise generator sums."""
    if n1.dim != n2.dim:
        raise DimensionMismatch(f"dimensions {n1.dim} and {n2.dim} differ")
    gens = {
        tuple(a + b for a, b in zip(g1, g2))
        for g1 in n1.generators
        for g2 in n2.generators
    }
    return NewtonPolyhedron(n1.dim, gens)


def scale_d(n: NewtonPolyhedron, k: int) -> NewtonPolyhedron:
    """Dilation by a nonnegative integer; k = 0 gives the full orthant."""
    if k < 0:
        raise ValueError("scale factor must be nonnegative")
    if k == 0:
        return NewtonPolyhedron(n.dim, [tuple(0 for _ in range(n.dim))])
    return NewtonPolyhedron(n.dim, [tuple(k * c for c in g) for g in n.generators])


def covolume(n: NewtonPolyhedron) -> Fraction:
    """Exact volume of the complement of the region in the positive orthant."""
    if not n.is_finite_volume:
        raise InfiniteVolume("covolume of an infinite-volume polyhedron")
    return n._covolume


def _combo(polys, lams) -> NewtonPolyhedron:
    """Integer combination sum(lam_i * N_i), skipping zero coefficients."""
    parts = [scale_d(n, lam) for n, lam in zip(polys, lams) if lam > 0]
    if not parts:
        return scale_d(polys[0], 0)
    total = parts[0]
    for p in parts[1:]:
        total = sum_d(total, p)
    return total


def _solve_exact(matrix, rhs):
    """Gaussian elimination over Fractions; matrix must be square invertible."""
    n = len(matrix)
    a = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("interpolation system is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def mixed_covolume(polys, index: MixedVolumeIndex) -> Fraction:
    """Mixed covolume Vol(N_1^[a_1], ..., N_r^[a_r]) by polarization.

    Vol(sum lambda_i N_i) is a homogeneous degree-d polynomial in lambda; its
    coefficients are read off by exact interpolation and the coefficient of
    lambda^alpha equals (d!/alpha!) times the requested mixed covolume.
    """
    polys = list(polys)
    if not polys:
        raise IndexMismatch("need at least one polyhedron")
    d = polys[0].dim
    for n in polys:
        if n.dim != d:
            raise DimensionMismatch("mixed covolume operands must share dimension")
        if not n.is_finite_volume:
            raise InfiniteVolume("mixed covolume needs finite-volume operands")
    alpha = index.alpha
    if len(alpha) != len(polys) or index.total != d:
        raise IndexMismatch(f"index {alpha} does not fit {len(polys)} polyhedra in dimension {d}")
    r = len(polys)
    exponents = [e for e in itertools.product(range(d + 1), repeat=r) if sum(e) == d]
    # unisolvent node set: lambda = (beta, 1) over the simplex grid |beta| <= d
    # principal-lattice nodes lambda = (beta, 1), |beta| <= d: unisolvent and
    # in bijection with the homogeneous degree-d monomials
    nodes = [
        tuple(beta) + (1,)
        for beta in itertools.product(range(d + 1), repeat=r - 1)
        if sum(beta) <= d
    ] if r > 1 else [(1,)]
    assert len(nodes) == len(exponents)
    matrix, rhs = [], []
    for lam in nodes:
        matrix.append([_ipow(lam, e) for e in exponents])
        rhs.append(covolume(_combo(polys, lam)))
    coeffs = _solve_exact(matrix, rhs)
    target = coeffs[exponents.index(tuple(alpha))]
    scale_back = Fraction(1)
    for a in alpha:
        scale_back *= factorial(a)
    return target * scale_back / factorial(d)


def _ipow(lam, exp) -> int:
    v = 1
    for base, e in zip(lam, exp):
        v *= base ** e
    return v


def face_identity_check(n: NewtonPolyhedron):
    """Return (d*Vol(N), sum h_i * Vol(sigma_i)) over compact facets.

    Each product h_i * Vol_{d-1}(sigma_i) equals d times the volume of the
    cone over sigma_i from the origin, so the right-hand side is the exact
    rational sum of |det| / (d-1)! over a triangulation of each facet; no
    square roots ever appear.
    """
    if not n.is_finite_volume:
        raise InfiniteVolume("face identity needs a finite-volume polyhedron")
    d = n.dim
    lhs = d * covolume(n)
    rhs = Fraction(0)
    for normal, b, pts in n._hull_facets:
        if d == 1:
            rhs += Fraction(pts[0][0])
            continue
        for simplex in _facet_triangulation(pts, normal):
            rows = [list(map(Fraction, p)) for p in simplex]
            rhs += abs(_det(rows)) / factorial(d - 1)
    return lhs, rhs


def monomial_multiplicity(n: NewtonPolyhedron) -> int:
    """Multiplicity of a monomial ideal: d! times the covolume, an integer."""
    v = factorial(n.dim) * covolume(n)
    if v.denominator != 1:
        raise NonIntegralMultiplicity(f"d! * covolume = {v} is not an integer")
    return int(v)


def colength_growth_oracle(dim, generators, kmax) -> int:
    """Independent multiplicity oracle from the colength sequence.

    Counts monomials outside n^k for k <= kmax and extracts the leading
    Hilbert-Samuel coefficient e by exact d-th finite differencing of the
    eventually-polynomial sequence.
    """
    n = NewtonPolyhedron(dim, generators)
    if not n.is_finite_volume:
        raise InfiniteVolume("colength is infinite for an infinite-volume support")
    if kmax < 2 * dim + 2:
        raise ValueError(f"kmax must be at least {2 * dim + 2}")
    gens = n.generators
    if tuple(0 for _ in range(dim)) in gens:
        return 0  # unit ideal: every colength vanishes
    m = n.max_coordinate
    d = n.dim
    box = m * kmax
    # power[v] = largest k with v in n^k (0 if v not in n)
    power = {}
    for v in itertools.product(range(box + 1), repeat=d):
        best = 0
        for g in gens:
            w = tuple(a - b for a, b in zip(v, g))
            if all(c >= 0 for c in w):
                cand = 1 + power[w]
                if cand > best:
                    best = cand
        power[v] = best
    counts = []
    for k in range(1, kmax + 1):
        inside = sum(1 for v in power.values() if v < k)
        counts.append(inside)
    diffs = counts
    for _ in range(d):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    tail = diffs[-(d + 1):]
    if len(set(tail)) != 1:
        raise NonPolynomialGrowth(f"colength d-th differences {diffs} not stable; raise kmax")
    return tail[0]
