"""Exact convex geometry: hulls, V/H conversion, cones and duality.

The single computational core is an integer double-description pass
(:func:`_dd`): given homogeneous halfspaces ``{x : a.x >= 0}`` it returns
the extreme rays and a lineality basis of their intersection.  Facet
enumeration, vertex enumeration, hull reduction and cone duality are all
phrased as instances of this one primitive, which keeps the exactness
argument in one place.  Dimensions here are tiny (ambient <= 8), so the
exponential worst case of the method is irrelevant.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import (
    DimensionMismatchError,
    QVec,
    as_fraction,
    integerize,
    rank,
    zero_vector,
)


class EmptyInputError(ValueError):
    pass


class UnboundedError(ValueError):
    """A vertex enumeration found a recession direction."""


class EmptyIntersectionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# double description over the integers

IntVec = tuple[int, ...]


def _idot(a: IntVec, b: IntVec) -> int:
    return sum(x * y for x, y in zip(a, b))


def _iprim(vec: IntVec) -> IntVec:
    g = 0
    for v in vec:
        g = math.gcd(g, abs(v))
    if g > 1:
        return tuple(v // g for v in vec)
    return vec


def _dd(normals: Sequence[IntVec], dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Extreme rays and lineality basis of {x : n.x >= 0 for all n}.

    Incremental double description.  Rays carry a bitmask of the processed
    halfspaces they satisfy with equality; two rays on opposite sides of a
    new halfspace are combined only when adjacent, which is decided by the
    standard combinatorial criterion (no third ray is tight on a superset
    of their common tight set).  The lineality space is maintained
    explicitly and split off one pivot at a time.
    """
    lin: list[IntVec] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[IntVec, int]] = []
    for idx, a in enumerate(normals):
        bit = 1 << idx
        vals = [_idot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            b0, v0 = lin[piv], vals[piv]
            if v0 < 0:
                b0 = tuple(-x for x in b0)
                v0 = -v0
            lin = [
                _iprim(tuple(v0 * lx - vv * bx for lx, bx in zip(l, b0)))
                for i, (l, vv) in enumerate(zip(lin, vals))
                if i != piv
            ]
            rays = [
                (_iprim(tuple(v0 * rx - _idot(a, r) * bx for rx, bx in zip(r, b0))),
                 mask | bit)
                for r, mask in rays
            ]
            rays = [(r, m) for r, m in rays if any(r)]
            rays.append((b0, bit - 1))
            continue
        pos, zero, neg = [], [], []
        for r, mask in rays:
            v = _idot(a, r)
            if v > 0:
                pos.append((r, mask, v))
            elif v < 0:
                neg.append((r, mask, v))
            else:
                zero.append((r, mask | bit))
        new_rays = [(r, m) for r, m, _ in pos] + zero
        for rp, mp, vp in pos:
            for rn, mn, vn in neg:
                common = mp & mn
                adjacent = True
                for r3, m3 in rays:
                    if r3 is rp or r3 is rn:
                        continue
                    if m3 & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = _iprim(tuple(vp * x - vn * y for x, y in zip(rn, rp)))
                assert any(w), "antipodal rays escaped the lineality space"
                new_rays.append((w, common | bit))
        rays = new_rays
    return [r for r, _ in rays], lin


def _to_int(vecs: Iterable[Sequence[Fraction]]) -> list[IntVec]:
    return [integerize(v) for v in vecs]


def _ray_key(vec: QVec) -> QVec:
    """Canonical representative of a ray: positive scaling, primitive ints."""
    return QVec(integerize(vec))


# ---------------------------------------------------------------------------
# halfspaces and polytopes


class Halfspace:
    """Closed halfspace {x : normal.x >= offset}."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        self.normal = QVec(normal)
        self.offset = as_fraction(offset)
        if self.normal.is_zero():
            raise ValueError("halfspace normal must be nonzero")

    def evaluate(self, x: QVec) -> Fraction:
        return self.normal.dot(x) - self.offset

    def holds(self, x: QVec, strict: bool = False) -> bool:
        v = self.evaluate(x)
        return v > 0 if strict else v >= 0

    def __eq__(self, other):
        if not isinstance(other, Halfspace):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def _canonical(self):
        ints = integerize(tuple(self.normal) + (self.offset,))
        return ints

    def __repr__(self):
        return f"Halfspace({list(self.normal)} . x >= {self.offset})"


class Polytope:
    """Bounded convex polytope held as an irredundant, sorted vertex tuple.

    The H-representation is computed on first use and cached; values are
    immutable afterwards, so instances are safe to share across threads.
    """

    __slots__ = ("vertices", "_facets")

    def __init__(self, points: Iterable[Sequence]):
        pts = [QVec(p) for p in points]
        reduced = hull_reduce(pts)
        self.vertices = reduced.vertices
        self._facets = reduced._facets

    @classmethod
    def _raw(cls, vertices: tuple[QVec, ...], facets=None) -> "Polytope":
        p = object.__new__(cls)
        p.vertices = vertices
        p._facets = facets
        return p

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def facets(self) -> tuple[Halfspace, ...]:
        if self._facets is None:
            self._facets = tuple(vrep_to_hrep(self))
        return self._facets

    def contains(self, x, strict: bool = False) -> bool:
        x = QVec(x)
        if len(x) != self.dim:
            raise DimensionMismatchError("point dimension differs from polytope")
        return all(h.holds(x, strict=strict) for h in self.facets)

    def centroid(self) -> QVec:
        n = len(self.vertices)
        total = self.vertices[0]
        for v in self.vertices[1:]:
            total = total + v
        return total * Fraction(1, n)

    def affine_dim(self) -> int:
        v0 = self.vertices[0]
        if len(self.vertices) == 1:
            return 0
        return rank([v - v0 for v in self.vertices[1:]])

    def translate(self, shift: QVec) -> "Polytope":
        return Polytope._raw(tuple(sorted(v + shift for v in self.vertices)))

    def reflect(self) -> "Polytope":
        """The pointwise negation -P."""
        return Polytope._raw(tuple(sorted(-v for v in self.vertices)))

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polytope({len(self.vertices)} vertices in R^{self.dim})"


class Cone:
    """Polyhedral cone generated by finitely many rays.

    Generators are canonicalized up to positive scaling; a non-pointed cone
    carries its lineality as antipodal generator pairs.  The homogeneous
    H-representation is cached after the first dualization.
    """

    __slots__ = ("rays", "_halfspaces")

    def __init__(self, rays: Iterable[Sequence]):
        gens = [QVec(r) for r in rays]
        if not gens:
            raise EmptyInputError("a cone needs at least one generator (may be 0)")
        dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise DimensionMismatchError("cone generators of mixed dimension")
        reduced = _reduce_rays(gens, dim)
        self.rays = reduced
        self._halfspaces = None

    @classmethod
    def _raw(cls, rays: tuple[QVec, ...], halfspaces=None) -> "Cone":
        c = object.__new__(cls)
        c.rays = rays
        c._halfspaces = halfspaces
        return c

    @property
    def dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    @property
    def halfspaces(self) -> tuple[QVec, ...]:
        """Normals n with cone = {x : n.x >= 0 for all n}."""
        if self._halfspaces is None:
            self._halfspaces = dual_cone(self).rays
        return self._halfspaces

    def contains(self, x, strict: bool = False) -> bool:
        x = QVec(x)
        if self.is_trivial():
            return x.is_zero() and not strict
        return all(
            (n.dot(x) > 0 if strict else n.dot(x) >= 0) for n in self.halfspaces
        )

    def is_trivial(self) -> bool:
        """True when the cone is the origin only."""
        return all(r.is_zero() for r in self.rays)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(other.contains(r) for r in self.rays) and all(
            self.contains(r) for r in other.rays
        )

    def __hash__(self):  # pragma: no cover - cones are compared, not hashed
        raise TypeError("Cone equality is semantic; cones are unhashable")

    def __repr__(self):
        return f"Cone({len(self.rays)} rays in R^{self.dim})"


def _reduce_rays(gens: list[QVec], dim: int) -> tuple[QVec, ...]:
    """Irredundant generators of cone(gens): extreme rays plus a lineality
    basis expanded into antipodal pairs."""
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return (zero_vector(dim),)
    # H-representation of the generated cone is the dual ray set; dualizing
    # twice lands back on the (closed polyhedral) cone with minimal rays.
    dual_rays, dual_lin = _dd(_to_int(nonzero), dim)
    constraints = dual_rays + dual_lin + [tuple(-x for x in l) for l in dual_lin]
    rays, lin = _dd(constraints, dim)
    out = [QVec(r) for r in rays]
    for l in lin:
        out.append(QVec(l))
        out.append(QVec(tuple(-x for x in l)))
    if not out:
        return (zero_vector(dim),)
    return tuple(sorted(_ray_key(r) for r in out))


# ---------------------------------------------------------------------------
# public operations


def hull_reduce(points: Sequence[Sequence]) -> Polytope:
    """Irredundant vertex set of the convex hull of the given points."""
    pts = [QVec(p) for p in points]
    if not pts:
        raise EmptyInputError("hull of no points")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatchError("hull input of mixed dimension")
    unique = sorted(set(pts))
    if len(unique) == 1:
        return Polytope._raw((unique[0],))
    facets = _facets_of_points(unique, dim)
    poly = hrep_to_vrep(facets)
    # every input point must land inside its own hull
    assert all(poly.contains(p) for p in unique)
    return poly


def vrep_to_hrep(p: Polytope) -> list[Halfspace]:
    """Facet description of a polytope (equality pairs when degenerate)."""
    return _facets_of_points(list(p.vertices), p.dim)


def _facets_of_points(pts: list[QVec], dim: int) -> list[Halfspace]:
    lifted = [tuple(v) + (Fraction(1),) for v in pts]
    rays, lin = _dd(_to_int(lifted), dim + 1)
    out = []
    for g in rays:
        normal, tail = g[:dim], g[dim]
        if not any(normal):
            # trivial inequality 0.x + t >= 0; carries no facet information
            continue
        out.append(Halfspace(normal, -tail))
    for g in lin:
        normal, tail = g[:dim], g[dim]
        if not any(normal):
            continue
        out.append(Halfspace(normal, -tail))
        out.append(Halfspace(tuple(-x for x in normal), tail))
    if not out:
        # single point at the origin: pin every coordinate
        for i in range(dim):
            e = [0] * dim
            e[i] = 1
            out.append(Halfspace(tuple(e), pts[0][i]))
            out.append(Halfspace(tuple(-x for x in e), -pts[0][i]))
    return out


def hrep_to_vrep(halfspaces: Sequence[Halfspace]) -> Polytope:
    """Vertices of a bounded halfspace intersection.

    Raises UnboundedError when the intersection has a recession direction
    and EmptyIntersectionError when it is empty.
    """
    if not halfspaces:
        raise EmptyInputError("no halfspaces")
    dim = halfspaces[0].normal.dim
    if any(h.normal.dim != dim for h in halfspaces):
        raise DimensionMismatchError("halfspaces of mixed dimension")
    rows = [tuple(h.normal) + (-h.offset,) for h in halfspaces]
    rows.append(tuple([Fraction(0)] * dim + [Fraction(1)]))  # homogenization s >= 0
    rays, lin = _dd(_to_int(rows), dim + 1)
    vertices = []
    recession = []
    for g in rays:
        head, s = g[:dim], g[dim]
        if s > 0:
            vertices.append(QVec(Fraction(x, s) for x in head))
        elif any(head):
            recession.append(head)
    if not vertices:
        # lineality can only pass through points of the set, so an empty
        # vertex list means an empty intersection regardless of lin
        raise EmptyIntersectionError("halfspace intersection is empty")
    if recession or lin:
        raise UnboundedError("halfspace intersection is unbounded")
    return Polytope._raw(tuple(sorted(vertices)))


def positive_cone(p: Polytope) -> Cone:
    """All nonnegative scalings of points of p (generated by its vertices)."""
    return Cone(p.vertices)


def dual_cone(c: Cone) -> Cone:
    """Vectors with nonnegative inner product against the whole cone."""
    gens = [r for r in c.rays if not r.is_zero()]
    if not gens:
        # dual of {0} is the full space
        basis = []
        for i in range(c.dim):
            e = [0] * c.dim
            e[i] = 1
            basis.append(QVec(e))
            basis.append(-QVec(e))
        return Cone._raw(tuple(sorted(_ray_key(b) for b in basis)))
    rays, lin = _dd(_to_int(gens), c.dim)
    out = [QVec(r) for r in rays]
    for l in lin:
        out.append(QVec(l))
        out.append(QVec(tuple(-x for x in l)))
    if not out:
        rays_t = (zero_vector(c.dim),)
    else:
        rays_t = tuple(sorted(_ray_key(r) for r in out))
    # the generators of c are by definition valid halfspaces for the dual
    return Cone._raw(rays_t, halfspaces=tuple(gens))


def cone_intersect(a: Cone, b: Cone) -> Cone:
    if a.dim != b.dim:
        raise DimensionMismatchError("cone intersection dimension mismatch")
    normals = list(a.halfspaces) + list(b.halfspaces)
    if not normals:
        raise EmptyInputError("cone intersection without constraints")
    rays, lin = _dd(_to_int(normals), a.dim)
    out = [QVec(r) for r in rays]
    for l in lin:
        out.append(QVec(l))
        out.append(QVec(tuple(-x for x in l)))
    if not out:
        return Cone._raw((zero_vector(a.dim),), halfspaces=tuple(QVec(n) for n in normals))
    return Cone._raw(tuple(sorted(_ray_key(r) for r in out)),
                     halfspaces=tuple(QVec(n) for n in normals))


def polytope_intersect(a: Polytope, b: Polytope) -> Polytope:
    if a.dim != b.dim:
        raise DimensionMismatchError("polytope intersection dimension mismatch")
    return hrep_to_vrep(list(a.facets) + list(b.facets))


def slice_cone(c: Cone, normal, offset) -> Polytope:
    """Intersect a cone with the hyperplane normal.x = offset.

    The result must be bounded (UnboundedError otherwise); this implements
    intersections such as cutting a state cone with the normalization
    hyperplane.
    """
    normal = QVec(normal)
    offset = as_fraction(offset)
    constraints = [Halfspace(n, 0) for n in c.halfspaces]
    constraints.append(Halfspace(normal, offset))
    constraints.append(Halfspace(-normal, -offset))
    return hrep_to_vrep(constraints)


def set_equal(a, b) -> bool:
    """Exact point-set equality for polytopes or cones."""
    if isinstance(a, Polytope) and isinstance(b, Polytope):
        if a.dim != b.dim:
            raise DimensionMismatchError("comparing polytopes of different dimension")
        return a.vertices == b.vertices
    if isinstance(a, Cone) and isinstance(b, Cone):
        if a.dim != b.dim:
            raise DimensionMismatchError("comparing cones of different dimension")
        return a == b
    raise TypeError("set_equal compares two polytopes or two cones")


def contains(setlike, x) -> bool:
    """Exact membership, via the H-representation."""
    return setlike.contains(QVec(x))
