"""Exact feasibility LP over the rationals (phase-1 simplex, Bland's rule).

Kept deliberately independent of the double-description machinery: the test
suite uses these routines as redundancy/membership oracles against the
geometry module, so the two must not share code paths.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import QVec, as_fraction


def _feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Is {lam >= 0 : A lam = b} nonempty?  Phase-1 simplex with artificials."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(map(as_fraction, r)) for r in rows]
    b = [as_fraction(v) for v in rhs]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
    # tableau columns: n structural + m artificial, artificial basis
    tab = [a[i] + [Fraction(int(j == i)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    total = n + m
    # objective row: minimize sum of artificials -> reduced costs
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] += tab[i][j]
    while True:
        enter = next((j for j in range(n) if obj[j] > 0), None)
        if enter is None:
            break
        ratios = [
            (tab[i][total] / tab[i][enter], basis[i], i)
            for i in range(m)
            if tab[i][enter] > 0
        ]
        if not ratios:
            break  # unbounded phase-1 cannot happen; defensive
        _, _, leave = min(ratios, key=lambda t: (t[0], t[1]))
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    artificial_sum = sum(
        tab[i][total] for i in range(m) if basis[i] >= n
    )
    return artificial_sum == 0


def in_convex_hull(x: QVec, points: Sequence[QVec]) -> bool:
    """Membership of x in conv(points), decided by LP feasibility."""
    pts = list(points)
    if not pts:
        return False
    dim = len(x)
    rows = [[p[i] for p in pts] for i in range(dim)]
    rows.append([Fraction(1)] * len(pts))
    rhs = list(x) + [Fraction(1)]
    return _feasible(rows, rhs)


def in_cone(x: QVec, rays: Sequence[QVec]) -> bool:
    """Membership of x in cone(rays) = {sum c_i r_i : c_i >= 0}."""
    gens = [r for r in rays if not r.is_zero()]
    if not gens:
        return QVec(x).is_zero()
    dim = len(x)
    rows = [[r[i] for r in gens] for i in range(dim)]
    return _feasible(rows, list(x))


def hull_vertices_lp(points: Sequence[QVec]) -> list[QVec]:
    """Irredundant hull vertices by the pairwise LP redundancy check."""
    pts = sorted(set(QVec(p) for p in points))
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or not in_convex_hull(p, others):
            out.append(p)
    return out


def cone_rays_lp(rays: Sequence[QVec]) -> list[QVec]:
    """Irredundant generating rays by the LP ray-redundancy test."""
    gens = sorted(set(QVec(r) for r in rays if not QVec(r).is_zero()))
    out = []
    for i, r in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        if not others or not in_cone(r, others):
            out.append(r)
    return out
