"""Exact linear-programming feasibility over the rationals.

Used two ways: as the intersection predicate for simplices above dimension 3,
and as the independent oracle the separating-axis code is tested against.
A tiny dense phase-1 simplex with Bland's rule is enough; every system here
has at most a dozen variables.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def feasible(A, b):
    """Is there x >= 0 with A x = b?  Entries may be ints or Fractions."""
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    m = len(rows)
    n = len(rows[0]) if m else 0
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # tableau with one artificial per row; basis starts as the artificials
    width = n + m
    T = []
    for i in range(m):
        row = rows[i] + [ZERO] * m
        row[n + i] = ONE
        row.append(rhs[i])
        T.append(row)
    basis = list(range(n, n + m))

    # phase-1 objective: minimize sum of artificials; artificial columns are
    # never allowed to re-enter, so only original columns are candidates
    obj = [ZERO] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] -= T[i][j]

    while True:
        enter = -1
        for j in range(n):
            if obj[j] < 0:
                enter = j
                break  # Bland's rule: first improving column
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # unbounded phase-1 objective cannot happen; treat as infeasible
            return False
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [v - f * w for v, w in zip(T[i], T[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, T[leave])]
        basis[leave] = enter

    return obj[width] == 0


def polytopes_intersect(verts_a, verts_b) -> bool:
    """Do the convex hulls of two rational point sets intersect?

    Feasibility of: sum(l_i a_i) - sum(m_j b_j) = 0, sum(l)=1, sum(m)=1,
    l, m >= 0.  Exact; tangency counts as intersection.
    """
    d = len(verts_a[0])
    k, m = len(verts_a), len(verts_b)
    A = []
    for c in range(d):
        A.append([Fraction(p[c]) for p in verts_a] + [-Fraction(q[c]) for q in verts_b])
    A.append([ONE] * k + [ZERO] * m)
    A.append([ZERO] * k + [ONE] * m)
    b = [ZERO] * d + [ONE, ONE]
    return feasible(A, b)


def point_in_hull(pt, verts) -> bool:
    """Is pt in the convex hull of verts (all rational)?"""
    return polytopes_intersect([tuple(pt)], verts)
