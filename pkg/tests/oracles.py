"""Brute-force reference computations used only by the tests.

Nothing here calls into the package, so the oracles stay independent of
the code they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def dot(a, b):
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def solve_square(A, b):
    """Unique solution of a square system by Gauss-Jordan, or None if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


def brute_vertices(A, b):
    """Vertices of ``{x : A x <= b}`` by trying every n-subset of rows."""
    n = len(A[0])
    out = set()
    for rows in itertools.combinations(range(len(A)), n):
        x = solve_square([A[i] for i in rows], [b[i] for i in rows])
        if x is not None and all(dot(a, x) <= bi for a, bi in zip(A, b)):
            out.add(x)
    return out


def brute_lp_max(c, A, b):
    """max c.x over a bounded polytope, or None when it is empty."""
    verts = brute_vertices(A, b)
    if not verts:
        return None
    return max(dot(c, v) for v in verts)


def box_rows(n, lo, hi):
    A, b = [], []
    for i in range(n):
        e = tuple(Fraction(int(j == i)) for j in range(n))
        A.append(e)
        b.append(Fraction(hi))
        A.append(tuple(-v for v in e))
        b.append(-Fraction(lo))
    return A, b


def in_hull_1d_or_2d(points, x):
    """Membership of ``x`` in conv(points) for dimension <= 2, by brute force."""
    pts = sorted(set(points))
    if len(x) == 1:
        return min(p[0] for p in pts) <= x[0] <= max(p[0] for p in pts)
    # 2-D: x is in the hull iff it lies in some triangle (or segment, or point) of hull points
    for k in (1, 2, 3):
        for tri in itertools.combinations(pts, k):
            if _in_simplex(tri, x):
                return True
    return False


def _in_simplex(tri, x):
    if len(tri) == 1:
        return tuple(tri[0]) == tuple(x)
    if len(tri) == 2:
        (a, b) = tri
        d = (b[0] - a[0], b[1] - a[1])
        w = (x[0] - a[0], x[1] - a[1])
        if d[0] * w[1] - d[1] * w[0] != 0:
            return False
        t = dot(d, w)
        return 0 <= t <= dot(d, d)
    a, b, c = tri
    det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])
    if det == 0:
        return False
    l1 = ((b[0] - x[0]) * (c[1] - x[1]) - (c[0] - x[0]) * (b[1] - x[1])) / det
    l2 = ((c[0] - x[0]) * (a[1] - x[1]) - (a[0] - x[0]) * (c[1] - x[1])) / det
    l3 = 1 - l1 - l2
    return l1 >= 0 and l2 >= 0 and l3 >= 0
