"""Double description method: vertex/ray enumeration and its inverse.

Works on integer vectors internally. A cone ``{y : A y <= 0, E y = 0}`` is
converted to generators ``(rays, lines)`` by the incremental Motzkin
procedure with the combinatorial adjacency test.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .rational import integer_scaled


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def cone_generators(ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]], dim: int):
    """Generators of ``{y : a.y <= 0 for a in ineqs, e.y = 0 for e in eqs}``.

    Returns ``(rays, lines)`` as lists of primitive integer tuples; every
    point of the cone is a nonnegative combination of rays plus a linear
    combination of lines, and the ray list is minimal modulo the lines.
    """
    lines = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []  # bit k set <=> ray tight on k-th processed inequality
    nproc = 0
    eff_dim = dim  # equalities absorbed through lines cut the dimension

    order = [(tuple(e), True) for e in eqs] + [(tuple(a), False) for a in ineqs]
    for h, is_eq in order:
        if not any(h):
            continue
        hl = [_idot(h, l) for l in lines]
        k0 = next((k for k, v in enumerate(hl) if v != 0), None)
        if k0 is not None:
            l0, h0 = lines[k0], hl[k0]
            a0, s0 = abs(h0), (1 if h0 > 0 else -1)
            new_lines = []
            for k, l in enumerate(lines):
                if k == k0:
                    continue
                if hl[k] == 0:
                    new_lines.append(l)
                else:
                    new_lines.append(_primitive([a0 * x - s0 * hl[k] * y for x, y in zip(l, l0)]))
            new_rays = []
            for r in rays:
                hr = _idot(h, r)
                if hr == 0:
                    new_rays.append(r)
                else:
                    new_rays.append(_primitive([a0 * x - s0 * hr * y for x, y in zip(r, l0)]))
            lines = new_lines
            rays = new_rays
            if is_eq:
                eff_dim -= 1
                continue
            # l0 turns into a ray strictly inside the new half-space
            rays.append(tuple(-s0 * x for x in l0))
            bit = 1 << nproc
            masks = [m | bit for m in masks] + [(1 << nproc) - 1]
            nproc += 1
            continue

        vals = [_idot(h, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        need = eff_dim - len(lines) - 2
        combos = []
        for i in pos:
            for j in neg:
                common = masks[i] & masks[j]
                if bin(common).count("1") < need:
                    continue
                if any(
                    k != i and k != j and (masks[k] & common) == common
                    for k in range(len(rays))
                ):
                    continue
                vi, vj = vals[i], -vals[j]
                combos.append((_primitive([vi * y + vj * x for x, y in zip(rays[i], rays[j])]), common))
        bit = 1 << nproc
        keep = zer if is_eq else zer + neg
        new_rays = [rays[i] for i in keep]
        new_masks = [masks[i] | bit if vals[i] == 0 else masks[i] for i in keep]
        for r, m in combos:
            new_rays.append(r)
            new_masks.append(m | bit)
        rays, masks = new_rays, new_masks
        if is_eq:
            # equalities carry no tightness information; keep bit set uniformly
            masks = [m | bit for m in masks]
        nproc += 1
    return rays, lines


def h_to_v(dim: int, ineqs, eqs=()):
    """Generators of ``{x : a.x <= b for (a, b) in ineqs, e.x = c for (e, c) in eqs}``.

    Returns ``(points, rays, lines)`` with Fraction entries. ``points`` is
    empty iff the polyhedron is empty.
    """
    A = [integer_scaled(tuple(a) + (-Fraction(b),)) for a, b in ineqs]
    A.append(tuple([0] * dim + [-1]))
    E = [integer_scaled(tuple(e) + (-Fraction(c),)) for e, c in eqs]
    rays, lines = cone_generators(A, E, dim + 1)
    points, out_rays, out_lines = [], [], []
    for r in rays:
        s = r[dim]
        if s > 0:
            points.append(tuple(Fraction(x, s) for x in r[:dim]))
        else:
            out_rays.append(tuple(Fraction(x) for x in r[:dim]))
    for l in lines:
        out_lines.append(tuple(Fraction(x) for x in l[:dim]))
    if not points:
        return [], [], []
    return points, out_rays, out_lines


def v_to_h(dim: int, points, rays=(), lines=()):
    """Irredundant H-representation of ``conv(points) + cone(rays) + span(lines)``.

    Returns ``(ineqs, eqs)`` as lists of ``(normal, bound)`` pairs. With no
    points the polyhedron is empty and ``None`` is returned.
    """
    if not points:
        return None
    A = [integer_scaled(tuple(p) + (Fraction(-1),)) for p in points]
    A += [integer_scaled(tuple(r) + (Fraction(0),)) for r in rays if any(r)]
    E = [integer_scaled(tuple(l) + (Fraction(0),)) for l in lines if any(l)]
    prays, plines = cone_generators(A, E, dim + 1)
    ineqs, eqs = [], []
    for r in prays:
        a = r[:dim]
        if not any(a):
            continue
        ineqs.append((tuple(Fraction(x) for x in a), Fraction(r[dim])))
    for l in plines:
        a = l[:dim]
        if not any(a):
            continue
        eqs.append((tuple(Fraction(x) for x in a), Fraction(l[dim])))
    return ineqs, eqs
