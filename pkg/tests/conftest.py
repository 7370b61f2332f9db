"""Shared helpers: fixture loading plus random-but-valid generators.

The constraint generators build payloads on mutually orthogonal integer
vector triples whose members share an integer length, so every distance
and cosine payload stays an exact rational and validity holds by
construction for all 21 kinds.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from bodycad import (
    CadConstraint,
    Framework,
    constraint,
    framework,
    framework_from_data,
    graph_from_data,
)
from bodycad.geometry import Vec3, vec3
from bodycad.sparsity import BLACK, RED, Edge, MultiGraph

FIXTURES = Path(__file__).parent / "fixtures"

# (angular, blind) primitive row counts per kind, canonical enumeration order.
EXPECTED_COUNTS = {
    "point_point_coincidence": (0, 3),
    "point_point_distance": (0, 1),
    "point_line_coincidence": (0, 2),
    "point_line_distance": (0, 1),
    "point_plane_coincidence": (0, 1),
    "point_plane_distance": (0, 1),
    "line_line_parallel": (2, 0),
    "line_line_perpendicular": (1, 0),
    "line_line_fixed_angular": (1, 0),
    "line_line_coincidence": (2, 2),
    "line_line_distance": (0, 1),
    "line_plane_parallel": (1, 0),
    "line_plane_perpendicular": (2, 0),
    "line_plane_fixed_angular": (1, 0),
    "line_plane_coincidence": (1, 1),
    "line_plane_distance": (1, 1),
    "plane_plane_parallel": (2, 0),
    "plane_plane_perpendicular": (1, 0),
    "plane_plane_fixed_angular": (1, 0),
    "plane_plane_coincidence": (2, 1),
    "plane_plane_distance": (2, 1),
}


def load_framework(name: str) -> Framework:
    with open(FIXTURES / name, encoding="utf-8") as fh:
        return framework_from_data(json.load(fh, parse_float=Fraction))


def load_graph(name: str) -> MultiGraph:
    with open(FIXTURES / name, encoding="utf-8") as fh:
        return graph_from_data(json.load(fh, parse_float=Fraction))


# --------------------------------------------------------------------------
# random geometric payloads

# Right-or-left-handed orthogonal triples of integer vectors; within a
# triple all three share the same (integer) euclidean length.
TRIPLES: tuple[tuple[int, tuple[Vec3, Vec3, Vec3]], ...] = tuple(
    (n, (vec3(*a), vec3(*b), vec3(*c)))
    for n, a, b, c in (
        (1, (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        (3, (1, 2, 2), (2, 1, -2), (-2, 2, -1)),
        (5, (3, 4, 0), (4, -3, 0), (0, 0, 5)),
        (7, (2, 3, 6), (3, -6, 2), (6, 2, -3)),
    )
)


def _q(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def _nz(rng: random.Random) -> Fraction:
    while True:
        v = _q(rng)
        if v != 0:
            return v


def _pt(rng: random.Random) -> Vec3:
    return vec3(_q(rng), _q(rng), _q(rng))


def _nzvec(rng: random.Random) -> Vec3:
    while True:
        v = _pt(rng)
        if not v.is_zero():
            return v


def _frame(rng: random.Random) -> tuple[int, Vec3, Vec3, Vec3]:
    norm, (e1, e2, e3) = TRIPLES[rng.randrange(len(TRIPLES))]
    axes = [e1, e2, e3]
    rng.shuffle(axes)
    return (norm, *axes)


def random_constraint(kind: str, i: str, j: str, rng: random.Random) -> CadConstraint:
    """A constraint of the given kind with generic, exactly valid payload."""
    norm, e1, e2, e3 = _frame(rng)
    a, b = _pt(rng), _pt(rng)
    s, t = _q(rng), _q(rng)
    h = _nz(rng)

    if kind == "point_point_coincidence":
        return constraint(kind, i, j, point=a)
    if kind == "point_point_distance":
        return constraint(kind, i, j, point_i=a, point_j=a + e1.scale(h), distance=abs(h) * norm)
    if kind == "point_line_coincidence":
        d = _nzvec(rng)
        return constraint(kind, i, j, point_i=a + d.scale(s), line_j=(a, d))
    if kind == "point_line_distance":
        return constraint(
            kind, i, j, point_i=a + e1.scale(s) + e2.scale(h), line_j=(a, e1), distance=abs(h) * norm
        )
    if kind == "point_plane_coincidence":
        return constraint(kind, i, j, point_i=a + e1.scale(s) + e2.scale(t), plane_j=(a, e3))
    if kind == "point_plane_distance":
        return constraint(
            kind, i, j,
            point_i=a + e1.scale(s) + e2.scale(t) + e3.scale(h),
            plane_j=(a, e3),
            distance=abs(h) * norm,
        )
    if kind == "line_line_parallel":
        return constraint(kind, i, j, point_i=a, point_j=b, direction=_nzvec(rng))
    if kind == "line_line_perpendicular":
        return constraint(kind, i, j, line_i=(a, e1.scale(_nz(rng))), line_j=(b, e2.scale(_nz(rng))))
    if kind == "line_line_fixed_angular":
        p, q = rng.choice(((3, 4), (4, 3), (-3, 4), (-4, 3)))
        return constraint(
            kind, i, j,
            line_i=(a, e1),
            line_j=(b, e1.scale(p) + e2.scale(q)),
            angle={"cos": Fraction(p, 5)},
        )
    if kind == "line_line_coincidence":
        return constraint(kind, i, j, line=(a, _nzvec(rng)))
    if kind == "line_line_distance":
        return constraint(
            kind, i, j,
            line_i=(a, e1),
            line_j=(a + e3.scale(h), e2),
            distance=abs(h) * norm,
        )
    if kind == "line_plane_parallel":
        return constraint(kind, i, j, line_i=(a, e1.scale(_nz(rng)) + e2.scale(t)), plane_j=(b, e3))
    if kind == "line_plane_perpendicular":
        return constraint(kind, i, j, line_i=(a, e3.scale(_nz(rng))), plane_j=(b, e3))
    if kind == "line_plane_fixed_angular":
        p, q = rng.choice(((3, 4), (4, 3), (-3, 4), (-4, 3)))
        return constraint(
            kind, i, j,
            line_i=(a, e3.scale(p) + e1.scale(q)),
            plane_j=(b, e3),
            angle={"cos": Fraction(p, 5)},
        )
    if kind == "line_plane_coincidence":
        return constraint(
            kind, i, j,
            line_i=(b + e1.scale(s) + e2.scale(t), e1.scale(_nz(rng)) + e2.scale(t)),
            plane_j=(b, e3),
        )
    if kind == "line_plane_distance":
        return constraint(
            kind, i, j,
            line_i=(b + e1.scale(s) + e2.scale(t) + e3.scale(h), e1.scale(_nz(rng)) + e2.scale(t)),
            plane_j=(b, e3),
            distance=abs(h) * norm,
        )
    if kind == "plane_plane_parallel":
        return constraint(kind, i, j, point_i=a, point_j=b, normal=_nzvec(rng))
    if kind == "plane_plane_perpendicular":
        return constraint(kind, i, j, plane_i=(a, e1.scale(_nz(rng))), plane_j=(b, e2.scale(_nz(rng))))
    if kind == "plane_plane_fixed_angular":
        p, q = rng.choice(((3, 4), (4, 3), (-3, 4), (-4, 3)))
        return constraint(
            kind, i, j,
            plane_i=(a, e1),
            plane_j=(b, e1.scale(p) + e2.scale(q)),
            angle={"cos": Fraction(p, 5)},
        )
    if kind == "plane_plane_coincidence":
        return constraint(kind, i, j, plane=(a, _nzvec(rng)))
    if kind == "plane_plane_distance":
        return constraint(
            kind, i, j,
            point_i=a,
            point_j=a + e1.scale(s) + e2.scale(t) + e3.scale(h),
            normal=e3,
            distance=abs(h) * norm,
        )
    raise ValueError(f"unknown kind {kind!r}")


def random_framework(
    rng: random.Random,
    n_bodies: Optional[int] = None,
    n_constraints: Optional[int] = None,
    kinds: Optional[Sequence[str]] = None,
) -> Framework:
    """A random valid framework; every constraint payload is exact."""
    from bodycad import KIND_NAMES

    nb = n_bodies if n_bodies is not None else rng.randint(2, 4)
    nc = n_constraints if n_constraints is not None else rng.randint(1, 8)
    pool = tuple(kinds) if kinds is not None else KIND_NAMES
    ids = [f"B{k}" for k in range(nb)]
    cons = []
    for _ in range(nc):
        i, j = rng.sample(ids, 2)
        cons.append(random_constraint(rng.choice(pool), i, j, rng))
    return framework(ids, cons)


# --------------------------------------------------------------------------
# rigid interface recipes (each contributes exactly six primitive rows that
# are generically independent, so a tree of them is minimally rigid)


def _shifted(v: tuple[int, int, int], off: Vec3) -> Vec3:
    return vec3(*v) + off


def rigid_sextet(style: str, i: str, j: str, shift: Vec3) -> list[CadConstraint]:
    o = shift
    if style == "bars":
        bars = (
            ((0, -3, 1), (0, 0, 1), 3),
            ((3, -4, 0), (3, -1, 0), 3),
            ((-5, -4, 1), (-1, -3, 9), 9),
            ((-2, -4, 3), (2, -3, 11), 9),
            ((4, -4, -2), (4, -7, -2), 3),
            ((-5, -2, -5), (1, 4, 2), 11),
        )
        return [
            constraint(
                "point_point_distance", i, j,
                point_i=_shifted(p, o), point_j=_shifted(q, o), distance=d,
            )
            for p, q, d in bars
        ]
    if style == "planes":
        return [
            constraint(
                "plane_plane_parallel", i, j,
                point_i=_shifted((0, 2, 0), o), point_j=_shifted((0, 1, 0), o),
                normal=(0, 1, 0),
            ),
            constraint(
                "plane_plane_perpendicular", i, j,
                plane_i=(_shifted((0, 2, 0), o), (1, 0, 0)),
                plane_j=(_shifted((0, 0, 1), o), (0, 0, 1)),
            ),
            constraint("point_point_coincidence", i, j, point=_shifted((0, 1, 1), o)),
        ]
    if style == "line":
        return [
            constraint(
                "line_line_coincidence", i, j, line=(_shifted((0, 0, 2), o), (1, 0, 0))
            ),
            constraint(
                "point_point_distance", i, j,
                point_i=_shifted((0, 0, 0), o), point_j=_shifted((3, 4, 0), o), distance=5,
            ),
            constraint(
                "point_point_distance", i, j,
                point_i=_shifted((0, 5, 2), o), point_j=_shifted((0, 5, 14), o), distance=12,
            ),
        ]
    raise ValueError(f"unknown sextet style {style!r}")


def random_tree_framework(rng: random.Random, n_bodies: int) -> Framework:
    """Spanning tree of rigid six-row interfaces: minimally rigid by design."""
    ids = [f"B{k}" for k in range(n_bodies)]
    cons: list[CadConstraint] = []
    for k in range(1, n_bodies):
        parent = rng.randrange(k)
        style = rng.choice(("bars", "planes", "line"))
        shift = vec3(17 * k, rng.randint(-5, 5), rng.randint(-5, 5))
        cons.extend(rigid_sextet(style, ids[parent], ids[k], shift))
    return framework(ids, cons)


# --------------------------------------------------------------------------
# colored multigraphs


def random_multigraph(
    rng: random.Random,
    max_n: int = 7,
    max_m: int = 14,
    red_fraction: float = 0.0,
) -> MultiGraph:
    n = rng.randint(2, max_n)
    m = rng.randint(0, max_m)
    edges = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        color = RED if rng.random() < red_fraction else BLACK
        edges.append(Edge(min(u, v), max(u, v), color))
    return MultiGraph(n, tuple(edges))


def all_colored_graphs(n: int, max_edges: int) -> list[MultiGraph]:
    """Every colored multigraph on n labeled vertices with at most the given
    number of edges (edge multisets over vertex pairs x colors)."""
    slots = [
        Edge(u, v, color)
        for u, v in itertools.combinations(range(n), 2)
        for color in (RED, BLACK)
    ]
    out = []
    for m in range(max_edges + 1):
        for combo in itertools.combinations_with_replacement(slots, m):
            out.append(MultiGraph(n, tuple(combo)))
    return out
