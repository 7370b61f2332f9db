"""Compile constraints into primitive rows of the rigidity matrix.

Every constraint reduces to angular and blind primitive rows built from four
building blocks.  A row stores the six coefficients for body ``i``; body
``j`` always receives the negated coefficients, so a row annihilates any
motion that moves both bodies identically.

Angular rows have a zero velocity block and constrain only relative
rotation; blind rows couple rotation and translation through the join of a
point with a direction (or another point, for the bar specialization).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegenerateConstraint, DegenerateDirection, ZeroDistance
from .geometry import TensorVec6, Vec3, Vec4, join4, orthogonal_pair, pair6, tensor6, vec3
from .model import ANGULAR, BLIND, CadConstraint, Framework, Line, Plane

_ZERO = vec3(0, 0, 0)


@dataclass(frozen=True)
class PrimitiveRow:
    """One scalar row: coefficients ``coeff`` on body ``i``, ``-coeff`` on ``j``."""

    i: str
    j: str
    coeff: TensorVec6
    cls: str  # "angular" or "blind"
    kind: str
    constraint_index: Optional[int] = None
    ordinal: int = 0


# --------------------------------------------------------------------------
# building blocks (coefficient vectors only; callers attach provenance)


def bb_angular_fixed(d_i: Vec3, d_j: Vec3) -> list[TensorVec6]:
    """One angular row freezing the angle between directions d_i and d_j.

    The rotation block on body i is ``d_j x d_i``; parallel directions give
    a zero row and are rejected.
    """
    c = d_j.cross(d_i)
    if c.is_zero():
        raise DegenerateConstraint("fixed-angle row between parallel directions")
    return [pair6(_ZERO, c)]


def bb_angular_parallel(d: Vec3) -> list[TensorVec6]:
    """Two angular rows forcing a shared direction d to stay shared.

    The rotation blocks are two independent rows of the cross-product
    matrix of d; together they annihilate exactly the relative rotations
    whose axis is parallel to d.
    """
    u1, u2 = orthogonal_pair(d)
    return [pair6(_ZERO, u1), pair6(_ZERO, u2)]


def bb_blind_orthogonal(p: Vec3, c: Vec3) -> list[TensorVec6]:
    """One blind row keeping the point p from moving along the direction c."""
    if c.is_zero():
        raise DegenerateDirection("blind row with zero direction")
    return [join4(Vec4.point(p), Vec4.direction(c))]


def bb_blind_parallel(p: Vec3, c: Vec3) -> list[TensorVec6]:
    """Two blind rows allowing the point p to move only parallel to c."""
    u1, u2 = orthogonal_pair(c)
    return [join4(Vec4.point(p), Vec4.direction(u1)), join4(Vec4.point(p), Vec4.direction(u2))]


def bar_row(p_i: Vec3, p_j: Vec3) -> TensorVec6:
    """The bar (distance) row between two points: join of the two points."""
    return join4(Vec4.point(p_i), Vec4.point(p_j))


def _point_coincidence_rows(p: Vec3) -> list[TensorVec6]:
    x, y, z = p.x, p.y, p.z
    one, zero = Fraction(1), Fraction(0)
    return [
        tensor6(one, zero, zero, zero, -z, y),
        tensor6(zero, one, zero, z, zero, -x),
        tensor6(zero, zero, one, -y, x, zero),
    ]


# --------------------------------------------------------------------------
# geometric helpers


def _foot_on_line(p: Vec3, line: Line) -> Vec3:
    d = line.direction
    t = (p - line.point).dot(d) / d.norm2()
    return line.point + d.scale(t)


def _closest_point_on_first(li: Line, lj: Line) -> Vec3:
    """The point on line li closest to line lj (lines must be non-parallel)."""
    di, dj = li.direction, lj.direction
    a, b, c2 = di.norm2(), di.dot(dj), dj.norm2()
    denom = a * c2 - b * b
    if denom == 0:
        raise DegenerateConstraint("closest point undefined for parallel lines")
    w = lj.point - li.point
    t = (w.dot(di) * c2 - w.dot(dj) * b) / denom
    return li.point + di.scale(t)


def _check_distance(c: CadConstraint) -> None:
    if c.dist2 == 0:
        raise ZeroDistance(f"{c.kind} with zero distance; use the coincidence kind instead")


# --------------------------------------------------------------------------
# dispatch


def compile_constraint(c: CadConstraint, index: Optional[int] = None) -> list[PrimitiveRow]:
    """Emit the primitive rows for one constraint, angular rows first."""
    k = c.kind
    angular: list[TensorVec6] = []
    blind: list[TensorVec6] = []

    if k == "point_point_coincidence":
        blind = _point_coincidence_rows(c.shared)  # type: ignore[arg-type]
    elif k == "point_point_distance":
        _check_distance(c)
        blind = [bar_row(c.elem_i, c.elem_j)]  # type: ignore[arg-type]
    elif k == "point_line_coincidence":
        blind = bb_blind_parallel(c.elem_i, c.elem_j.direction)  # type: ignore[union-attr, arg-type]
    elif k == "point_line_distance":
        _check_distance(c)
        foot = _foot_on_line(c.elem_i, c.elem_j)  # type: ignore[arg-type]
        offset = c.elem_i - foot  # type: ignore[operator]
        if offset.is_zero():
            raise DegenerateConstraint("point lies on the line; the distance row vanishes")
        blind = bb_blind_orthogonal(c.elem_i, offset)  # type: ignore[arg-type]
    elif k == "point_plane_coincidence":
        blind = bb_blind_orthogonal(c.elem_i, c.elem_j.normal)  # type: ignore[union-attr, arg-type]
    elif k == "point_plane_distance":
        _check_distance(c)
        blind = bb_blind_orthogonal(c.elem_i, c.elem_j.normal)  # type: ignore[union-attr, arg-type]
    elif k == "line_line_parallel":
        angular = bb_angular_parallel(c.direction)  # type: ignore[arg-type]
    elif k == "line_line_perpendicular":
        angular = bb_angular_fixed(c.elem_i.direction, c.elem_j.direction)  # type: ignore[union-attr]
    elif k == "line_line_fixed_angular":
        angular = bb_angular_fixed(c.elem_i.direction, c.elem_j.direction)  # type: ignore[union-attr]
    elif k == "line_line_coincidence":
        line: Line = c.shared  # type: ignore[assignment]
        angular = bb_angular_parallel(line.direction)
        blind = bb_blind_parallel(line.point, line.direction)
    elif k == "line_line_distance":
        _check_distance(c)
        li: Line = c.elem_i  # type: ignore[assignment]
        lj: Line = c.elem_j  # type: ignore[assignment]
        cdir = li.direction.cross(lj.direction)
        if cdir.is_zero():
            raise DegenerateConstraint("line-line distance requires non-parallel lines")
        blind = bb_blind_orthogonal(_closest_point_on_first(li, lj), cdir)
    elif k == "line_plane_parallel":
        angular = bb_angular_fixed(c.elem_i.direction, c.elem_j.normal)  # type: ignore[union-attr]
    elif k == "line_plane_perpendicular":
        angular = bb_angular_parallel(c.elem_i.direction)  # type: ignore[union-attr]
    elif k == "line_plane_fixed_angular":
        angular = bb_angular_fixed(c.elem_i.direction, c.elem_j.normal)  # type: ignore[union-attr]
    elif k == "line_plane_coincidence":
        angular = bb_angular_fixed(c.elem_i.direction, c.elem_j.normal)  # type: ignore[union-attr]
        blind = bb_blind_orthogonal(c.elem_i.point, c.elem_j.normal)  # type: ignore[union-attr]
    elif k == "line_plane_distance":
        _check_distance(c)
        angular = bb_angular_fixed(c.elem_i.direction, c.elem_j.normal)  # type: ignore[union-attr]
        blind = bb_blind_orthogonal(c.elem_i.point, c.elem_j.normal)  # type: ignore[union-attr]
    elif k == "plane_plane_parallel":
        angular = bb_angular_parallel(c.direction)  # type: ignore[arg-type]
    elif k == "plane_plane_perpendicular":
        angular = bb_angular_fixed(c.elem_i.normal, c.elem_j.normal)  # type: ignore[union-attr]
    elif k == "plane_plane_fixed_angular":
        angular = bb_angular_fixed(c.elem_i.normal, c.elem_j.normal)  # type: ignore[union-attr]
    elif k == "plane_plane_coincidence":
        plane: Plane = c.shared  # type: ignore[assignment]
        angular = bb_angular_parallel(plane.normal)
        blind = bb_blind_orthogonal(plane.point, plane.normal)
    elif k == "plane_plane_distance":
        _check_distance(c)
        angular = bb_angular_parallel(c.direction)  # type: ignore[arg-type]
        blind = bb_blind_orthogonal(c.elem_i, c.direction)  # type: ignore[arg-type]
    else:  # pragma: no cover
        raise AssertionError(k)

    info = c.info
    assert len(angular) == info.n_angular and len(blind) == info.n_blind, c.kind
    rows = []
    for ordinal, coeff in enumerate(angular + blind):
        cls = ANGULAR if ordinal < len(angular) else BLIND
        rows.append(PrimitiveRow(c.i, c.j, coeff, cls, c.kind, index, ordinal))
    return rows


def compile_framework(fw: Framework) -> list[PrimitiveRow]:
    """All primitive rows of the framework, in constraint input order."""
    out: list[PrimitiveRow] = []
    for k, c in enumerate(fw.constraints):
        out.extend(compile_constraint(c, k))
    return out
