"""Bodies, geometric elements, the 21 pairwise constraints, and frameworks.

A framework is a set of rigid bodies plus constraints between pairs of them.
Every constraint relates a point, line, or plane fixed on one body to one on
another body (all coordinates in world frame, exact rationals), or names a
single shared element for the coincidence kinds that identify two elements
outright.

The combinatorial side lives here too: the cad graph (one edge per
constraint) and the primitive cad graph (one edge per scalar row the
constraint contributes, red for angular rows, black for blind rows).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DegenerateDirection, InputError, InvalidRadius
from .geometry import Vec3, rat, vec3

# --------------------------------------------------------------------------
# geometric elements


@dataclass(frozen=True)
class Line:
    point: Vec3
    direction: Vec3

    def __post_init__(self) -> None:
        if self.direction.is_zero():
            raise DegenerateDirection("line with zero direction vector")


@dataclass(frozen=True)
class Plane:
    point: Vec3
    normal: Vec3

    def __post_init__(self) -> None:
        if self.normal.is_zero():
            raise DegenerateDirection("plane with zero normal vector")


GeometricElement = Union[Vec3, Line, Plane]


@dataclass(frozen=True)
class Body:
    id: str
    label: str = ""


# --------------------------------------------------------------------------
# constraint kinds
#
# Canonical enumeration order of the 21 kinds.  Each entry carries the number
# of angular (red) and blind (black) primitive rows the kind contributes and
# the payload schema: (file_key, slot, type) where slot is the CadConstraint
# attribute and type one of point/line/plane/direction/distance/angle.

ANGULAR = "angular"
BLIND = "blind"


@dataclass(frozen=True)
class KindInfo:
    name: str
    n_angular: int
    n_blind: int
    fields: tuple[tuple[str, str, str], ...]


def _ki(name: str, n_angular: int, n_blind: int, *fields: tuple[str, str, str]) -> KindInfo:
    return KindInfo(name, n_angular, n_blind, fields)


_POINT_I = ("point_i", "elem_i", "point")
_POINT_J = ("point_j", "elem_j", "point")
_LINE_I = ("line_i", "elem_i", "line")
_LINE_J = ("line_j", "elem_j", "line")
_PLANE_I = ("plane_i", "elem_i", "plane")
_PLANE_J = ("plane_j", "elem_j", "plane")
_DIST = ("distance", "distance", "distance")
_ANGLE = ("angle", "angle", "angle")

KINDS: dict[str, KindInfo] = {
    k.name: k
    for k in (
        _ki("point_point_coincidence", 0, 3, ("point", "shared", "point")),
        _ki("point_point_distance", 0, 1, _POINT_I, _POINT_J, _DIST),
        _ki("point_line_coincidence", 0, 2, _POINT_I, _LINE_J),
        _ki("point_line_distance", 0, 1, _POINT_I, _LINE_J, _DIST),
        _ki("point_plane_coincidence", 0, 1, _POINT_I, _PLANE_J),
        _ki("point_plane_distance", 0, 1, _POINT_I, _PLANE_J, _DIST),
        _ki("line_line_parallel", 2, 0, _POINT_I, _POINT_J, ("direction", "direction", "direction")),
        _ki("line_line_perpendicular", 1, 0, _LINE_I, _LINE_J),
        _ki("line_line_fixed_angular", 1, 0, _LINE_I, _LINE_J, _ANGLE),
        _ki("line_line_coincidence", 2, 2, ("line", "shared", "line")),
        _ki("line_line_distance", 0, 1, _LINE_I, _LINE_J, _DIST),
        _ki("line_plane_parallel", 1, 0, _LINE_I, _PLANE_J),
        _ki("line_plane_perpendicular", 2, 0, _LINE_I, _PLANE_J),
        _ki("line_plane_fixed_angular", 1, 0, _LINE_I, _PLANE_J, _ANGLE),
        _ki("line_plane_coincidence", 1, 1, _LINE_I, _PLANE_J),
        _ki("line_plane_distance", 1, 1, _LINE_I, _PLANE_J, _DIST),
        _ki("plane_plane_parallel", 2, 0, _POINT_I, _POINT_J, ("normal", "direction", "direction")),
        _ki("plane_plane_perpendicular", 1, 0, _PLANE_I, _PLANE_J),
        _ki("plane_plane_fixed_angular", 1, 0, _PLANE_I, _PLANE_J, _ANGLE),
        _ki("plane_plane_coincidence", 2, 1, ("plane", "shared", "plane")),
        _ki("plane_plane_distance", 2, 1, _POINT_I, _POINT_J, ("normal", "direction", "direction"), _DIST),
    )
}

KIND_NAMES: tuple[str, ...] = tuple(KINDS)

# Exact cosines for the angles that have rational ones, keyed by degrees
# mod 360.  Anything else goes through math.cos and taints exactness.
_EXACT_COS: dict[int, Fraction] = {
    0: Fraction(1),
    60: Fraction(1, 2),
    90: Fraction(0),
    120: Fraction(-1, 2),
    180: Fraction(-1),
    240: Fraction(-1, 2),
    270: Fraction(0),
    300: Fraction(1, 2),
}


@dataclass(frozen=True)
class CadConstraint:
    """One of the 21 pairwise constraints between bodies ``i`` and ``j``.

    ``dist2``/``cos2`` are the canonical exact payloads used by validation
    (squares avoid irrational lengths); ``distance``/``cos`` keep the values
    as given for serialization.  ``angle_exact`` records whether the cosine
    was obtained exactly; it is metadata, not identity.
    """

    kind: str
    i: str
    j: str
    elem_i: Optional[GeometricElement] = None
    elem_j: Optional[GeometricElement] = None
    shared: Optional[GeometricElement] = None
    direction: Optional[Vec3] = None
    distance: Optional[Fraction] = None
    dist2: Optional[Fraction] = None
    cos: Optional[Fraction] = None
    cos2: Optional[Fraction] = None
    angle_exact: bool = field(default=True, compare=False)

    @property
    def info(self) -> KindInfo:
        return KINDS[self.kind]


def _to_vec3(value: object, what: str) -> Vec3:
    if isinstance(value, Vec3):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 3:
        return vec3(*value)
    raise InputError(f"{what}: expected a 3-vector, got {value!r}")


def _to_line(value: object, what: str) -> Line:
    if isinstance(value, Line):
        return value
    if isinstance(value, dict) and set(value) >= {"point", "direction"}:
        return Line(_to_vec3(value["point"], what), _to_vec3(value["direction"], what))
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Line(_to_vec3(value[0], what), _to_vec3(value[1], what))
    raise InputError(f"{what}: expected a line (point + direction), got {value!r}")


def _to_plane(value: object, what: str) -> Plane:
    if isinstance(value, Plane):
        return value
    if isinstance(value, dict) and set(value) >= {"point", "normal"}:
        return Plane(_to_vec3(value["point"], what), _to_vec3(value["normal"], what))
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Plane(_to_vec3(value[0], what), _to_vec3(value[1], what))
    raise InputError(f"{what}: expected a plane (point + normal), got {value!r}")


def _to_angle(value: object, what: str) -> tuple[Fraction, bool]:
    """Return (cos, exact) for an angle payload."""
    if isinstance(value, Fraction):
        return value, True
    if isinstance(value, (int, str)):
        return rat(value), True
    if isinstance(value, dict):
        if "cos" in value:
            return rat(value["cos"]), True
        if "degrees" in value:
            deg = value["degrees"]
            if isinstance(deg, int) or (isinstance(deg, Fraction) and deg.denominator == 1):
                key = int(deg) % 360
                if key in _EXACT_COS:
                    return _EXACT_COS[key], True
            c = math.cos(math.radians(float(deg)))
            return Fraction(c), False
    raise InputError(f"{what}: expected an angle as cos or {{'degrees': ...}}, got {value!r}")


def constraint(kind: str, i: str, j: str, **payload: object) -> CadConstraint:
    """Build a constraint, coercing payload values and checking the schema."""
    if kind not in KINDS:
        raise InputError(f"unknown constraint kind {kind!r}")
    if i == j:
        raise InputError(f"{kind}: constraint endpoints must be distinct bodies, got {i!r} twice")
    info = KINDS[kind]
    wanted = {fk for fk, _, _ in info.fields}
    extra = set(payload) - wanted
    if extra:
        raise InputError(f"{kind}: unexpected payload fields {sorted(extra)}")
    kwargs: dict[str, object] = {}
    for file_key, slot, ftype in info.fields:
        if file_key not in payload:
            raise InputError(f"{kind}: missing payload field {file_key!r}")
        value = payload[file_key]
        what = f"{kind}.{file_key}"
        if ftype == "point":
            kwargs[slot] = _to_vec3(value, what)
        elif ftype == "line":
            kwargs[slot] = _to_line(value, what)
        elif ftype == "plane":
            kwargs[slot] = _to_plane(value, what)
        elif ftype == "direction":
            d = _to_vec3(value, what)
            if d.is_zero():
                raise DegenerateDirection(f"{what}: zero direction")
            kwargs[slot] = d
        elif ftype == "distance":
            a = rat(value) if not isinstance(value, (tuple, list, dict)) else None
            if a is None:
                raise InputError(f"{what}: expected a rational number")
            if a < 0:
                raise InputError(f"{what}: distance must be nonnegative, got {a}")
            kwargs["distance"] = a
            kwargs["dist2"] = a * a
        elif ftype == "angle":
            c, exact = _to_angle(value, what)
            kwargs["cos"] = c
            kwargs["cos2"] = c * c
            kwargs["angle_exact"] = exact
        else:  # pragma: no cover
            raise AssertionError(ftype)
    return CadConstraint(kind=kind, i=i, j=j, **kwargs)  # type: ignore[arg-type]


# --------------------------------------------------------------------------
# frameworks


@dataclass(frozen=True)
class Framework:
    bodies: tuple[Body, ...]
    constraints: tuple[CadConstraint, ...]

    def __post_init__(self) -> None:
        ids = [b.id for b in self.bodies]
        if len(set(ids)) != len(ids):
            raise InputError(f"duplicate body ids: {ids}")

    @property
    def body_index(self) -> dict[str, int]:
        return {b.id: k for k, b in enumerate(self.bodies)}

    @property
    def n(self) -> int:
        return len(self.bodies)

    @property
    def exact(self) -> bool:
        """True when every payload was obtained exactly (no float cosines)."""
        return all(c.angle_exact for c in self.constraints)


def framework(bodies: Sequence[Union[Body, str]], constraints_: Sequence[CadConstraint]) -> Framework:
    bs = tuple(b if isinstance(b, Body) else Body(str(b)) for b in bodies)
    fw = Framework(bs, tuple(constraints_))
    index = fw.body_index
    for k, c in enumerate(fw.constraints):
        for end in (c.i, c.j):
            if end not in index:
                raise InputError(f"constraint {k} ({c.kind}): unknown body {end!r}")
    return fw


@dataclass(frozen=True)
class Violation:
    constraint_index: int
    kind: str
    i: str
    j: str
    message: str

    def __str__(self) -> str:
        return f"constraint {self.constraint_index} ({self.kind} {self.i}-{self.j}): {self.message}"


_DEFAULT_TOL = Fraction(1, 10**9)


def validate(fw: Framework, tolerance: Optional[Fraction] = None) -> list[Violation]:
    """Check that every constraint's payload is consistent with the realized
    world-coordinate geometry.  Returns one Violation per failed check.

    Comparisons are exact rational equalities unless the framework contains
    float-derived cosines, in which case the given tolerance (default 1e-9)
    is applied to the residuals.
    """
    exact = fw.exact
    tol = tolerance if tolerance is not None else _DEFAULT_TOL

    def eq(a: Fraction, b: Fraction) -> bool:
        return a == b if exact else abs(a - b) <= tol

    out: list[Violation] = []
    for idx, c in enumerate(fw.constraints):
        def bad(message: str) -> None:
            out.append(Violation(idx, c.kind, c.i, c.j, message))

        k = c.kind
        if k == "point_point_coincidence":
            pass  # a single shared point is consistent by construction
        elif k == "point_point_distance":
            d = c.elem_i - c.elem_j  # type: ignore[operator]
            if not eq(d.norm2(), c.dist2):
                bad(f"realized squared distance {d.norm2()} != payload {c.dist2}")
        elif k == "point_line_coincidence":
            ln: Line = c.elem_j  # type: ignore[assignment]
            if not (c.elem_i - ln.point).cross(ln.direction).is_zero():
                bad("point does not lie on the line")
        elif k == "point_line_distance":
            ln = c.elem_j  # type: ignore[assignment]
            w = c.elem_i - ln.point
            lhs = w.cross(ln.direction).norm2()
            if not eq(lhs, c.dist2 * ln.direction.norm2()):
                bad("realized point-line distance does not match payload")
        elif k == "point_plane_coincidence":
            pl: Plane = c.elem_j  # type: ignore[assignment]
            if not eq((c.elem_i - pl.point).dot(pl.normal), Fraction(0)):
                bad("point does not lie on the plane")
        elif k == "point_plane_distance":
            pl = c.elem_j  # type: ignore[assignment]
            h = (c.elem_i - pl.point).dot(pl.normal)
            if not eq(h * h, c.dist2 * pl.normal.norm2()):
                bad("realized point-plane distance does not match payload")
        elif k == "line_line_parallel":
            pass  # a single shared direction is parallel by construction
        elif k == "line_line_perpendicular":
            if not eq(c.elem_i.direction.dot(c.elem_j.direction), Fraction(0)):  # type: ignore[union-attr]
                bad("line directions are not perpendicular")
        elif k == "line_line_fixed_angular":
            di, dj = c.elem_i.direction, c.elem_j.direction  # type: ignore[union-attr]
            if di.cross(dj).is_zero():
                bad("lines are parallel; use line_line_parallel")
            elif not eq(di.dot(dj) ** 2, c.cos2 * di.norm2() * dj.norm2()):
                bad("realized angle does not match payload cosine")
        elif k == "line_line_coincidence":
            pass  # a single shared line
        elif k == "line_line_distance":
            li: Line = c.elem_i  # type: ignore[assignment]
            lj: Line = c.elem_j  # type: ignore[assignment]
            cdir = li.direction.cross(lj.direction)
            if cdir.is_zero():
                bad("lines are parallel; line-line distance requires non-parallel lines")
            else:
                h = (lj.point - li.point).dot(cdir)
                if not eq(h * h, c.dist2 * cdir.norm2()):
                    bad("realized line-line distance does not match payload")
        elif k == "line_plane_parallel":
            if not eq(c.elem_i.direction.dot(c.elem_j.normal), Fraction(0)):  # type: ignore[union-attr]
                bad("line direction is not parallel to the plane")
        elif k == "line_plane_perpendicular":
            if not c.elem_i.direction.cross(c.elem_j.normal).is_zero():  # type: ignore[union-attr]
                bad("line direction is not parallel to the plane normal")
        elif k == "line_plane_fixed_angular":
            di, nj = c.elem_i.direction, c.elem_j.normal  # type: ignore[union-attr]
            if di.cross(nj).is_zero():
                bad("line is perpendicular to the plane; use line_plane_perpendicular")
            elif not eq(di.dot(nj) ** 2, c.cos2 * di.norm2() * nj.norm2()):
                bad("realized angle to the plane normal does not match payload cosine")
        elif k == "line_plane_coincidence":
            li, pl = c.elem_i, c.elem_j  # type: ignore[assignment]
            if not eq(li.direction.dot(pl.normal), Fraction(0)):
                bad("line direction is not parallel to the plane")
            elif not eq((li.point - pl.point).dot(pl.normal), Fraction(0)):
                bad("line anchor point does not lie on the plane")
        elif k == "line_plane_distance":
            li, pl = c.elem_i, c.elem_j  # type: ignore[assignment]
            if not eq(li.direction.dot(pl.normal), Fraction(0)):
                bad("line direction is not parallel to the plane")
            else:
                h = (li.point - pl.point).dot(pl.normal)
                if not eq(h * h, c.dist2 * pl.normal.norm2()):
                    bad("realized line-plane distance does not match payload")
        elif k == "plane_plane_parallel":
            pass  # shared normal
        elif k == "plane_plane_perpendicular":
            if not eq(c.elem_i.normal.dot(c.elem_j.normal), Fraction(0)):  # type: ignore[union-attr]
                bad("plane normals are not perpendicular")
        elif k == "plane_plane_fixed_angular":
            ni, nj = c.elem_i.normal, c.elem_j.normal  # type: ignore[union-attr]
            if ni.cross(nj).is_zero():
                bad("planes are parallel; use plane_plane_parallel")
            elif not eq(ni.dot(nj) ** 2, c.cos2 * ni.norm2() * nj.norm2()):
                bad("realized dihedral angle does not match payload cosine")
        elif k == "plane_plane_coincidence":
            pass  # shared plane
        elif k == "plane_plane_distance":
            h = (c.elem_i - c.elem_j).dot(c.direction)  # type: ignore[operator]
            if not eq(h * h, c.dist2 * c.direction.norm2()):
                bad("realized plane-plane distance does not match payload")
        else:  # pragma: no cover
            raise AssertionError(k)

        if c.cos2 is not None and c.cos2 > 1:
            bad(f"cosine payload {c.cos} has magnitude > 1")
    return out


# --------------------------------------------------------------------------
# cad graph and primitive cad graph


@dataclass(frozen=True)
class CadEdge:
    constraint_index: int
    kind: str
    i: str
    j: str
    n_angular: int
    n_blind: int


@dataclass(frozen=True)
class CadGraph:
    body_ids: tuple[str, ...]
    edges: tuple[CadEdge, ...]


@dataclass(frozen=True)
class PrimitiveEdge:
    u: int
    v: int
    color: str  # "red" (angular) or "black" (blind)
    constraint_index: int
    ordinal: int


@dataclass(frozen=True)
class PrimitiveCadGraph:
    body_ids: tuple[str, ...]
    edges: tuple[PrimitiveEdge, ...]

    @property
    def n(self) -> int:
        return len(self.body_ids)

    def edge_list(self) -> list[tuple[int, int, str]]:
        return [(e.u, e.v, e.color) for e in self.edges]


def cad_graph_of(fw: Framework) -> CadGraph:
    edges = tuple(
        CadEdge(k, c.kind, c.i, c.j, KINDS[c.kind].n_angular, KINDS[c.kind].n_blind)
        for k, c in enumerate(fw.constraints)
    )
    return CadGraph(tuple(b.id for b in fw.bodies), edges)


def primitive_graph_of(fw: Framework) -> PrimitiveCadGraph:
    """Expand each constraint into its angular (red) and blind (black) edges.

    Counts come from the kind alone, so the graph is available even for
    payloads the compiler would reject; red edges precede black ones within
    a constraint, mirroring the row order of the rigidity matrix.
    """
    index = fw.body_index
    edges: list[PrimitiveEdge] = []
    for k, c in enumerate(fw.constraints):
        info = KINDS[c.kind]
        u, v = index[c.i], index[c.j]
        ordinal = 0
        for _ in range(info.n_angular):
            edges.append(PrimitiveEdge(u, v, "red", k, ordinal))
            ordinal += 1
        for _ in range(info.n_blind):
            edges.append(PrimitiveEdge(u, v, "black", k, ordinal))
            ordinal += 1
    return PrimitiveCadGraph(tuple(b.id for b in fw.bodies), tuple(edges))


# --------------------------------------------------------------------------
# tangency constraints (reduce to distance kinds)


TANGENCY_KINDS = (
    "sphere_sphere",
    "sphere_plane",
    "sphere_line",
    "sphere_point",
    "cylinder_sphere",
    "cylinder_plane",
    "cylinder_line",
    "cylinder_point",
    "cylinder_cylinder",
)


@dataclass(frozen=True)
class TangencyConstraint:
    """Tangency between spheres/cylinders and simpler elements on body j.

    The element on body i is a sphere (center_i, radius_i) or a cylinder
    (axis_i, radius_i); ``internal=True`` selects internal tangency where two
    radii are involved (distance |r_i - r_j| instead of r_i + r_j).
    """

    kind: str
    i: str
    j: str
    radius_i: Fraction
    center_i: Optional[Vec3] = None
    axis_i: Optional[Line] = None
    center_j: Optional[Vec3] = None
    axis_j: Optional[Line] = None
    point_j: Optional[Vec3] = None
    line_j: Optional[Line] = None
    plane_j: Optional[Plane] = None
    radius_j: Optional[Fraction] = None
    internal: bool = False


def tangency(kind: str, i: str, j: str, *, internal: bool = False, **payload: object) -> TangencyConstraint:
    if kind not in TANGENCY_KINDS:
        raise InputError(f"unknown tangency kind {kind!r}")
    kw: dict[str, object] = {"internal": internal}
    for key, value in payload.items():
        if key in ("center_i", "center_j", "point_j"):
            kw[key] = _to_vec3(value, f"{kind}.{key}")
        elif key in ("axis_i", "axis_j", "line_j"):
            kw[key] = _to_line(value, f"{kind}.{key}")
        elif key == "plane_j":
            kw[key] = _to_plane(value, f"{kind}.{key}")
        elif key in ("radius_i", "radius_j"):
            kw[key] = rat(value)  # type: ignore[arg-type]
        else:
            raise InputError(f"{kind}: unexpected tangency field {key!r}")
    if "radius_i" not in kw:
        raise InputError(f"{kind}: missing radius_i")
    return TangencyConstraint(kind=kind, i=i, j=j, **kw)  # type: ignore[arg-type]


def _tangency_distance(t: TangencyConstraint, two_radii: bool) -> Fraction:
    r1 = t.radius_i
    if r1 is None or r1 <= 0:
        raise InvalidRadius(f"{t.kind}: radius_i must be positive, got {r1}")
    if not two_radii:
        if t.internal:
            raise InputError(f"{t.kind}: internal tangency needs two radii")
        return r1
    r2 = t.radius_j
    if r2 is None or r2 <= 0:
        raise InvalidRadius(f"{t.kind}: radius_j must be positive, got {r2}")
    if t.internal:
        if r1 == r2:
            raise InvalidRadius(f"{t.kind}: internal tangency with equal radii has zero distance")
        return abs(r1 - r2)
    return r1 + r2


def _need(t: TangencyConstraint, attr: str) -> object:
    value = getattr(t, attr)
    if value is None:
        raise InputError(f"{t.kind}: missing {attr}")
    return value


def reduce_tangency(t: TangencyConstraint) -> CadConstraint:
    """Rewrite a tangency as the equivalent distance constraint.

    Sphere tangencies replace the sphere by its center; cylinder tangencies
    replace the cylinder by its axis.  Where the reduced kind fixes which
    side carries the point (point-line kinds put the point on body i), the
    constraint edge is emitted with endpoints swapped accordingly.
    """
    k = t.kind
    if k == "sphere_sphere":
        a = _tangency_distance(t, two_radii=True)
        return constraint("point_point_distance", t.i, t.j,
                          point_i=_need(t, "center_i"), point_j=_need(t, "center_j"), distance=a)
    if k == "sphere_plane":
        a = _tangency_distance(t, two_radii=False)
        return constraint("point_plane_distance", t.i, t.j,
                          point_i=_need(t, "center_i"), plane_j=_need(t, "plane_j"), distance=a)
    if k == "sphere_line":
        a = _tangency_distance(t, two_radii=False)
        return constraint("point_line_distance", t.i, t.j,
                          point_i=_need(t, "center_i"), line_j=_need(t, "line_j"), distance=a)
    if k == "sphere_point":
        a = _tangency_distance(t, two_radii=False)
        return constraint("point_point_distance", t.i, t.j,
                          point_i=_need(t, "center_i"), point_j=_need(t, "point_j"), distance=a)
    if k == "cylinder_sphere":
        a = _tangency_distance(t, two_radii=True)
        # point (sphere center) sits on body j, axis line on body i
        return constraint("point_line_distance", t.j, t.i,
                          point_i=_need(t, "center_j"), line_j=_need(t, "axis_i"), distance=a)
    if k == "cylinder_plane":
        a = _tangency_distance(t, two_radii=False)
        return constraint("line_plane_distance", t.i, t.j,
                          line_i=_need(t, "axis_i"), plane_j=_need(t, "plane_j"), distance=a)
    if k == "cylinder_line":
        a = _tangency_distance(t, two_radii=False)
        return constraint("line_line_distance", t.i, t.j,
                          line_i=_need(t, "axis_i"), line_j=_need(t, "line_j"), distance=a)
    if k == "cylinder_point":
        a = _tangency_distance(t, two_radii=False)
        return constraint("point_line_distance", t.j, t.i,
                          point_i=_need(t, "point_j"), line_j=_need(t, "axis_i"), distance=a)
    if k == "cylinder_cylinder":
        a = _tangency_distance(t, two_radii=True)
        return constraint("line_line_distance", t.i, t.j,
                          line_i=_need(t, "axis_i"), line_j=_need(t, "axis_j"), distance=a)
    raise InputError(f"unknown tangency kind {k!r}")  # pragma: no cover


# --------------------------------------------------------------------------
# serialization (JSON-ready plain data)


def _num_to_data(x: Fraction) -> object:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec_to_data(v: Vec3) -> list[object]:
    return [_num_to_data(v.x), _num_to_data(v.y), _num_to_data(v.z)]


def _elem_to_data(e: GeometricElement) -> object:
    if isinstance(e, Vec3):
        return _vec_to_data(e)
    if isinstance(e, Line):
        return {"point": _vec_to_data(e.point), "direction": _vec_to_data(e.direction)}
    return {"point": _vec_to_data(e.point), "normal": _vec_to_data(e.normal)}


def constraint_to_data(c: CadConstraint) -> dict[str, object]:
    data: dict[str, object] = {"kind": c.kind, "i": c.i, "j": c.j}
    for file_key, slot, ftype in c.info.fields:
        if ftype == "distance":
            data[file_key] = _num_to_data(c.distance)  # type: ignore[arg-type]
        elif ftype == "angle":
            data[file_key] = {"cos": _num_to_data(c.cos)}  # type: ignore[arg-type]
        else:
            data[file_key] = _elem_to_data(getattr(c, slot))
    return data


def framework_to_data(fw: Framework) -> dict[str, object]:
    bodies = []
    for b in fw.bodies:
        entry: dict[str, object] = {"id": b.id}
        if b.label:
            entry["label"] = b.label
        bodies.append(entry)
    return {
        "version": 1,
        "bodies": bodies,
        "constraints": [constraint_to_data(c) for c in fw.constraints],
    }


def framework_from_data(data: object) -> Framework:
    if not isinstance(data, dict):
        raise InputError("framework file must be a JSON object")
    if data.get("version") != 1:
        raise InputError(f"unsupported framework file version {data.get('version')!r}")
    raw_bodies = data.get("bodies")
    raw_constraints = data.get("constraints")
    if not isinstance(raw_bodies, list) or not raw_bodies:
        raise InputError("framework file needs a nonempty 'bodies' list")
    if not isinstance(raw_constraints, list):
        raise InputError("framework file needs a 'constraints' list")
    bodies = []
    for rb in raw_bodies:
        if not isinstance(rb, dict) or "id" not in rb:
            raise InputError(f"bad body entry: {rb!r}")
        bodies.append(Body(str(rb["id"]), str(rb.get("label", ""))))
    constraints_ = []
    for rc in raw_constraints:
        if not isinstance(rc, dict):
            raise InputError(f"bad constraint entry: {rc!r}")
        rc = dict(rc)
        try:
            kind = rc.pop("kind")
            i = rc.pop("i")
            j = rc.pop("j")
        except KeyError as exc:
            raise InputError(f"constraint entry missing {exc}") from exc
        constraints_.append(constraint(str(kind), str(i), str(j), **rc))
    return framework(bodies, constraints_)
