"""Rigidity matrix assembly and infinitesimal rigidity analysis.

The matrix has six columns per body, ordered (velocity block, negated
angular-velocity block), and one row per primitive constraint row.  A
framework on n bodies is infinitesimally rigid exactly when the matrix has
rank 6n - 6: the six trivial motions (shared instantaneous screws) always
lie in the kernel, and rigidity means nothing else does.

Rank and kernels are computed exactly over the rationals by default; the
float mode cross-checks with numpy's SVD under an explicit tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .compiler import PrimitiveRow, compile_framework
from .errors import InputError
from .geometry import Vec3, vec3
from .model import CadConstraint, Framework, Line, Plane, validate

Row = list[Fraction]

# --------------------------------------------------------------------------
# exact linear algebra over the rationals


def _rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form (in place) with first-nonzero pivoting.

    Returns the matrix and the list of pivot column indices.  Pivot choice
    is deterministic: scan columns left to right, take the first row at or
    below the current one with a nonzero entry.
    """
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                factor = rows[k][col]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    _, pivots = _rref([list(r) for r in rows])
    return len(pivots)


def rational_nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Row]:
    """Canonical kernel basis: one vector per free column, unit there."""
    reduced, pivots = _rref([list(r) for r in rows])
    pivot_set = set(pivots)
    basis: list[Row] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for k, col in enumerate(pivots):
            vec[col] = -reduced[k][free]
        basis.append(vec)
    return basis


def _float_singular_values(rows: Sequence[Sequence[Fraction]]) -> np.ndarray:
    a = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def float_rank(rows: Sequence[Sequence[Fraction]], tolerance: float) -> int:
    s = _float_singular_values(rows)
    if s.size == 0:
        return 0
    return int(np.sum(s > tolerance * max(1.0, float(s[0]))))


def float_nullspace(rows: Sequence[Sequence[Fraction]], ncols: int, tolerance: float) -> list[list[float]]:
    a = np.array([[float(x) for x in row] for row in rows], dtype=float)
    if a.size == 0:
        return [[1.0 if k == c else 0.0 for c in range(ncols)] for k in range(ncols)]
    _, s, vt = np.linalg.svd(a)
    cutoff = tolerance * max(1.0, float(s[0])) if s.size else tolerance
    rank = int(np.sum(s > cutoff))
    return [list(map(float, vt[k])) for k in range(rank, ncols)]


# --------------------------------------------------------------------------
# assembly


@dataclass(frozen=True)
class RigidityMatrix:
    body_ids: tuple[str, ...]
    rows: tuple[PrimitiveRow, ...]

    @property
    def n(self) -> int:
        return len(self.body_ids)

    def dense(self) -> list[Row]:
        index = {b: k for k, b in enumerate(self.body_ids)}
        out: list[Row] = []
        for row in self.rows:
            dense = [Fraction(0)] * (6 * self.n)
            ci, cj = 6 * index[row.i], 6 * index[row.j]
            for k in range(6):
                dense[ci + k] = row.coeff[k]
                dense[cj + k] = -row.coeff[k]
            out.append(dense)
        return out

    def column_labels(self) -> list[str]:
        labels = []
        for b in self.body_ids:
            labels.extend(f"{axis}_{b}" for axis in ("vx", "vy", "vz", "wx", "wy", "wz"))
        return labels


def assemble(fw: Framework, *, check: bool = True) -> RigidityMatrix:
    """Compile the framework and lay out its rigidity matrix.

    With ``check`` (the default) the framework is validated first and any
    violation is an InputError: rows built from geometry that contradicts
    the payload would not represent the constraint they claim to.
    """
    if check:
        violations = validate(fw)
        if violations:
            details = "; ".join(str(v) for v in violations)
            raise InputError(f"framework does not satisfy its own constraints: {details}")
    rows = tuple(compile_framework(fw))
    return RigidityMatrix(tuple(b.id for b in fw.bodies), rows)


def trivial_basis(n: int) -> list[Row]:
    """Six kernel vectors: every body moving with the same screw."""
    basis = []
    for k in range(6):
        vec = [Fraction(0)] * (6 * n)
        for b in range(n):
            vec[6 * b + k] = Fraction(1)
        basis.append(vec)
    return basis


# --------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class RedundantRow:
    row_index: int
    constraint_index: Optional[int]
    ordinal: int
    kind: str
    cls: str
    detected_by: str  # "constraint" (whole constraint removable) or "row"


@dataclass(frozen=True)
class ComponentReport:
    body_ids: tuple[str, ...]
    rank: int
    dof: int
    is_rigid: bool


@dataclass(frozen=True)
class AuditReport:
    trials: int
    seed: int
    base_rank: int
    ranks: tuple[int, ...]
    stable: bool


@dataclass(frozen=True)
class RigidityReport:
    n: int
    row_count: int
    rank: int
    dof: int
    is_rigid: bool
    is_minimally_rigid: bool
    is_overconstrained: bool
    redundant: tuple[RedundantRow, ...]
    flex_basis: tuple[tuple[Union[Fraction, float], ...], ...]
    trivial_check: bool
    components: tuple[ComponentReport, ...]
    mode: str
    audit: Optional[AuditReport] = None


def _redundant_rows(
    matrix: RigidityMatrix,
    dense: list[Row],
    full_rank: int,
    rank_fn: Callable[[list[Row]], int],
) -> list[RedundantRow]:
    """Greedy redundancy: drop whole constraints first, then single rows.

    Scanning constraints in input order and removing one entirely whenever
    the rank survives attributes a dependency to the latest constraint that
    is wholly removable, rather than smearing it across single rows of
    several constraints.  Rows still dependent after that pass are flagged
    individually, also in input order.
    """
    kept = list(range(len(dense)))
    redundant: list[RedundantRow] = []

    by_constraint: dict[Optional[int], list[int]] = {}
    for k, row in enumerate(matrix.rows):
        by_constraint.setdefault(row.constraint_index, []).append(k)

    def flag(row_index: int, detected_by: str) -> None:
        row = matrix.rows[row_index]
        redundant.append(
            RedundantRow(row_index, row.constraint_index, row.ordinal, row.kind, row.cls, detected_by)
        )

    for cidx in sorted(k for k in by_constraint if k is not None):
        group = [k for k in by_constraint[cidx] if k in set(kept)]
        if not group:
            continue
        remaining = [k for k in kept if k not in set(group)]
        if rank_fn([dense[k] for k in remaining]) == full_rank:
            for k in group:
                flag(k, "constraint")
            kept = remaining

    for k in list(kept):
        remaining = [x for x in kept if x != k]
        if rank_fn([dense[x] for x in remaining]) == full_rank:
            flag(k, "row")
            kept = remaining

    redundant.sort(key=lambda r: r.row_index)
    return redundant


def _connected_components(fw: Framework) -> list[list[int]]:
    parent = list(range(fw.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    index = fw.body_index
    for c in fw.constraints:
        a, b = find(index[c.i]), find(index[c.j])
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for k in range(fw.n):
        groups.setdefault(find(k), []).append(k)
    return sorted(groups.values(), key=lambda g: g[0])


def analyze(
    fw: Framework,
    *,
    mode: str = "rational",
    tolerance: float = 1e-9,
    audit_trials: int = 0,
    audit_seed: int = 0,
) -> RigidityReport:
    """Full infinitesimal rigidity analysis of a framework.

    ``mode`` selects the rank arithmetic: "rational" is exact, "float" runs
    the same matrix through an SVD with the given tolerance.  The matrix
    entries themselves are exact either way.
    """
    if mode not in ("rational", "float"):
        raise InputError(f"unknown mode {mode!r}; expected 'rational' or 'float'")
    matrix = assemble(fw)
    dense = matrix.dense()
    n = matrix.n
    ncols = 6 * n

    if mode == "rational":
        rank_fn: Callable[[list[Row]], int] = rational_rank
    else:
        rank_fn = lambda rows: float_rank(rows, tolerance)  # noqa: E731

    rank = rank_fn(dense)
    target = 6 * n - 6 if n >= 1 else 0
    dof = target - rank
    assert dof >= 0, "rank exceeded 6n-6: trivial motions misplaced"

    redundant = _redundant_rows(matrix, dense, rank, rank_fn)
    is_rigid = dof == 0
    is_minimally_rigid = is_rigid and len(dense) == rank
    is_overconstrained = rank < len(dense)

    quotiented = dense + trivial_basis(n)
    if mode == "rational":
        flex = [tuple(v) for v in rational_nullspace(quotiented, ncols)]
    else:
        flex = [tuple(v) for v in float_nullspace(quotiented, ncols, tolerance)]

    trivial_check = all(
        all(sum(row[k] * t[k] for k in range(ncols)) == 0 for row in dense)
        for t in trivial_basis(n)
    )

    components = []
    index_rows = {b: k for k, b in enumerate(matrix.body_ids)}
    for group in _connected_components(fw):
        members = set(group)
        sub_rows = [
            [dense[r][6 * b + k] for b in group for k in range(6)]
            for r, row in enumerate(matrix.rows)
            if index_rows[row.i] in members
        ]
        sub_rank = rank_fn(sub_rows) if sub_rows else 0
        sub_dof = 6 * len(group) - 6 - sub_rank
        components.append(
            ComponentReport(
                tuple(matrix.body_ids[b] for b in group),
                sub_rank,
                sub_dof,
                sub_dof == 0,
            )
        )

    audit = None
    if audit_trials > 0:
        audit = audit_ranks(fw, trials=audit_trials, seed=audit_seed, mode=mode, tolerance=tolerance)

    return RigidityReport(
        n=n,
        row_count=len(dense),
        rank=rank,
        dof=dof,
        is_rigid=is_rigid,
        is_minimally_rigid=is_minimally_rigid,
        is_overconstrained=is_overconstrained,
        redundant=tuple(redundant),
        flex_basis=tuple(flex),
        trivial_check=trivial_check,
        components=tuple(components),
        mode=mode,
        audit=audit,
    )


# --------------------------------------------------------------------------
# perturbation audit
#
# Jiggle every payload by small rationals while re-satisfying each
# constraint exactly (projections for orthogonality, scaling for
# parallelism, recomputed squared distances and cosines), then re-rank.
# A rank that moves under the audit marks the original coordinates as
# special, i.e. the verdict was not generic.


def _jiggle(rng: random.Random, v: Vec3) -> Vec3:
    def d() -> Fraction:
        return Fraction(rng.randint(-9, 9), 1000)

    return vec3(v.x + d(), v.y + d(), v.z + d())


def _jiggle_nonzero(rng: random.Random, v: Vec3) -> Vec3:
    for _ in range(64):
        w = _jiggle(rng, v)
        if not w.is_zero():
            return w
    raise AssertionError("could not jiggle to a nonzero vector")


def _project_out(w: Vec3, d: Vec3) -> Vec3:
    """Component of w orthogonal to d."""
    return w - d.scale(w.dot(d) / d.norm2())


def _jiggle_orthogonal(rng: random.Random, w: Vec3, d: Vec3) -> Vec3:
    for _ in range(64):
        cand = _project_out(_jiggle(rng, w), d)
        if not cand.is_zero():
            return cand
    raise AssertionError("could not jiggle to a nonzero orthogonal vector")


def _jiggle_line(rng: random.Random, line: Line) -> Line:
    return Line(_jiggle(rng, line.point), _jiggle_nonzero(rng, line.direction))


def _jiggle_plane(rng: random.Random, plane: Plane) -> Plane:
    return Plane(_jiggle(rng, plane.point), _jiggle_nonzero(rng, plane.normal))


def _onto_plane(p: Vec3, plane: Plane) -> Vec3:
    n = plane.normal
    return p - n.scale((p - plane.point).dot(n) / n.norm2())


def _perturb_constraint(c: CadConstraint, rng: random.Random) -> CadConstraint:
    k = c.kind
    for _ in range(64):
        if k == "point_point_coincidence":
            return replace(c, shared=_jiggle(rng, c.shared))  # type: ignore[arg-type]
        if k == "point_point_distance":
            pi, pj = _jiggle(rng, c.elem_i), _jiggle(rng, c.elem_j)  # type: ignore[arg-type]
            d2 = (pi - pj).norm2()
            if d2 == 0:
                continue
            return replace(c, elem_i=pi, elem_j=pj, distance=None, dist2=d2)
        if k == "point_line_coincidence":
            line = _jiggle_line(rng, c.elem_j)  # type: ignore[arg-type]
            old: Line = c.elem_j  # type: ignore[assignment]
            t = (c.elem_i - old.point).dot(old.direction) / old.direction.norm2()  # type: ignore[operator]
            t += Fraction(rng.randint(-9, 9), 1000)
            return replace(c, elem_i=line.point + line.direction.scale(t), elem_j=line)
        if k == "point_line_distance":
            pi = _jiggle(rng, c.elem_i)  # type: ignore[arg-type]
            line = _jiggle_line(rng, c.elem_j)  # type: ignore[arg-type]
            w = (pi - line.point).cross(line.direction)
            d2 = w.norm2() / line.direction.norm2()
            if d2 == 0:
                continue
            return replace(c, elem_i=pi, elem_j=line, distance=None, dist2=d2)
        if k == "point_plane_coincidence":
            plane = _jiggle_plane(rng, c.elem_j)  # type: ignore[arg-type]
            return replace(c, elem_i=_onto_plane(_jiggle(rng, c.elem_i), plane), elem_j=plane)  # type: ignore[arg-type]
        if k == "point_plane_distance":
            pi = _jiggle(rng, c.elem_i)  # type: ignore[arg-type]
            plane = _jiggle_plane(rng, c.elem_j)  # type: ignore[arg-type]
            h = (pi - plane.point).dot(plane.normal)
            if h == 0:
                continue
            return replace(c, elem_i=pi, elem_j=plane, distance=None, dist2=h * h / plane.normal.norm2())
        if k == "line_line_parallel":
            return replace(
                c,
                elem_i=_jiggle(rng, c.elem_i),  # type: ignore[arg-type]
                elem_j=_jiggle(rng, c.elem_j),  # type: ignore[arg-type]
                direction=_jiggle_nonzero(rng, c.direction),  # type: ignore[arg-type]
            )
        if k in ("line_line_perpendicular", "line_line_fixed_angular"):
            li = _jiggle_line(rng, c.elem_i)  # type: ignore[arg-type]
            qj = _jiggle(rng, c.elem_j.point)  # type: ignore[union-attr]
            if k == "line_line_perpendicular":
                dj = _jiggle_orthogonal(rng, c.elem_j.direction, li.direction)  # type: ignore[union-attr]
                return replace(c, elem_i=li, elem_j=Line(qj, dj))
            dj = _jiggle_nonzero(rng, c.elem_j.direction)  # type: ignore[union-attr]
            if li.direction.cross(dj).is_zero():
                continue
            cos2 = li.direction.dot(dj) ** 2 / (li.direction.norm2() * dj.norm2())
            return replace(c, elem_i=li, elem_j=Line(qj, dj), cos=None, cos2=cos2)
        if k == "line_line_coincidence":
            return replace(c, shared=_jiggle_line(rng, c.shared))  # type: ignore[arg-type]
        if k == "line_line_distance":
            li = _jiggle_line(rng, c.elem_i)  # type: ignore[arg-type]
            lj = _jiggle_line(rng, c.elem_j)  # type: ignore[arg-type]
            cdir = li.direction.cross(lj.direction)
            if cdir.is_zero():
                continue
            h = (lj.point - li.point).dot(cdir)
            if h == 0:
                continue
            return replace(c, elem_i=li, elem_j=lj, distance=None, dist2=h * h / cdir.norm2())
        if k in ("line_plane_parallel", "line_plane_fixed_angular"):
            pl = _jiggle_plane(rng, c.elem_j)  # type: ignore[arg-type]
            qi = _jiggle(rng, c.elem_i.point)  # type: ignore[union-attr]
            if k == "line_plane_parallel":
                di = _jiggle_orthogonal(rng, c.elem_i.direction, pl.normal)  # type: ignore[union-attr]
                return replace(c, elem_i=Line(qi, di), elem_j=pl)
            di = _jiggle_nonzero(rng, c.elem_i.direction)  # type: ignore[union-attr]
            if di.cross(pl.normal).is_zero():
                continue
            cos2 = di.dot(pl.normal) ** 2 / (di.norm2() * pl.normal.norm2())
            return replace(c, elem_i=Line(qi, di), elem_j=pl, cos=None, cos2=cos2)
        if k == "line_plane_perpendicular":
            di = _jiggle_nonzero(rng, c.elem_i.direction)  # type: ignore[union-attr]
            scale = 1 + Fraction(rng.randint(-9, 9), 1000)
            plane = Plane(_jiggle(rng, c.elem_j.point), di.scale(scale))  # type: ignore[union-attr]
            return replace(c, elem_i=Line(_jiggle(rng, c.elem_i.point), di), elem_j=plane)  # type: ignore[union-attr]
        if k in ("line_plane_coincidence", "line_plane_distance"):
            pl = _jiggle_plane(rng, c.elem_j)  # type: ignore[arg-type]
            di = _jiggle_orthogonal(rng, c.elem_i.direction, pl.normal)  # type: ignore[union-attr]
            if k == "line_plane_coincidence":
                qi = _onto_plane(_jiggle(rng, c.elem_i.point), pl)  # type: ignore[union-attr]
                return replace(c, elem_i=Line(qi, di), elem_j=pl)
            qi = _jiggle(rng, c.elem_i.point)  # type: ignore[union-attr]
            h = (qi - pl.point).dot(pl.normal)
            if h == 0:
                continue
            return replace(c, elem_i=Line(qi, di), elem_j=pl, distance=None, dist2=h * h / pl.normal.norm2())
        if k in ("plane_plane_parallel", "plane_plane_distance"):
            normal = _jiggle_nonzero(rng, c.direction)  # type: ignore[arg-type]
            pi, pj = _jiggle(rng, c.elem_i), _jiggle(rng, c.elem_j)  # type: ignore[arg-type]
            if k == "plane_plane_parallel":
                return replace(c, elem_i=pi, elem_j=pj, direction=normal)
            h = (pi - pj).dot(normal)
            if h == 0:
                continue
            return replace(c, elem_i=pi, elem_j=pj, direction=normal, distance=None, dist2=h * h / normal.norm2())
        if k == "plane_plane_perpendicular":
            ni = _jiggle_nonzero(rng, c.elem_i.normal)  # type: ignore[union-attr]
            nj = _jiggle_orthogonal(rng, c.elem_j.normal, ni)  # type: ignore[union-attr]
            return replace(
                c,
                elem_i=Plane(_jiggle(rng, c.elem_i.point), ni),  # type: ignore[union-attr]
                elem_j=Plane(_jiggle(rng, c.elem_j.point), nj),  # type: ignore[union-attr]
            )
        if k == "plane_plane_fixed_angular":
            ni = _jiggle_nonzero(rng, c.elem_i.normal)  # type: ignore[union-attr]
            nj = _jiggle_nonzero(rng, c.elem_j.normal)  # type: ignore[union-attr]
            if ni.cross(nj).is_zero():
                continue
            cos2 = ni.dot(nj) ** 2 / (ni.norm2() * nj.norm2())
            return replace(
                c,
                elem_i=Plane(_jiggle(rng, c.elem_i.point), ni),  # type: ignore[union-attr]
                elem_j=Plane(_jiggle(rng, c.elem_j.point), nj),  # type: ignore[union-attr]
                cos=None,
                cos2=cos2,
            )
        if k == "plane_plane_coincidence":
            return replace(c, shared=_jiggle_plane(rng, c.shared))  # type: ignore[arg-type]
        raise AssertionError(k)  # pragma: no cover
    raise AssertionError(f"could not find a valid perturbation for {k}")


def perturb_framework(fw: Framework, rng: random.Random) -> Framework:
    """A nearby framework: same bodies and kinds, payloads jiggled but valid."""
    return Framework(fw.bodies, tuple(_perturb_constraint(c, rng) for c in fw.constraints))


def audit_ranks(
    fw: Framework,
    *,
    trials: int = 8,
    seed: int = 0,
    mode: str = "rational",
    tolerance: float = 1e-9,
) -> AuditReport:
    """Re-rank the framework under random valid perturbations of the payloads."""
    base_dense = assemble(fw).dense()
    if mode == "rational":
        base_rank = rational_rank(base_dense)
    else:
        base_rank = float_rank(base_dense, tolerance)
    ranks = []
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        jiggled = perturb_framework(fw, rng)
        assert not validate(jiggled), "perturbation broke constraint validity"
        dense = assemble(jiggled, check=False).dense()
        ranks.append(rational_rank(dense) if mode == "rational" else float_rank(dense, tolerance))
    return AuditReport(trials, seed, base_rank, tuple(ranks), all(r == base_rank for r in ranks))
