"""Exact rational vector algebra and the Grassmann-Cayley operations used to
build rigidity matrix rows.

Conventions (fixed, and relied on byte-for-byte by the regression tests):

* Points of projective 3-space are written ``(x, y, z, w)``; an affine point
  ``p`` embeds as ``(p : 1)`` and a direction ``c`` as ``(c : 0)``.
* The join ``p v q`` of two 4-vectors is the 2-extensor given by the six 2x2
  minors of the 2x4 matrix with ``p`` on top of ``q``, in the order
  ``(|M14|, |M24|, |M34|, |M23|, -|M13|, |M12|)``.
* The star operator swaps the first and last three coordinates of a 6-vector.
* An instantaneous screw is ``s = (-omega, v)``; its star is ``(v, -omega)``.
  A point ``p`` on a body moving with screw ``s`` has velocity
  ``p' = omega x p + v``.

All arithmetic is exact over ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DegenerateDirection

Rat = Fraction
RatLike = Union[int, str, Fraction]


def rat(x: RatLike) -> Fraction:
    """Coerce an int, rational string ("3", "-2/7", "0.25") or Fraction.

    Decimal strings are expanded in base 10, never through binary floats.
    Floats are rejected to keep the exact pipeline honest; callers that
    really have floats must convert explicitly.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"exact rational expected, got {type(x).__name__}: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True)
class Vec3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def scale(self, a: RatLike) -> "Vec3":
        a = rat(a)
        return Vec3(a * self.x, a * self.y, a * self.z)

    def dot(self, other: "Vec3") -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm2(self) -> Fraction:
        """Squared Euclidean length (exact)."""
        return self.dot(self)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)


def vec3(x: RatLike, y: RatLike, z: RatLike) -> Vec3:
    return Vec3(rat(x), rat(y), rat(z))


ZERO3 = Vec3(Fraction(0), Fraction(0), Fraction(0))


@dataclass(frozen=True)
class Vec4:
    x: Fraction
    y: Fraction
    z: Fraction
    w: Fraction

    @staticmethod
    def point(p: Vec3) -> "Vec4":
        """Affine point ``(p : 1)``."""
        return Vec4(p.x, p.y, p.z, Fraction(1))

    @staticmethod
    def direction(c: Vec3) -> "Vec4":
        """Point at infinity ``(c : 0)``."""
        return Vec4(c.x, c.y, c.z, Fraction(0))

    def xyz(self) -> Vec3:
        return Vec3(self.x, self.y, self.z)

    def tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z, self.w)


def vec4(x: RatLike, y: RatLike, z: RatLike, w: RatLike) -> Vec4:
    return Vec4(rat(x), rat(y), rat(z), rat(w))


@dataclass(frozen=True)
class TensorVec6:
    """A 2-tensor of projective 3-space in the fixed six-coordinate order."""

    coords: tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if len(self.coords) != 6:
            raise ValueError("TensorVec6 needs exactly 6 coordinates")

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __neg__(self) -> "TensorVec6":
        return TensorVec6(tuple(-c for c in self.coords))

    def scale(self, a: RatLike) -> "TensorVec6":
        a = rat(a)
        return TensorVec6(tuple(a * c for c in self.coords))

    def dot(self, other: "TensorVec6") -> Fraction:
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def star(self) -> "TensorVec6":
        """Swap the first and last three coordinates (an involution)."""
        c = self.coords
        return TensorVec6((c[3], c[4], c[5], c[0], c[1], c[2]))

    def first3(self) -> Vec3:
        return Vec3(*self.coords[:3])

    def last3(self) -> Vec3:
        return Vec3(*self.coords[3:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def tensor6(*coords: RatLike) -> TensorVec6:
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    return TensorVec6(tuple(rat(c) for c in coords))


def pair6(a: Vec3, b: Vec3) -> TensorVec6:
    """Assemble a 6-vector from two 3-vectors (first block, last block)."""
    return TensorVec6((a.x, a.y, a.z, b.x, b.y, b.z))


def join4(p: Vec4, q: Vec4) -> TensorVec6:
    """Join of two projective points as a 2-extensor.

    The six coordinates are the 2x2 minors |Mij| = p_i q_j - p_j q_i of the
    matrix [[p],[q]], reported in the order (|M14|, |M24|, |M34|, |M23|,
    -|M13|, |M12|).  For an affine point and a direction this specialises to
    join4((p:1), (c:0)) = (-c, p x c), and for two affine points to the
    classical bar 2-extensor join4((p:1), (q:1)) = (p - q, p x q).
    """
    m14 = p.x * q.w - p.w * q.x
    m24 = p.y * q.w - p.w * q.y
    m34 = p.z * q.w - p.w * q.z
    m23 = p.y * q.z - p.z * q.y
    m13 = p.x * q.z - p.z * q.x
    m12 = p.x * q.y - p.y * q.x
    return TensorVec6((m14, m24, m34, m23, -m13, m12))


@dataclass(frozen=True)
class Screw:
    """Instantaneous rigid-body motion; six-vector form is ``(-omega, v)``."""

    omega: Vec3
    v: Vec3

    def to6(self) -> TensorVec6:
        return pair6(-self.omega, self.v)

    def star6(self) -> TensorVec6:
        """The starred screw ``s* = (v, -omega)`` the matrix rows pair against."""
        return pair6(self.v, -self.omega)

    def point_velocity(self, p: Vec3) -> Vec3:
        """Velocity ``p' = omega x p + v`` of a body point ``p``."""
        return self.omega.cross(p) + self.v


def screw_point_velocity(s: Screw, p: Vec3) -> Vec3:
    return s.point_velocity(p)


def screw_join_point(s: Screw, p: Vec3) -> Vec4:
    """``s v (p:1) = (p', -<p, p'>)`` with ``p' = omega x p + v``."""
    pv = s.point_velocity(p)
    return Vec4(pv.x, pv.y, pv.z, -p.dot(pv))


def triple_join(s: Screw, p: Vec3, q: Vec4) -> Fraction:
    """``s v (p:1) v (q:qw) = <p', q_xyz> - qw <p, p'>``.

    Note the exact identity ``triple_join(s, p, q) ==
    -s.star6().dot(join4(Vec4.point(p), q))``: moving the screw across the
    join flips the sign of the pairing, which is immaterial for the
    homogeneous constraints rows encode but matters for value-level tests.
    """
    pv = s.point_velocity(p)
    return pv.dot(q.xyz()) - q.w * p.dot(pv)


def cross_matrix_rows(c: Vec3) -> tuple[Vec3, Vec3, Vec3]:
    """Rows of the cross-product matrix of ``c`` (each orthogonal to ``c``)."""
    zero = Fraction(0)
    return (
        Vec3(zero, -c.z, c.y),
        Vec3(c.z, zero, -c.x),
        Vec3(-c.y, c.x, zero),
    )


def orthogonal_pair(c: Vec3) -> tuple[Vec3, Vec3]:
    """Two linearly independent vectors orthogonal to ``c``, deterministically.

    Takes the three rows of the cross-product matrix of ``c``, drops the row
    with the smallest squared norm (ties broken by lowest index), and returns
    the other two in cyclic order starting after the dropped row.  For a
    direction with a single nonzero middle component, e.g. (0,1,0), this
    reproduces the textbook pair ((-1,0,0), (0,0,1)) in that order.

    The dropped row always absorbs any degeneracy: whenever two cross-matrix
    rows are parallel (one coordinate of ``c`` is zero) the smaller of the
    pair is the minimum-norm row, so the returned vectors are independent for
    every nonzero ``c``.
    """
    if c.is_zero():
        raise DegenerateDirection("orthogonal_pair of the zero vector")
    rows = cross_matrix_rows(c)
    norms = [r.norm2() for r in rows]
    k = norms.index(min(norms))
    return rows[(k + 1) % 3], rows[(k + 2) % 3]
