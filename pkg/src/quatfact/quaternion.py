"""Quaternion and dual-quaternion value arithmetic.

Quaternions are immutable 4-tuples of binary64 scalars over the basis
(1, i, j, k) with i*i = j*j = k*k = i*j*k = -1.  Dual quaternions adjoin
a central element eps with eps*eps = 0.  All equality checks in this
package are tolerance based; the shared default is ``DEFAULT_EPS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroDivisor

DEFAULT_EPS = 1e-9

_Scalar = (int, float)


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _Scalar):
            return self * (1.0 / other)
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        """Squared Euclidean length w*w + x*x + y*y + z*z."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def abs2(self) -> float:
        return self.norm()

    def magnitude(self) -> float:
        return math.sqrt(self.norm())

    def real(self) -> float:
        return self.w

    def inverse(self, eps: float = DEFAULT_EPS) -> "Quaternion":
        """Multiplicative inverse conj(h)/norm(h).

        Raises ZeroDivisor when the norm is at or below ``eps`` (absolute,
        since the product target is the unit 1).
        """
        n = self.norm()
        if n <= eps:
            raise ZeroDivisor(f"quaternion norm {n:.3e} too small to invert")
        return self.conj() * (1.0 / n)

    def is_zero(self, eps: float = DEFAULT_EPS) -> bool:
        return self.magnitude() <= eps

    def approx_eq(self, other: "Quaternion", eps: float = DEFAULT_EPS) -> bool:
        scale = max(1.0, self.magnitude(), other.magnitude())
        return (self - other).magnitude() <= eps * scale

    def commutes_with(self, other: "Quaternion", eps: float = DEFAULT_EPS) -> bool:
        scale = max(1.0, self.magnitude() * other.magnitude())
        return (self * other - other * self).magnitude() <= eps * scale

    def as_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    @classmethod
    def from_list(cls, values) -> "Quaternion":
        w, x, y, z = (float(v) for v in values)
        return cls(w, x, y, z)

    def __repr__(self):
        return f"Quaternion({self.w:g}, {self.x:g}, {self.y:g}, {self.z:g})"


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, _Scalar):
        return Quaternion(float(value))
    return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class DualQuaternion:
    """h = primal + eps * dual with quaternion parts and eps*eps = 0."""

    primal: Quaternion = Quaternion()
    dual: Quaternion = Quaternion()

    def __add__(self, other):
        if not isinstance(other, DualQuaternion):
            return NotImplemented
        return DualQuaternion(self.primal + other.primal, self.dual + other.dual)

    def __sub__(self, other):
        if not isinstance(other, DualQuaternion):
            return NotImplemented
        return DualQuaternion(self.primal - other.primal, self.dual - other.dual)

    def __neg__(self):
        return DualQuaternion(-self.primal, -self.dual)

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            return DualQuaternion(self.primal * other, self.dual * other)
        if not isinstance(other, DualQuaternion):
            return NotImplemented
        return DualQuaternion(
            self.primal * other.primal,
            self.primal * other.dual + self.dual * other.primal,
        )

    def __rmul__(self, other):
        if isinstance(other, _Scalar):
            return self * other
        return NotImplemented

    def conj(self) -> "DualQuaternion":
        """Quaternion conjugation applied to both parts."""
        return DualQuaternion(self.primal.conj(), self.dual.conj())

    def approx_eq(self, other: "DualQuaternion", eps: float = DEFAULT_EPS) -> bool:
        return self.primal.approx_eq(other.primal, eps) and self.dual.approx_eq(other.dual, eps)

    def as_dict(self):
        return {"primal": self.primal.as_list(), "dual": self.dual.as_list()}

    @classmethod
    def from_dict(cls, data) -> "DualQuaternion":
        return cls(Quaternion.from_list(data["primal"]), Quaternion.from_list(data["dual"]))

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "DualQuaternion":
        return cls(q, Quaternion())
