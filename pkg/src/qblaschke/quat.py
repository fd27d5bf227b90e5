"""Quaternion scalars, conjugacy classes and the orthogonal plane split.

A quaternion ``w + x*i + y*j + z*k`` is stored as four floats.  The two
derived geometric objects used throughout the package are

* the commuting plane of a nonreal quaternion (the real span of ``1`` and
  its normalized imaginary part), and
* its orthogonal complement, spanned by two units that intertwine the
  quaternion with its conjugate.

All values are immutable and all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadEpsilon, NearZeroInverse, RealInput

__all__ = [
    "Quaternion",
    "ConjugacyClass",
    "ONE",
    "I",
    "J",
    "K",
    "same_class",
    "perp_basis",
    "split_quaternion",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9

# Inversion guard: moduli at or below this would overflow componentwise.
_INVERSE_FLOOR = 1e-300


class Quaternion:
    """One element of the real quaternion algebra, double precision."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        object.__setattr__(self, "w", float(w))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))
        object.__setattr__(self, "z", float(z))

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_real(cls, value) -> "Quaternion":
        return cls(float(value), 0.0, 0.0, 0.0)

    @classmethod
    def from_complex_pair(cls, a: complex, b: complex) -> "Quaternion":
        """Inverse of :meth:`complex_pair`: ``q = a + b*j``."""
        a = complex(a)
        b = complex(b)
        return cls(a.real, a.imag, b.real, b.imag)

    # -- views ---------------------------------------------------------

    def complex_pair(self) -> tuple[complex, complex]:
        """Split as ``q = a + b*j`` with ``a = w + x*1j`` and ``b = y + z*1j``."""
        return complex(self.w, self.x), complex(self.y, self.z)

    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    @property
    def re(self) -> float:
        return self.w

    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def im_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def __abs__(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def norm_sq(self) -> float:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def is_real(self, tol: float = DEFAULT_TOL) -> bool:
        return self.im_norm() <= tol

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(self) <= tol

    def is_unit(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(abs(self) - 1.0) <= tol

    # -- algebra -------------------------------------------------------

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self) -> "Quaternion":
        return self

    def __add__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def inverse(self) -> "Quaternion":
        n = self.norm_sq()
        if n <= _INVERSE_FLOOR:
            raise NearZeroInverse(f"cannot invert quaternion with |q|^2 = {n!r}")
        return Quaternion(self.w / n, -self.x / n, -self.y / n, -self.z / n)

    def __truediv__(self, other) -> "Quaternion":
        """Right division: ``a / b == a * b.inverse()``."""
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "Quaternion":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are defined")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate_by(self, h: "Quaternion") -> "Quaternion":
        """Similarity action ``h^{-1} * self * h``."""
        return h.inverse() * self * h

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return abs(self - other) <= tol

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self) -> str:
        parts = []
        for value, unit in zip(self.components(), ("", "i", "j", "k")):
            if value != 0.0 or (unit == "" and not parts):
                parts.append(f"{value:+g}{unit}")
        return "".join(parts)


def _coerce(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion.from_real(value)
    return NotImplemented


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class ConjugacyClass:
    """A similarity class: the 2-sphere of fixed real part and imaginary modulus."""

    re: float
    im_norm: float

    def __post_init__(self):
        if self.im_norm < 0:
            raise ValueError("im_norm must be nonnegative")

    @classmethod
    def of(cls, q: Quaternion) -> "ConjugacyClass":
        return cls(q.re, q.im_norm())

    def representative(self) -> Quaternion:
        """Deterministic upper-half representative ``re + i*im_norm``."""
        return Quaternion(self.re, self.im_norm, 0.0, 0.0)

    def contains(self, q: Quaternion, tol: float = DEFAULT_TOL) -> bool:
        return abs(q.re - self.re) <= tol and abs(q.im_norm() - self.im_norm) <= tol

    def is_real(self, tol: float = DEFAULT_TOL) -> bool:
        return self.im_norm <= tol

    def modulus(self) -> float:
        """Common modulus of every element of the class."""
        return math.hypot(self.re, self.im_norm)


def same_class(alpha: Quaternion, beta: Quaternion, tol: float = DEFAULT_TOL) -> bool:
    """True when the two quaternions are similar: equal real parts and moduli."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return abs(alpha.re - beta.re) <= tol and abs(abs(alpha) - abs(beta)) <= tol


def _dot(a: Quaternion, b: Quaternion) -> float:
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z


def _project_out(v: Quaternion, basis) -> Quaternion:
    for e in basis:
        v = v - _dot(v, e) * e
    return v


# Switch to the {i, k} seed once j is this close to the commuting plane;
# keeps the Gram-Schmidt step well conditioned near the switch.
_GS_FALLBACK = 1e-6


def perp_basis(alpha: Quaternion, tol: float = DEFAULT_TOL) -> tuple[Quaternion, Quaternion]:
    """Orthonormal pair spanning the orthogonal complement of the commuting plane.

    Each returned unit ``e`` intertwines: ``alpha * e == e * alpha.conj()``.
    Deterministic: Gram-Schmidt of ``{j, k}`` against ``{1, Im(alpha)/|Im(alpha)|}``,
    seeded with ``{i, k}`` when ``j`` lies in the commuting plane.
    """
    imn = alpha.im_norm()
    if imn <= tol:
        raise RealInput("the orthogonal plane is undefined for a real quaternion")
    u = Quaternion(0.0, alpha.x / imn, alpha.y / imn, alpha.z / imn)
    plane = (ONE, u)

    seeds = (J, K)
    first = _project_out(seeds[0], plane)
    if abs(first) <= _GS_FALLBACK:
        seeds = (I, K)
        first = _project_out(seeds[0], plane)
    e1 = (1.0 / abs(first)) * first
    second = _project_out(seeds[1], plane + (e1,))
    if abs(second) <= _GS_FALLBACK:
        # Only possible when the second seed is also nearly dependent; the
        # remaining candidate completes the basis.
        second = _project_out(I, plane + (e1,))
    e2 = (1.0 / abs(second)) * second
    return e1, e2


def split_quaternion(
    beta: Quaternion,
    alpha: Quaternion,
    epsilon: Quaternion,
    tol: float = DEFAULT_TOL,
) -> tuple[Quaternion, Quaternion]:
    """Resolve ``beta = beta1 + beta2 * epsilon`` with both parts commuting with alpha.

    ``epsilon`` must be a unit in the orthogonal complement; the split is an
    orthogonal decomposition, so ``|beta|^2 == |beta1|^2 + |beta2|^2``.
    """
    imn = alpha.im_norm()
    if imn <= tol:
        raise RealInput("splitting requires a nonreal reference quaternion")
    if abs(abs(epsilon) - 1.0) > tol:
        raise BadEpsilon(f"epsilon is not a unit: |epsilon| = {abs(epsilon)!r}")
    residual = alpha * epsilon - epsilon * alpha.conj()
    if abs(residual) > tol:
        raise BadEpsilon(f"epsilon does not intertwine alpha: residual {abs(residual)!r}")
    u = Quaternion(0.0, alpha.x / imn, alpha.y / imn, alpha.z / imn)
    beta1 = _dot(beta, ONE) * ONE + _dot(beta, u) * u
    beta2 = (beta - beta1) * epsilon.conj()
    return beta1, beta2
