"""Truncated formal power series and exact polynomials over the quaternions.

A series is stored as two complex coefficient arrays ``(a, b)`` with
``f_k = a_k + b_k * j``; products then reduce to four complex convolutions.
The variable commutes with coefficients, so left/right asymmetry enters only
through evaluation and through the order of coefficient products.

Series carry an explicit truncation order and optional geometric tail data
``|f_k| <= C * tail_ratio**k`` used to report evaluation error bounds.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivergenceRisk,
    NodeOutsideBall,
    TruncationInsufficient,
)
from .quat import ConjugacyClass, ONE, Quaternion

__all__ = [
    "QSeries",
    "Polynomial",
    "series_mul",
    "sharp",
    "eval_left",
    "eval_right",
    "eval_product_left",
    "kappa_series",
    "split_series",
    "h2_norm_sq",
    "h2_inner",
    "poly_from_factors",
    "linear_factor",
    "class_polynomial",
    "inverse_polynomial",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 64

# Data-driven tail constants are estimated over this many leading
# coefficients; later ones are dominated by convolution roundoff.
_TAIL_WINDOW = 64


def _as_arrays(coeffs: Iterable[Quaternion]) -> tuple[np.ndarray, np.ndarray]:
    pairs = [q.complex_pair() for q in coeffs]
    if not pairs:
        raise ValueError("a series needs at least the constant coefficient")
    a = np.array([p[0] for p in pairs], dtype=complex)
    b = np.array([p[1] for p in pairs], dtype=complex)
    return a, b


class QSeries:
    """Power series over the quaternions, truncated at a fixed order."""

    __slots__ = ("_a", "_b", "tail_ratio")

    def __init__(self, a: np.ndarray, b: np.ndarray, tail_ratio: float | None = None):
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if a.ndim != 1 or a.shape != b.shape:
            raise ValueError("coefficient arrays must be 1-d and equal length")
        if tail_ratio is not None and not 0.0 <= tail_ratio < 1.0 + 1e-12:
            raise ValueError("tail_ratio must lie in [0, 1]")
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "tail_ratio", tail_ratio)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Quaternion], tail_ratio: float | None = None) -> "QSeries":
        a, b = _as_arrays(coeffs)
        return cls(a, b, tail_ratio)

    @classmethod
    def constant(cls, q: Quaternion, order: int, tail_ratio: float | None = 0.0) -> "QSeries":
        a = np.zeros(order + 1, dtype=complex)
        b = np.zeros(order + 1, dtype=complex)
        a[0], b[0] = q.complex_pair()
        return cls(a, b, tail_ratio)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls.constant(Quaternion(), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.constant(ONE, order)

    # -- access ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._a) - 1

    def coeff(self, k: int) -> Quaternion:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return Quaternion.from_complex_pair(self._a[k], self._b[k])

    def coeffs(self) -> list[Quaternion]:
        return [Quaternion.from_complex_pair(a, b) for a, b in zip(self._a, self._b)]

    def complex_pair(self) -> tuple[np.ndarray, np.ndarray]:
        return self._a.copy(), self._b.copy()

    def coeff_moduli(self) -> np.ndarray:
        return np.sqrt(np.abs(self._a) ** 2 + np.abs(self._b) ** 2)

    def is_real(self, tol: float = 1e-12) -> bool:
        imag = max(
            float(np.max(np.abs(self._a.imag))),
            float(np.max(np.abs(self._b.real))),
            float(np.max(np.abs(self._b.imag))),
        )
        return imag <= tol

    def with_tail_ratio(self, tail_ratio: float | None) -> "QSeries":
        return QSeries(self._a, self._b, tail_ratio)

    def truncate(self, order: int) -> "QSeries":
        if order >= self.order:
            return self
        return QSeries(self._a[: order + 1], self._b[: order + 1], self.tail_ratio)

    def __repr__(self) -> str:
        return f"QSeries(order={self.order}, tail_ratio={self.tail_ratio})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order) + 1
        return QSeries(self._a[:n] + other._a[:n], self._b[:n] + other._b[:n],
                       _merge_tails(self.tail_ratio, other.tail_ratio))

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order) + 1
        return QSeries(self._a[:n] - other._a[:n], self._b[:n] - other._b[:n],
                       _merge_tails(self.tail_ratio, other.tail_ratio))

    def __neg__(self) -> "QSeries":
        return QSeries(-self._a, -self._b, self.tail_ratio)

    def __mul__(self, other: "QSeries") -> "QSeries":
        return series_mul(self, other)

    def lmul(self, q: Quaternion) -> "QSeries":
        """Constant multiple ``q * f``."""
        qa, qb = q.complex_pair()
        return QSeries(qa * self._a - qb * np.conj(self._b),
                       qa * self._b + qb * np.conj(self._a), self.tail_ratio)

    def rmul(self, q: Quaternion) -> "QSeries":
        """Constant multiple ``f * q``."""
        qa, qb = q.complex_pair()
        return QSeries(self._a * qa - self._b * np.conj(qb),
                       self._a * qb + self._b * np.conj(qa), self.tail_ratio)

    # -- tail bookkeeping ---------------------------------------------------

    def tail_constant(self) -> float | None:
        """Estimate C with ``|f_k| <= C * tail_ratio**k`` over the leading window."""
        r = self.tail_ratio
        if r is None:
            return None
        moduli = self.coeff_moduli()
        if r == 0.0:
            return float(np.max(moduli))
        k = min(len(moduli), _TAIL_WINDOW)
        ratios = moduli[:k] / (r ** np.arange(k))
        return float(max(np.max(ratios), np.max(moduli)))

    def eval_error_bound(self, gamma_mod: float) -> float | None:
        """Geometric tail bound for evaluation at a point of the given modulus."""
        r = self.tail_ratio
        if r is None:
            return None
        if r == 0.0:
            return 0.0
        t = r * gamma_mod
        if t >= 1.0:
            raise DivergenceRisk(
                f"tail ratio {r} at |gamma| = {gamma_mod} gives no convergent tail")
        c = self.tail_constant()
        return c * t ** (self.order + 1) / (1.0 - t)


def _merge_tails(r1: float | None, r2: float | None) -> float | None:
    if r1 is None or r2 is None:
        return None
    return max(r1, r2)


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    """Coefficient convolution preserving factor order; output order is the minimum."""
    n = min(f.order, g.order) + 1
    fa, fb = f._a, f._b
    ga, gb = g._a, g._b
    a = np.convolve(fa, ga)[:n] - np.convolve(fb, np.conj(gb))[:n]
    b = np.convolve(fa, gb)[:n] + np.convolve(fb, np.conj(ga))[:n]
    return QSeries(a, b, _merge_tails(f.tail_ratio, g.tail_ratio))


def sharp(f: QSeries) -> QSeries:
    """Coefficient-wise quaternion conjugation (the anti-linear involution)."""
    return QSeries(np.conj(f._a), -f._b, f.tail_ratio)


def _check_target(err: float | None, target_tol: float | None):
    if target_tol is None:
        return
    if err is None:
        raise TruncationInsufficient("no tail data, cannot certify the requested tolerance")
    if err > target_tol:
        raise TruncationInsufficient(
            f"tail bound {err:.3e} exceeds requested tolerance {target_tol:.3e}")


def eval_left(f: QSeries, gamma: Quaternion,
              target_tol: float | None = None) -> tuple[Quaternion, float | None]:
    """Left evaluation ``sum gamma**k * f_k`` with its geometric tail bound.

    The bound is ``None`` when the series carries no tail data.  Passing
    ``target_tol`` turns an unmet bound into ``TruncationInsufficient``.
    """
    err = f.eval_error_bound(abs(gamma))
    _check_target(err, target_tol)
    coeffs = f.coeffs()
    acc = coeffs[-1]
    for k in range(f.order - 1, -1, -1):
        acc = coeffs[k] + gamma * acc
    return acc, err


def eval_right(f: QSeries, gamma: Quaternion,
               target_tol: float | None = None) -> tuple[Quaternion, float | None]:
    """Right evaluation ``sum f_k * gamma**k``."""
    err = f.eval_error_bound(abs(gamma))
    _check_target(err, target_tol)
    coeffs = f.coeffs()
    acc = coeffs[-1]
    for k in range(f.order - 1, -1, -1):
        acc = coeffs[k] + acc * gamma
    return acc, err


def eval_product_left(f: QSeries, g: QSeries, gamma: Quaternion) -> Quaternion:
    """Left evaluation of ``f*g`` through the conjugated-point rule.

    Avoids forming the product series: the second factor is evaluated at the
    point conjugated by the first factor's value, and a vanishing first value
    short-circuits to zero.
    """
    value, err = eval_left(f, gamma)
    threshold = max(1e-9, 10.0 * (err or 0.0))
    if abs(value) <= threshold:
        return Quaternion()
    moved = value.inverse() * gamma * value
    second, _ = eval_left(g, moved)
    return value * second


def kappa_series(alpha: Quaternion, order: int = DEFAULT_ORDER) -> QSeries:
    """Geometric series with coefficients ``conj(alpha)**k``; formal inverse of ``1 - z*conj(alpha)``."""
    if abs(alpha) >= 1.0:
        raise NodeOutsideBall(f"kappa series requires |alpha| < 1, got {abs(alpha)!r}")
    coeffs = [ONE]
    ac = alpha.conj()
    for _ in range(order):
        coeffs.append(coeffs[-1] * ac)
    return QSeries.from_coeffs(coeffs, tail_ratio=abs(alpha))


def split_series(f: QSeries, alpha: Quaternion, epsilon: Quaternion,
                 tol: float = 1e-9) -> tuple[QSeries, QSeries]:
    """Split ``f = g + h*epsilon`` coefficient-wise into the commuting plane of alpha."""
    from .quat import split_quaternion

    gs, hs = [], []
    for c in f.coeffs():
        g_k, h_k = split_quaternion(c, alpha, epsilon, tol)
        gs.append(g_k)
        hs.append(h_k)
    return (QSeries.from_coeffs(gs, f.tail_ratio),
            QSeries.from_coeffs(hs, f.tail_ratio))


def h2_norm_sq(f: QSeries) -> float:
    """Squared coefficient norm ``sum |f_k|^2``."""
    return float(np.sum(np.abs(f._a) ** 2 + np.abs(f._b) ** 2))


def h2_inner(h: QSeries, g: QSeries) -> Quaternion:
    """Right-module inner product ``sum conj(g_k) * h_k``."""
    n = min(h.order, g.order) + 1
    ha, hb = h._a[:n], h._b[:n]
    ga, gb = g._a[:n], g._b[:n]
    a = np.sum(np.conj(ga) * ha + gb * np.conj(hb))
    b = np.sum(np.conj(ga) * hb - gb * np.conj(ha))
    return Quaternion.from_complex_pair(a, b)


# ----------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Quaternion polynomial with exact degree (no truncation)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[Quaternion]):
        coeffs = list(coeffs)
        while coeffs and abs(coeffs[-1]) == 0.0:
            coeffs.pop()
        object.__setattr__(self, "_coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def from_real(cls, coeffs: Sequence[float]) -> "Polynomial":
        return cls([Quaternion.from_real(c) for c in coeffs])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int) -> Quaternion:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Quaternion()

    def coeffs(self) -> list[Quaternion]:
        return list(self._coeffs)

    def leading(self) -> Quaternion:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def is_monic(self, tol: float = 1e-12) -> bool:
        return not self.is_zero() and abs(self.leading() - ONE) <= tol

    def is_real(self, tol: float = 1e-12) -> bool:
        return all(c.im_norm() <= tol for c in self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial(degree={self.degree})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self._coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Quaternion() for _ in range(self.degree + other.degree + 1)]
        for i, ci in enumerate(self._coeffs):
            for jj, cj in enumerate(other._coeffs):
                out[i + jj] = out[i + jj] + ci * cj
        return Polynomial(out)

    def lmul(self, q: Quaternion) -> "Polynomial":
        return Polynomial([q * c for c in self._coeffs])

    def rmul(self, q: Quaternion) -> "Polynomial":
        return Polynomial([c * q for c in self._coeffs])

    def sharp(self) -> "Polynomial":
        return Polynomial([c.conj() for c in self._coeffs])

    def eval_left(self, gamma: Quaternion) -> Quaternion:
        if self.is_zero():
            return Quaternion()
        acc = self._coeffs[-1]
        for k in range(len(self._coeffs) - 2, -1, -1):
            acc = self._coeffs[k] + gamma * acc
        return acc

    def eval_right(self, gamma: Quaternion) -> Quaternion:
        if self.is_zero():
            return Quaternion()
        acc = self._coeffs[-1]
        for k in range(len(self._coeffs) - 2, -1, -1):
            acc = self._coeffs[k] + acc * gamma
        return acc

    def to_series(self, order: int = DEFAULT_ORDER) -> QSeries:
        coeffs = [self.coeff(k) for k in range(order + 1)]
        tail = 0.0 if order >= self.degree else None
        return QSeries.from_coeffs(coeffs, tail_ratio=tail)

    def max_coeff(self) -> float:
        return max((abs(c) for c in self._coeffs), default=0.0)

    def divmod_left(self, d: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Quotient and remainder with the divisor acting on the left: ``self = d*q + r``."""
        return _poly_divmod(self, d, left_divisor=True)

    def divmod_right(self, d: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Quotient and remainder with the divisor on the right: ``self = q*d + r``."""
        return _poly_divmod(self, d, left_divisor=False)


def _poly_divmod(f: Polynomial, d: Polynomial, left_divisor: bool):
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    m = d.degree
    lead_inv = d.leading().inverse()
    rem = f.coeffs()
    n = f.degree
    if n < m:
        return Polynomial([]), f
    q = [Quaternion() for _ in range(n - m + 1)]
    for k in range(n - m, -1, -1):
        top = rem[m + k]
        qk = lead_inv * top if left_divisor else top * lead_inv
        q[k] = qk
        for i in range(m + 1):
            step = d.coeff(i) * qk if left_divisor else qk * d.coeff(i)
            rem[i + k] = rem[i + k] - step
    return Polynomial(q), Polynomial(rem[:m])


def linear_factor(alpha: Quaternion) -> Polynomial:
    """The monic linear polynomial ``z - alpha``."""
    return Polynomial([-alpha, ONE])


def class_polynomial(cls: ConjugacyClass) -> Polynomial:
    """Real quadratic ``z**2 - 2*Re*z + modulus**2`` vanishing on the whole class."""
    return Polynomial([
        Quaternion.from_real(cls.re**2 + cls.im_norm**2),
        Quaternion.from_real(-2.0 * cls.re),
        ONE,
    ])


def poly_from_factors(nodes: Sequence[Quaternion]) -> Polynomial:
    """Left-to-right product of the linear factors ``(z - n_1) ... (z - n_m)``."""
    out = Polynomial([ONE])
    for node in nodes:
        out = out * linear_factor(node)
    return out


def inverse_polynomial(p: Polynomial, order: int = DEFAULT_ORDER) -> QSeries:
    """Formal (two-sided) inverse of a polynomial with invertible constant term.

    This recursive coefficient solve is the only series division the package
    supports; general quotients are out of scope.
    """
    if p.is_zero():
        raise ZeroDivisionError("zero polynomial has no formal inverse")
    c0_inv = p.coeff(0).inverse()
    out = [c0_inv]
    for k in range(1, order + 1):
        acc = Quaternion()
        for ell in range(1, min(k, p.degree) + 1):
            acc = acc + p.coeff(ell) * out[k - ell]
        out.append(-(c0_inv * acc))
    return QSeries.from_coeffs(out)
