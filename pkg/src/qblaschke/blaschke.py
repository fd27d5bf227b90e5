"""Blaschke factors and finite Blaschke products.

A product is kept symbolically as its ordered node list plus one unimodular
constant on the right; series expansion and closed-form left/right point
evaluation are derived views.  The closed forms are exact up to rounding, so
``product_eval`` serves as the high-precision oracle for every series-based
evaluation in the package.

Nodes on the unit sphere are accepted by the constructor: closed-form
evaluation still makes sense there (and the reference fixtures need it), but
operations that require a stable state matrix or a convergent tail reject
non-interior nodes themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NodeOutsideBall, PoleHit
from .quat import ConjugacyClass, ONE, Quaternion, same_class
from .series import DEFAULT_ORDER, QSeries, kappa_series, series_mul

__all__ = [
    "BlaschkeProduct",
    "factor_series",
    "factor_eval",
    "spherical_factor",
    "product_series",
    "product_eval",
    "INTERIOR_MARGIN",
]

# Admissibility margin: operations needing strict interior nodes use this.
INTERIOR_MARGIN = 1e-8

_NODE_TOL = 1e-12
_ZERO_SHORTCUT = 1e-13


def _check_node(alpha: Quaternion, require_interior: bool = False):
    mod = abs(alpha)
    if mod > 1.0 + _NODE_TOL:
        raise NodeOutsideBall(f"node modulus {mod!r} exceeds 1")
    if require_interior and mod >= 1.0 - INTERIOR_MARGIN:
        raise NodeOutsideBall(
            f"node modulus {mod!r} is within {INTERIOR_MARGIN} of the unit sphere")


def factor_series(alpha: Quaternion, order: int = DEFAULT_ORDER) -> QSeries:
    """Series of the elementary factor: ``-alpha`` then ``(1-|alpha|^2) * conj(alpha)**k``."""
    _check_node(alpha)
    scale = 1.0 - alpha.norm_sq()
    coeffs = [-alpha]
    power = ONE
    ac = alpha.conj()
    for _ in range(order):
        coeffs.append(scale * power)
        power = power * ac
    return QSeries.from_coeffs(coeffs, tail_ratio=abs(alpha))


def factor_eval(alpha: Quaternion, gamma: Quaternion, side: str = "left",
                class_tol: float = 1e-9) -> Quaternion:
    """Closed-form left/right evaluation of the factor with node ``alpha``.

    The generic path divides by ``1 - gamma*(alpha+conj(alpha)) + gamma^2*|alpha|^2``;
    when ``gamma`` is similar to ``alpha`` that quantity degenerates to a real
    multiple of ``1 - gamma^2`` and the reduced same-class form is used, which
    stays finite even for unit-modulus nodes.
    """
    _check_node(alpha)
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if same_class(gamma, alpha, class_tol):
        denom = ONE - gamma * gamma
        if abs(denom) <= 1e-12:
            raise PoleHit(f"evaluation pole at gamma = {gamma}")
        diff = gamma - alpha
        return denom.inverse() * diff if side == "left" else diff * denom.inverse()
    s = alpha + alpha.conj()
    m = alpha.norm_sq()
    denom = ONE - gamma * s + (gamma * gamma) * m
    if abs(denom) <= 1e-12:
        raise PoleHit(f"evaluation pole at gamma = {gamma}")
    one_ga = ONE - gamma * alpha
    one_ag = ONE - alpha * gamma
    if side == "left":
        return denom.inverse() * (gamma * one_ga - one_ga * alpha)
    return (one_ag * gamma - alpha * one_ag) * denom.inverse()


def spherical_factor(cls: ConjugacyClass, order: int = DEFAULT_ORDER) -> QSeries:
    """Degree-two real-coefficient factor vanishing on the whole class.

    A real class degenerates to the squared real factor.
    """
    if cls.modulus() > 1.0 + _NODE_TOL:
        raise NodeOutsideBall(f"class modulus {cls.modulus()!r} exceeds 1")
    rep = cls.representative()
    return series_mul(factor_series(rep, order), factor_series(rep.conj(), order))


@dataclass(frozen=True)
class BlaschkeProduct:
    """Ordered product of elementary factors times a right unimodular constant."""

    nodes: tuple[Quaternion, ...]
    phi: Quaternion = ONE

    def __init__(self, nodes: Sequence[Quaternion] = (), phi: Quaternion = ONE):
        nodes = tuple(nodes)
        for alpha in nodes:
            _check_node(alpha)
        if abs(abs(phi) - 1.0) > 1e-12:
            raise ValueError(f"constant must be unimodular, |phi| = {abs(phi)!r}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "phi", phi)

    @property
    def degree(self) -> int:
        return len(self.nodes)

    def max_node_modulus(self) -> float:
        return max((abs(a) for a in self.nodes), default=0.0)

    def is_interior(self, margin: float = INTERIOR_MARGIN) -> bool:
        return self.max_node_modulus() < 1.0 - margin

    def require_interior(self, margin: float = INTERIOR_MARGIN):
        if not self.is_interior(margin):
            raise NodeOutsideBall(
                f"operation requires nodes with modulus < {1.0 - margin}")

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        """Concatenate, pushing this product's constant through the other's nodes."""
        phi = self.phi
        phi_inv = phi.conj() if abs(abs(phi) - 1.0) <= 1e-12 else phi.inverse()
        moved = tuple(phi * a * phi_inv for a in other.nodes)
        return BlaschkeProduct(self.nodes + moved, phi * other.phi)

    def sharp(self) -> "BlaschkeProduct":
        """Coefficient conjugation: reversed conjugated nodes, conjugated constant."""
        out = BlaschkeProduct((), self.phi.conj())
        for alpha in reversed(self.nodes):
            out = out * BlaschkeProduct((alpha.conj(),))
        return out

    @classmethod
    def spherical(cls, c: ConjugacyClass, power: int = 1) -> "BlaschkeProduct":
        rep = c.representative()
        return cls((rep, rep.conj()) * power)


def product_series(B: BlaschkeProduct, order: int = DEFAULT_ORDER) -> QSeries:
    """Expand the product by convolution of its factor series, then apply the constant."""
    out = QSeries.one(order)
    for alpha in B.nodes:
        out = series_mul(out, factor_series(alpha, order))
    out = out.rmul(B.phi)
    return out.with_tail_ratio(B.max_node_modulus())


def product_eval(B: BlaschkeProduct, gamma: Quaternion, side: str = "left",
                 class_tol: float = 1e-9) -> Quaternion:
    """Closed-form evaluation of the whole product via the conjugated-point recursion.

    Left side walks the factors first-to-last, right side last-to-first; each
    step moves the evaluation point within its conjugacy class, and a factor
    that vanishes short-circuits the product to zero.
    """
    if side == "left":
        value = ONE
        point = gamma
        for alpha in B.nodes:
            step = factor_eval(alpha, point, "left", class_tol)
            if abs(step) <= _ZERO_SHORTCUT:
                return Quaternion()
            value = value * step
            point = step.inverse() * point * step
        return value * B.phi
    if side == "right":
        phi = B.phi
        value = phi
        point = phi * gamma * phi.conj() if abs(abs(phi) - 1.0) <= 1e-12 \
            else phi * gamma * phi.inverse()
        for alpha in reversed(B.nodes):
            step = factor_eval(alpha, point, "right", class_tol)
            if abs(step) <= _ZERO_SHORTCUT:
                return Quaternion()
            value = step * value
            point = step * point * step.inverse()
        return value
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
