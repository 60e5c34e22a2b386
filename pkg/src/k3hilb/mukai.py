"""Rank-3 algebraic Mukai lattice of a Picard-rank-one K3 surface.

A class ``r + c*H + x*[pt]`` is stored as the integer triple ``(r, c, x)``.
The ambient half-degree ``d`` (``H^2 = 2d``) is not part of the vector; every
pairing-dependent function takes a :class:`SurfaceParams`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ._arith import gcd3


class NotIsotropicError(ValueError):
    pass


class NotPrimitiveError(ValueError):
    pass


class PointClassError(ValueError):
    """Raised for rank-zero isotropic vectors, i.e. the point class ``(0, 0, +-1)``."""


@dataclass(frozen=True)
class SurfaceParams:
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"half-degree must be a positive integer, got {self.d!r}")

    @property
    def degree(self) -> int:
        return 2 * self.d


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c: int
    x: int

    def __iter__(self):
        return iter((self.r, self.c, self.x))

    def __neg__(self) -> MukaiVector:
        return MukaiVector(-self.r, -self.c, -self.x)

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r + other.r, self.c + other.c, self.x + other.x)

    def __sub__(self, other: MukaiVector) -> MukaiVector:
        return self + (-other)

    def __rmul__(self, k: int) -> MukaiVector:
        return MukaiVector(k * self.r, k * self.c, k * self.x)

    def __str__(self) -> str:
        return f"({self.r},{self.c},{self.x})"

    def is_zero(self) -> bool:
        return self.r == 0 and self.c == 0 and self.x == 0


@dataclass(frozen=True)
class IsotropicDecomposition:
    """``v = (p^2 s, p q, q^2 t)`` with ``s t = d``.

    ``q`` carries the sign of the H-coefficient, so it is negative for
    vectors such as ``(2, -1, 3)``.
    """

    p: int
    q: int
    s: int
    t: int

    def vector(self) -> MukaiVector:
        return MukaiVector(self.p * self.p * self.s, self.p * self.q, self.q * self.q * self.t)


def pairing(v: MukaiVector, w: MukaiVector, params: SurfaceParams) -> int:
    """Mukai pairing ``2d*c*c' - r*x' - r'*x``."""
    return 2 * params.d * v.c * w.c - v.r * w.x - w.r * v.x


def mukai_square(v: MukaiVector, params: SurfaceParams) -> int:
    return 2 * (params.d * v.c * v.c - v.r * v.x)


def is_isotropic(v: MukaiVector, params: SurfaceParams) -> bool:
    return params.d * v.c * v.c == v.r * v.x


def is_primitive(v: MukaiVector) -> bool:
    if v.is_zero():
        raise ValueError("the zero vector is neither primitive nor imprimitive")
    return gcd3(v.r, v.c, v.x) == 1


def hilbert_vector(n: int) -> MukaiVector:
    """Mukai vector ``(1, 0, 1-n)`` of the ideal sheaf of ``n`` points."""
    if n < 1:
        raise ValueError(f"number of points must be >= 1, got {n}")
    return MukaiVector(1, 0, 1 - n)


def point_class() -> MukaiVector:
    return MukaiVector(0, 0, 1)


def _require_primitive_isotropic(v: MukaiVector, params: SurfaceParams) -> None:
    if v.is_zero() or not is_primitive(v):
        raise NotPrimitiveError(f"{v} is not primitive")
    if not is_isotropic(v, params):
        raise NotIsotropicError(f"{v} is not isotropic for d={params.d}")


def decompose_isotropic(v: MukaiVector, params: SurfaceParams) -> IsotropicDecomposition:
    """Write a primitive isotropic ``v`` with ``r > 0`` as ``(p^2 s, pq, q^2 t)``."""
    _require_primitive_isotropic(v, params)
    if v.r == 0:
        raise PointClassError(
            f"{v} has rank zero; treat (0,0,+-1) as the point class, whose moduli space is X"
        )
    if v.r < 0:
        raise ValueError(f"{v} has negative rank; negate it before decomposing")
    p = gcd(v.r, v.c)
    s, rem = divmod(v.r, p * p)
    if rem:
        raise AssertionError(f"p^2 does not divide r for {v}")
    q = v.c // p
    t, rem = divmod(params.d, s)
    if rem or v.x != q * q * t:
        raise AssertionError(f"inconsistent decomposition of {v} for d={params.d}")
    dec = IsotropicDecomposition(p, q, s, t)
    assert dec.vector() == v
    assert q == 0 or gcd(p, q) == 1
    assert gcd(q, s) == 1
    return dec


def is_fine(v: MukaiVector, params: SurfaceParams) -> bool:
    """Fineness criterion ``gcd(r, c H^2, x) = 1``."""
    _require_primitive_isotropic(v, params)
    return gcd3(v.r, v.c * params.degree, v.x) == 1
