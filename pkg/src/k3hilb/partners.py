"""Fourier-Mukai partners of a Picard-rank-one K3 surface of degree 2d.

A partner is the moduli space ``M(s, H, t)`` for a coprime factorization
``s t = d``; the unordered pair ``{s, t}`` is its complete isomorphism
invariant, and ``{1, d}`` is the surface itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from ._arith import factorize
from .mukai import (
    MukaiVector,
    SurfaceParams,
    decompose_isotropic,
    is_fine,
    point_class,
)


class NotFineError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PartnerClass:
    s: int
    t: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ValueError(f"partner class entries must be positive: {self.s}, {self.t}")
        if self.s > self.t:
            raise ValueError("store partner classes with s <= t; use PartnerClass.of")
        if gcd(self.s, self.t) != 1:
            raise ValueError(f"{{{self.s},{self.t}}} is not a coprime factorization")

    @classmethod
    def of(cls, s: int, t: int) -> PartnerClass:
        return cls(min(s, t), max(s, t))

    @classmethod
    def trivial(cls, d: int) -> PartnerClass:
        return cls(1, d)

    @property
    def d(self) -> int:
        return self.s * self.t

    @property
    def is_trivial(self) -> bool:
        return self.s == 1

    def canonical_vector(self) -> MukaiVector:
        """The isotropic vector ``(s, 1, t)``."""
        return MukaiVector(self.s, 1, self.t)

    def __str__(self) -> str:
        return f"{{{self.s},{self.t}}}"


def count_fm_partners(d: int) -> int:
    """``2^(rho(d) - 1)`` with rho counting distinct primes; 1 when ``d = 1``."""
    if d < 1:
        raise ValueError(f"half-degree must be positive, got {d}")
    rho = len(factorize(d))
    return 2 ** (rho - 1) if rho else 1


def enumerate_partners(d: int) -> list[PartnerClass]:
    """All partner classes of a degree-2d surface, sorted by ``s``."""
    if d < 1:
        raise ValueError(f"half-degree must be positive, got {d}")
    powers = [p**e for p, e in factorize(d).items()]
    found = set()
    for choice in product((False, True), repeat=len(powers)):
        s = 1
        for pk, take in zip(powers, choice):
            if take:
                s *= pk
        found.add(PartnerClass.of(s, d // s))
    return sorted(found)


def relative_class(a: PartnerClass, b: PartnerClass) -> PartnerClass:
    """Class of partner ``b`` seen from partner ``a``.

    Partner classes of a fixed ``d`` form an elementary abelian 2-group (the
    Hall divisors of ``d`` modulo ``s ~ d/s``); the relative class is the
    quotient ``a^-1 b``, i.e. the symmetric difference of prime supports.
    """
    if a.d != b.d:
        raise ValueError(f"classes {a} and {b} belong to different degrees")
    g = gcd(a.s, b.s)
    s = (a.s // g) * (b.s // g)
    return PartnerClass.of(s, a.d // s)


def reduce_moduli(v: MukaiVector, params: SurfaceParams) -> PartnerClass:
    """Partner class of the fine moduli space ``M_X(v)`` for primitive isotropic ``v``."""
    if v in (point_class(), -point_class()):
        # skyscraper sheaves: M_X(0,0,1) = X
        return PartnerClass.trivial(params.d)
    if not is_fine(v, params):
        raise NotFineError(f"M({v}) is not a fine moduli space for d={params.d}")
    dec = decompose_isotropic(v, params)
    return PartnerClass.of(dec.s, dec.t)
