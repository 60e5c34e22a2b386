"""The group S_{d,n} and the second boundary wall of Mov(X^[n]).

An element is the matrix ``P(x, y) = [[y, (n-1) x], [x, y]]`` with
``x = a sqrt(sigma)``, ``y = b sqrt(tau)``, ``sigma tau = d`` and
``y^2 - (n-1) x^2 = +-1``. Modulo ``+-1`` the group is infinite cyclic for
``n > 2``; the generator is taken to be the nontrivial element with smallest
``y^2``.

One boundary of the movable cone is always ``(0, 0, 1)``; the shape of the
generator decides what the other one is.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt

from ._arith import divisors, gcd3, is_square
from .birationality import pairwise_birationality
from .mukai import (
    MukaiVector,
    SurfaceParams,
    decompose_isotropic,
    hilbert_vector,
    is_isotropic,
    is_primitive,
    mukai_square,
    pairing,
)
from .partners import PartnerClass, count_fm_partners
from .pell import fundamental_pell, negative_pell, solve_general_pell

N_EQ_3_CAVEAT = (
    "wall classification needs n >= 4: for n = 3 a Hilbert-Chow contraction "
    "may pair to +-2 with (1,0,-2)"
)


class WallType(enum.Enum):
    HILBERT_CHOW = "hilbert-chow"
    LI_GIESEKER_UHLENBECK = "li-gieseker-uhlenbeck"
    BRILL_NOETHER = "brill-noether"
    LAGRANGIAN_FIBRATION = "lagrangian-fibration"

    @property
    def short(self) -> str:
        return {"hilbert-chow": "HC", "li-gieseker-uhlenbeck": "LGU",
                "brill-noether": "BN", "lagrangian-fibration": "LF"}[self.value]


@dataclass(frozen=True)
class SdnElement:
    """``P(a sqrt(sigma), b sqrt(tau))``; ``a < 0`` encodes negative ``x``."""

    a: int
    sigma: int
    b: int
    tau: int
    sign: int

    @property
    def x_squared(self) -> int:
        return self.a * self.a * self.sigma

    @property
    def y_squared(self) -> int:
        return self.b * self.b * self.tau

    def is_valid(self, params: SurfaceParams, n: int) -> bool:
        return (
            self.sigma * self.tau == params.d
            and self.b > 0
            and self.sign in (1, -1)
            and self.y_squared - (n - 1) * self.x_squared == self.sign
        )

    def inverse(self) -> SdnElement:
        """Inverse modulo +-1, i.e. ``P(-x, y)``."""
        return SdnElement(-self.a, self.sigma, self.b, self.tau, self.sign)


def identity_element(params: SurfaceParams) -> SdnElement:
    return SdnElement(0, params.d, 1, 1, 1)


def _check_group_args(params: SurfaceParams, n: int) -> None:
    if n < 3:
        raise ValueError(f"S_(d,n) is only handled for n >= 3, got n={n}")
    if is_square(params.d * (n - 1)):
        raise ValueError(f"d(n-1) = {params.d * (n - 1)} is a perfect square")


def _make(a: int, sigma: int, b: int, tau: int, sign: int, params: SurfaceParams, n: int) -> SdnElement:
    e = SdnElement(a, sigma, b, tau, sign)
    if not e.is_valid(params, n):
        raise AssertionError(f"{e} is not in S_(d={params.d}, n={n})")
    return e


def sdn_generator(params: SurfaceParams, n: int) -> SdnElement:
    """Generator of ``S_{d,n} / +-1``: nontrivial element of minimal ``y^2``."""
    _check_group_args(params, n)
    d = params.d
    best: SdnElement | None = None
    for sigma in divisors(d):
        tau = d // sigma
        if tau == 1:
            D = d * (n - 1)
            cands = [(s.y, s.x, s.sign) for s in (fundamental_pell(D), negative_pell(D)) if s]
        else:
            # tau b^2 - (n-1) sigma a^2 = +-1
            out = solve_general_pell(tau, (n - 1) * sigma)
            cands = [(s.v, s.u, s.sign) for s in out.solutions() if s.v > 0]
        for a, b, sign in cands:
            e = _make(a, sigma, b, tau, sign, params, n)
            if best is None or e.y_squared < best.y_squared:
                best = e
    assert best is not None
    return best


def _signed_sqrt_sum(u1: int, r1: int, u2: int, r2: int) -> tuple[int, int]:
    """Square and sign of ``u1 sqrt(r1) + u2 sqrt(r2)`` when ``sqrt(r1 r2)`` is an integer."""
    root = isqrt(r1 * r2)
    assert root * root == r1 * r2
    sq = u1 * u1 * r1 + u2 * u2 * r2 + 2 * u1 * u2 * root
    t1, t2 = u1 * u1 * r1, u2 * u2 * r2
    if sq == 0:
        return 0, 0
    if (u1 >= 0 and u2 >= 0) or (u1 <= 0 and u2 <= 0):
        sgn = 1 if u1 + u2 > 0 else -1
    else:
        big = u1 if t1 > t2 else u2
        sgn = 1 if big > 0 else -1
    return sq, sgn


def _normalize(X: int, sx: int, Y: int, sy: int, sign: int, params: SurfaceParams, n: int) -> SdnElement:
    if sy < 0:  # multiply by -1 to land on y > 0
        sx, sy = -sx, -sy
    d = params.d
    for sigma in divisors(d):
        tau = d // sigma
        if X % sigma or Y % tau:
            continue
        a2, b2 = X // sigma, Y // tau
        if is_square(a2) and is_square(b2):
            return _make(sx * isqrt(a2), sigma, isqrt(b2), tau, sign, params, n)
    raise AssertionError(f"cannot normalize x^2={X}, y^2={Y} for d={d}")


def sdn_multiply(e1: SdnElement, e2: SdnElement, params: SurfaceParams, n: int) -> SdnElement:
    """``P(x1, y1) P(x2, y2) = P(x1 y2 + y1 x2, y1 y2 + (n-1) x1 x2)``, modulo +-1."""
    for e in (e1, e2):
        if not e.is_valid(params, n):
            raise ValueError(f"{e} is not in S_(d={params.d}, n={n})")
    X, sx = _signed_sqrt_sum(e1.a * e2.b, e1.sigma * e2.tau, e1.b * e2.a, e1.tau * e2.sigma)
    Y, sy = _signed_sqrt_sum(e1.b * e2.b, e1.tau * e2.tau,
                             (n - 1) * e1.a * e2.a, e1.sigma * e2.sigma)
    return _normalize(X, sx, Y, sy, e1.sign * e2.sign, params, n)


def sdn_power(e: SdnElement, k: int, params: SurfaceParams, n: int) -> SdnElement:
    out = identity_element(params)
    base = e if k >= 0 else e.inverse()
    for _ in range(abs(k)):
        out = sdn_multiply(out, base, params, n)
    return out


@dataclass(frozen=True)
class MovableConeReport:
    wall_vector: MukaiVector
    wall_type: WallType
    N: int
    B: int
    generator: SdnElement | None = None
    partner: PartnerClass | None = None  # Hilbert-Chow walls only


def _lgu_vector(g: SdnElement, params: SurfaceParams, n: int) -> MukaiVector | None:
    # P(pq sqrt(d), p^2 s (n-1) -+ 1) with p^2 s (n-1) - q^2 t = +-2
    if g.tau != 1 or g.sign != 1 or g.a <= 0:
        return None
    # so b + e/2 = p^2 s (n-1) and b - e/2 = q^2 t for some e = +-2
    d, b = params.d, g.b
    for e in (2, -2):
        big, small = b + e // 2, b - e // 2
        if big % (n - 1):
            continue
        rank = big // (n - 1)
        for s in divisors(d):
            t = d // s
            if rank % s or small % t:
                continue
            p2, q2 = rank // s, small // t
            if not (is_square(p2) and is_square(q2)):
                continue
            p, q = isqrt(p2), isqrt(q2)
            if p * q != g.a:
                continue
            v = MukaiVector(p * p * s, p * q, q * q * t)
            if is_primitive(v):
                return v
    return None


def _bn_vector(g: SdnElement, params: SurfaceParams, n: int) -> MukaiVector | None:
    # P(r, c sqrt(d)) with c^2 d - r^2 (n-1) = -1
    if g.sigma != 1 or g.sign != -1:
        return None
    r, c = g.a, g.b
    return MukaiVector(r, c, r * (n - 1))


def _lagrangian_vector(params: SurfaceParams, n: int) -> MukaiVector:
    # isotropic and orthogonal to (1, 0, 1-n)
    k = isqrt(params.d * (n - 1))
    g = gcd(params.d, k)
    r, c = params.d // g, k // g
    v = MukaiVector(r, c, r * (n - 1))
    m = gcd3(*v)
    return MukaiVector(v.r // m, v.c // m, v.x // m)


def classify_second_wall(params: SurfaceParams, n: int) -> MovableConeReport:
    if n <= 3:
        raise ValueError(N_EQ_3_CAVEAT)
    N = count_fm_partners(params.d)
    hv = hilbert_vector(n)
    if is_square(params.d * (n - 1)):
        v = _lagrangian_vector(params, n)
        assert is_isotropic(v, params) and pairing(v, hv, params) == 0
        return MovableConeReport(v, WallType.LAGRANGIAN_FIBRATION, N, N)

    g = sdn_generator(params, n)
    lgu = _lgu_vector(g, params, n)
    bn = _bn_vector(g, params, n)
    if lgu is not None and bn is not None:
        raise AssertionError(f"generator {g} matches both LGU and BN shapes")
    if lgu is not None:
        assert is_isotropic(lgu, params) and abs(pairing(lgu, hv, params)) == 2
        return MovableConeReport(lgu, WallType.LI_GIESEKER_UHLENBECK, N, N, g)
    if bn is not None:
        assert mukai_square(bn, params) == -2 and pairing(bn, hv, params) == 0
        assert is_primitive(bn)
        return MovableConeReport(bn, WallType.BRILL_NOETHER, N, N, g)

    # P(p sqrt(s), q sqrt(t)): Hilbert-Chow wall v1 = (p^2 s, pq, q^2 t)
    v = MukaiVector(g.x_squared, g.a * g.b, g.y_squared)
    if not (is_primitive(v) and is_isotropic(v, params) and abs(pairing(v, hv, params)) == 1):
        raise AssertionError(f"generator {g} fits no wall case for d={params.d}, n={n}")
    dec = decompose_isotropic(v, params)
    cls = PartnerClass.of(dec.s, dec.t)
    B = N if cls.is_trivial else N // 2
    return MovableConeReport(v, WallType.HILBERT_CHOW, N, B, g, cls)


def count_birational_classes(params: SurfaceParams, n: int, check: bool = True) -> tuple[int, int]:
    """``(B, N)`` from the wall classification, cross-checked pairwise when ``check``."""
    report = classify_second_wall(params, n)
    if check:
        pairwise = len(pairwise_birationality(params, n))
        if pairwise != report.B:
            raise AssertionError(
                f"d={params.d}, n={n}: wall count B={report.B} but pairwise gives {pairwise}"
            )
    return report.B, report.N
