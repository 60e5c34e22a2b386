"""Brute-force oracles, deliberately independent of the continued-fraction code."""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import isqrt

import numpy as np

from ._arith import is_square
from .birationality import hilbert_birational, never_birational_certificate
from .mukai import SurfaceParams
from .partners import PartnerClass
from .pell import fundamental_pell, mod_obstruction, solve_general_pell

DEFAULT_BOUND = 2000
ENV_BOUND = "K3HILB_ORACLE_BOUND"


def oracle_bound(default: int = DEFAULT_BOUND) -> int:
    raw = os.environ.get(ENV_BOUND)
    if raw is None:
        return default
    bound = int(raw)
    if bound < 1:
        raise ValueError(f"{ENV_BOUND} must be positive, got {raw!r}")
    return bound


def _square_roots(vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Mask of perfect squares among non-negative int64 ``vals`` and their roots."""
    root = np.rint(np.sqrt(vals.astype(np.float64))).astype(np.int64)
    hit = np.zeros(vals.shape, dtype=bool)
    out = root.copy()
    for delta in (-1, 0, 1):
        cand = root + delta
        ok = (cand >= 0) & (cand * cand == vals)
        out = np.where(ok & ~hit, cand, out)
        hit |= ok
    return hit, out


def brute_fundamental_pell(D: int, bound: int) -> tuple[int, int] | None:
    """Smallest ``y <= bound`` with ``D y^2 + 1`` a square."""
    if D * bound * bound >= 2**62:
        raise OverflowError("bound too large for int64 scan")
    ys = np.arange(1, bound + 1, dtype=np.int64)
    hit, roots = _square_roots(D * ys * ys + 1)
    idx = np.flatnonzero(hit)
    if idx.size == 0:
        return None
    i = idx[0]
    return int(roots[i]), int(ys[i])


def brute_general_pell(A: int, B: int, sign: int, bound: int) -> tuple[int, int] | None:
    """Smallest ``1 <= u <= bound`` with ``(A u^2 - sign) / B`` a non-negative square."""
    us = np.arange(1, bound + 1, dtype=np.int64)
    num = A * us * us - sign
    ok = (num >= 0) & (num % B == 0)
    vals = np.where(ok, num // B, 0)
    hit, roots = _square_roots(vals)
    idx = np.flatnonzero(hit & ok)
    if idx.size == 0:
        return None
    i = idx[0]
    return int(us[i]), int(roots[i])


def brute_birational(cls: PartnerClass, n: int, bound: int) -> tuple[int, int, int] | None:
    """Search ``p, q <= bound`` for either equation; returns ``(equation, p, q)``."""
    s, t = cls.s, cls.t
    for equation, (a, b) in ((1, (s, t)), (2, (t, s))):
        for p in range(bound + 1):
            for sign in (1, -1):
                num = a * (n - 1) * p * p - sign
                if num >= 0 and num % b == 0 and is_square(num // b) and isqrt(num // b) <= bound:
                    return equation, p, isqrt(num // b)
    return None


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def check_fundamental_pell(max_D: int = 300, bound: int = 10**5) -> Check:
    bad = []
    for D in range(2, max_D + 1):
        if is_square(D):
            continue
        sol = fundamental_pell(D)
        ref = brute_fundamental_pell(D, bound)
        if ref is None:
            if sol.y <= bound:
                bad.append(D)
        elif (sol.x, sol.y) != ref:
            bad.append(D)
    return Check(f"fundamental_pell vs scan (D<={max_D}, y<={bound})", not bad, f"mismatches: {bad}")


def check_general_pell(max_coef: int = 40, bound: int = DEFAULT_BOUND) -> Check:
    bad = []
    for A in range(1, max_coef + 1):
        for B in range(1, max_coef + 1):
            if is_square(A * B):
                continue
            out = solve_general_pell(A, B)
            for sign in (1, -1):
                got = out.branch(sign)
                ref = brute_general_pell(A, B, sign, bound)
                if ref is not None:
                    if not got.solvable or (got.u, got.v) != ref:
                        bad.append((A, B, sign))
                elif got.solvable and got.u <= bound:
                    bad.append((A, B, sign))
                elif not got.solvable and got.modulus is not None:
                    if mod_obstruction(A, B, sign, [got.modulus]) != got.modulus:
                        bad.append((A, B, sign))
    return Check(f"solve_general_pell vs scan (A,B<={max_coef}, u<={bound})", not bad,
                 f"mismatches: {bad[:10]}")


def check_never_birational(bound: int = 200, n_max: int = 100) -> Check:
    cls = PartnerClass(5, 13)
    cert = never_birational_certificate(cls)
    params = SurfaceParams(65)
    bad = [n for n in range(1, n_max + 1)
           if hilbert_birational(params, cls, n).birational or brute_birational(cls, n, bound)]
    ok = cert is not None and (cert.modulus1, cert.modulus2) == (5, 13) and not bad
    return Check(f"degree 130 never birational (n<={n_max}, p,q<={bound})", ok,
                 f"certificate={cert}, counterexamples={bad}")


def run_selftest(bound: int | None = None) -> list[Check]:
    bound = oracle_bound() if bound is None else bound
    return [
        check_fundamental_pell(bound=max(bound, 1)),
        check_general_pell(bound=bound),
        check_never_birational(bound=min(bound, 200)),
    ]
