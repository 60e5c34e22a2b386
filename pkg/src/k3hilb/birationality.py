"""Birationality of ``X^[n]`` and ``Y^[n]`` for Fourier-Mukai partners.

For the partner ``Y = M(s, H, t)`` the Hilbert schemes are birational iff one
of

    s (n-1) p^2 - t q^2 = +-1        (equation 1)
    t (n-1) p^2 - s q^2 = +-1        (equation 2)

has an integer solution. A solution of the equation with orientation
``(s', t')`` gives the witness ``w = (p^2 s', pq, q^2 t')``: a primitive
isotropic class pairing to ``+-1`` with ``(1, 0, 1-n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._arith import divisors
from .mukai import MukaiVector, SurfaceParams, hilbert_vector, pairing
from .partners import PartnerClass, enumerate_partners, relative_class
from .pell import GenPellOutcome, mod_obstruction, solve_general_pell


@dataclass(frozen=True)
class Birational:
    witness: MukaiVector
    p: int
    q: int
    equation_used: int
    sign: int

    birational = True


@dataclass(frozen=True)
class NotBirational:
    outcome1: GenPellOutcome | None
    outcome2: GenPellOutcome | None
    reason: str = ""

    birational = False


Verdict = Birational | NotBirational


@dataclass(frozen=True)
class NeverCertificate:
    modulus1: int
    modulus2: int


def _check_class(params: SurfaceParams, cls: PartnerClass) -> None:
    if cls.d != params.d:
        raise ValueError(f"{cls} is not a partner class for d={params.d}")


def _witness(params: SurfaceParams, n: int, s: int, t: int, p: int, q: int,
             equation: int, sign: int) -> Birational:
    w = MukaiVector(p * p * s, p * q, q * q * t)
    assert pairing(hilbert_vector(n), w, params) == sign
    return Birational(w, p, q, equation, sign)


def hilbert_birational(params: SurfaceParams, cls: PartnerClass, n: int) -> Verdict:
    """Decide whether ``X^[n]`` and ``M(s,H,t)^[n]`` are birational."""
    _check_class(params, cls)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if cls.is_trivial:
        # identity; its Hilbert-Chow class is the point class (p, q) = (0, 1)
        return _witness(params, n, params.d, 1, 0, 1, equation=2, sign=-1)
    if n == 1:
        return NotBirational(None, None, "n=1: distinct partners are never isomorphic")

    s, t = cls.s, cls.t
    out1 = solve_general_pell(s * (n - 1), t)
    out2 = solve_general_pell(t * (n - 1), s)
    for equation, (s_, t_), outcome in ((1, (s, t), out1), (2, (t, s), out2)):
        for sign in (1, -1):
            sol = outcome.branch(sign)
            if sol.solvable:
                return _witness(params, n, s_, t_, sol.u, sol.v, equation, sign)
    return NotBirational(out1, out2)


def birational_verdicts(params: SurfaceParams, cls: PartnerClass,
                        n_max: int) -> list[tuple[int, Verdict]]:
    return [(n, hilbert_birational(params, cls, n)) for n in range(1, n_max + 1)]


def birational_table(params: SurfaceParams, cls: PartnerClass, n_max: int) -> list[tuple[int, bool]]:
    return [(n, v.birational) for n, v in birational_verdicts(params, cls, n_max)]


def _kills(A: int, B: int, m: int) -> bool:
    return all(mod_obstruction(A, B, sign, [m]) == m for sign in (1, -1))


def never_birational_certificate(cls: PartnerClass) -> NeverCertificate | None:
    """Moduli ``(m1, m2)`` ruling out both equations for every ``n``.

    ``m1 | s`` makes the ``p^2`` term of equation 1 vanish mod ``m1`` whatever
    ``n`` is, leaving ``-t q^2 = +-1 (mod m1)``; likewise ``m2 | t`` for
    equation 2.
    """
    if cls.is_trivial:
        return None
    s, t = cls.s, cls.t
    m1 = next((m for m in divisors(s)[1:] if _kills(s, t, m)), None)
    m2 = next((m for m in divisors(t)[1:] if _kills(t, s, m)), None)
    if m1 is None or m2 is None:
        return None
    return NeverCertificate(m1, m2)


def pairwise_birationality(params: SurfaceParams, n: int) -> list[tuple[PartnerClass, ...]]:
    """Partition the partners of ``X`` into birational classes of their ``n``-th Hilbert schemes.

    Every pair is tested through its relative class. The partition must be
    either all singletons or all pairs; anything else raises.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    classes = enumerate_partners(params.d)
    cache: dict[PartnerClass, bool] = {}
    parent = list(range(len(classes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, a in enumerate(classes):
        for j in range(i + 1, len(classes)):
            rel = relative_class(a, classes[j])
            if rel not in cache:
                cache[rel] = hilbert_birational(params, rel, n).birational
            if cache[rel]:
                parent[find(j)] = find(i)

    groups: dict[int, list[PartnerClass]] = {}
    for i, c in enumerate(classes):
        groups.setdefault(find(i), []).append(c)
    parts = sorted(tuple(g) for g in groups.values())
    sizes = {len(g) for g in parts}
    if not (sizes == {1} or sizes == {2}):
        raise RuntimeError(f"unexpected partition shape for d={params.d}, n={n}: {parts}")
    return parts
