"""Pell and generalized Pell equations via continued fractions.

Everything here works with exact Python integers. Quadratic irrationals are
carried in the form ``(P + sqrt(D)) / Q`` with ``Q | D - P^2``; with that
normalization the complete quotients obey the integer recurrence

    a_k     = floor((P_k + sqrt(D)) / Q_k)
    P_{k+1} = a_k Q_k - P_k
    Q_{k+1} = (D - P_{k+1}^2) / Q_k

and the convergents ``p_k / q_k`` of ``alpha = (P_0 + sqrt(D)) / Q_0`` satisfy

    Q_0 p_k^2 - 2 P_0 p_k q_k - ((D - P_0^2) / Q_0) q_k^2 = (-1)^(k+1) Q_{k+1}.

For ``alpha = sqrt(AB) / A`` this specializes to
``A p_k^2 - B q_k^2 = (-1)^(k+1) Q_{k+1}``, which is how ``A u^2 - B v^2 = +-1``
is decided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, count
from math import gcd, isqrt
from typing import Iterator, Sequence

from ._arith import is_square, prime_divisors

EXTRA_MODULI = (8, 9, 5, 7, 11, 13, 16)


class SquareDiscriminantError(ValueError):
    pass


@dataclass(frozen=True)
class QuadIrrational:
    """The real number ``(P + sqrt(D)) / Q``."""

    P: int
    Q: int
    D: int

    def __post_init__(self):
        if self.D <= 0 or is_square(self.D):
            raise SquareDiscriminantError(f"D={self.D} must be a positive non-square")
        if self.Q == 0:
            raise ValueError("Q must be nonzero")
        if (self.D - self.P * self.P) % self.Q:
            raise ValueError(f"Q={self.Q} does not divide D - P^2 = {self.D - self.P * self.P}")

    @classmethod
    def sqrt(cls, D: int) -> QuadIrrational:
        return cls(0, 1, D)

    def floor(self) -> int:
        root = isqrt(self.D)
        if self.Q > 0:
            return (self.P + root) // self.Q
        return (-self.P - root - 1) // (-self.Q)

    def __float__(self) -> float:
        return (self.P + self.D**0.5) / self.Q


@dataclass(frozen=True)
class CFExpansion:
    """Eventually periodic continued fraction ``[a0; preperiod, (period)]``.

    ``state_orbit[i]`` is the ``(P, Q)`` state that produces ``period[i]``.
    """

    a0: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    state_orbit: tuple[tuple[int, int], ...]

    def quotients(self) -> Iterator[int]:
        """Yield ``a0, a1, a2, ...`` forever."""
        yield self.a0
        yield from self.preperiod
        while True:
            yield from self.period

    @property
    def offset(self) -> int:
        """Index of the first partial quotient of the period."""
        return 1 + len(self.preperiod)


def _step(P: int, Q: int, D: int) -> tuple[int, int, int]:
    a = QuadIrrational(P, Q, D).floor()
    P1 = a * Q - P
    Q1, rem = divmod(D - P1 * P1, Q)
    assert rem == 0
    return a, P1, Q1


def cf_expand(alpha: QuadIrrational) -> CFExpansion:
    D = alpha.D
    seen: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []
    quots: list[int] = []
    P, Q = alpha.P, alpha.Q
    # State 0 produces a0, which is reported on its own; periods start at k >= 1.
    a, P, Q = _step(P, Q, D)
    quots.append(a)
    for k in count(1):
        state = (P, Q)
        if state in seen:
            start = seen[state]
            return CFExpansion(
                a0=quots[0],
                preperiod=tuple(quots[1:start]),
                period=tuple(quots[start:k]),
                state_orbit=tuple(states[start - 1 : k - 1]),
            )
        seen[state] = k
        states.append(state)
        a, P, Q = _step(P, Q, D)
        quots.append(a)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Convergent:
    k: int
    p: int
    q: int
    value: int  # A p^2 - B q^2 for the alpha being expanded


def _convergents(A: int, B: int, periods: int = 2) -> Iterator[Convergent]:
    """Convergents of ``sqrt(B/A)`` starting from ``k = -1`` (``1/0``).

    Runs through the preperiod and ``periods`` full periods, which is enough
    to see every (sign, Q) combination that will ever occur.
    """
    D = A * B
    alpha = QuadIrrational(0, A, D)
    cf = cf_expand(alpha)
    limit = cf.offset + periods * len(cf.period)

    yield Convergent(-1, 1, 0, A)
    p_prev, q_prev, p, q = 0, 1, 1, 0
    P, Q = alpha.P, alpha.Q
    quots = cf.quotients()
    for k in range(limit):
        a = next(quots)
        a_chk, P, Q = _step(P, Q, D)
        assert a == a_chk
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        value = A * p * p - B * q * q
        # convergent identity; cheap and catches recurrence bugs
        if value != (-1) ** (k + 1) * Q:
            raise AssertionError(f"convergent identity failed at k={k} for A={A}, B={B}")
        yield Convergent(k, p, q, value)


@dataclass(frozen=True)
class PellSolution:
    """``x^2 - D y^2 = sign``."""

    x: int
    y: int
    sign: int
    D: int = field(repr=False)

    def __post_init__(self):
        if self.x * self.x - self.D * self.y * self.y != self.sign:
            raise AssertionError(f"{self} does not solve x^2 - {self.D} y^2 = {self.sign}")


def _pell(D: int, sign: int) -> PellSolution | None:
    if D <= 0 or is_square(D):
        raise SquareDiscriminantError(f"D={D} must be a positive non-square")
    for cv in _convergents(1, D):
        if cv.q >= 1 and cv.value == sign:
            return PellSolution(cv.p, cv.q, sign, D)
    return None


def fundamental_pell(D: int) -> PellSolution:
    """Minimal solution of ``x^2 - D y^2 = 1`` with ``y >= 1``."""
    sol = _pell(D, 1)
    assert sol is not None
    return sol


def negative_pell(D: int) -> PellSolution | None:
    """Minimal solution of ``x^2 - D y^2 = -1``, or None when the period is even."""
    return _pell(D, -1)


@dataclass(frozen=True)
class GenPellSolution:
    """``A u^2 - B v^2 = sign`` with ``u >= 1``, ``v >= 0``."""

    A: int
    B: int
    u: int
    v: int
    sign: int

    solvable = True

    def __post_init__(self):
        if self.A * self.u * self.u - self.B * self.v * self.v != self.sign:
            raise AssertionError(f"{self} is not a solution")


@dataclass(frozen=True)
class Unsolvable:
    A: int
    B: int
    sign: int
    modulus: int | None = None

    solvable = False


@dataclass(frozen=True)
class GenPellOutcome:
    A: int
    B: int
    plus: GenPellSolution | Unsolvable
    minus: GenPellSolution | Unsolvable

    def branch(self, sign: int) -> GenPellSolution | Unsolvable:
        if sign == 1:
            return self.plus
        if sign == -1:
            return self.minus
        raise ValueError(f"sign must be +-1, got {sign}")

    @property
    def solvable(self) -> bool:
        return self.plus.solvable or self.minus.solvable

    def solutions(self) -> list[GenPellSolution]:
        return [b for b in (self.plus, self.minus) if b.solvable]


def default_moduli(A: int, B: int) -> list[int]:
    moduli: list[int] = []
    for m in chain(prime_divisors(A), prime_divisors(B), EXTRA_MODULI):
        if m not in moduli:
            moduli.append(m)
    return moduli


def _residue_squares(k: int, m: int) -> set[int]:
    return {(k * u * u) % m for u in range(m)}


def mod_obstruction(A: int, B: int, sign: int, moduli: Sequence[int]) -> int | None:
    """First ``m`` for which ``A u^2 - B v^2 = sign`` has no solution mod ``m``."""
    for m in moduli:
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        left = _residue_squares(A, m)
        right = _residue_squares(B, m)
        if not any((a - b - sign) % m == 0 for a in left for b in right):
            return m
    return None


def _unsolvable(A: int, B: int, sign: int) -> Unsolvable:
    return Unsolvable(A, B, sign, mod_obstruction(A, B, sign, default_moduli(A, B)))


def _solve_square_case(A: int, B: int) -> GenPellOutcome:
    # A*B = k^2. A common factor of A and B would divide +-1. Otherwise A = a^2
    # and B = b^2, and (au - bv)(au + bv) = +-1 leaves only u = 1, v = 0, A = 1.
    plus: GenPellSolution | Unsolvable
    if gcd(A, B) == 1 and A == 1:
        plus = GenPellSolution(A, B, 1, 0, 1)
    else:
        plus = _unsolvable(A, B, 1)
    return GenPellOutcome(A, B, plus, _unsolvable(A, B, -1))


def solve_general_pell(A: int, B: int) -> GenPellOutcome:
    """Decide ``A u^2 - B v^2 = +1`` and ``= -1`` and return minimal solutions.

    Solutions are minimal in ``u`` among ``u >= 1, v >= 0``. Unsolvable signs
    carry a modular certificate when a small one exists.
    """
    if A < 1 or B < 1:
        raise ValueError(f"coefficients must be positive, got A={A}, B={B}")
    if is_square(A * B):
        return _solve_square_case(A, B)

    found: dict[int, GenPellSolution] = {}
    for cv in _convergents(A, B):
        if cv.p >= 1 and cv.value in (1, -1) and cv.value not in found:
            found[cv.value] = GenPellSolution(A, B, cv.p, cv.q, cv.value)
            if len(found) == 2:
                break
    return GenPellOutcome(
        A,
        B,
        found.get(1) or _unsolvable(A, B, 1),
        found.get(-1) or _unsolvable(A, B, -1),
    )
