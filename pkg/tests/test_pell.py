from decimal import Decimal, getcontext
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3hilb._arith import is_square
from k3hilb.oracles import brute_fundamental_pell, brute_general_pell
from k3hilb.pell import (
    QuadIrrational,
    SquareDiscriminantError,
    cf_expand,
    default_moduli,
    fundamental_pell,
    mod_obstruction,
    negative_pell,
    solve_general_pell,
)


def decimal_cf(P, Q, D, terms, digits=80):
    """Partial quotients of (P + sqrt(D))/Q from high-precision floats."""
    getcontext().prec = digits
    x = (Decimal(P) + Decimal(D).sqrt()) / Decimal(Q)
    out = []
    for _ in range(terms):
        a = int(x.to_integral_value(rounding="ROUND_FLOOR"))
        out.append(a)
        x = 1 / (x - a)
    return out


@pytest.mark.parametrize(
    "D, a0, period",
    [(6, 2, (2, 4)), (2, 1, (2,)), (24, 4, (1, 8))],
)
def test_cf_expand_examples(D, a0, period):
    cf = cf_expand(QuadIrrational.sqrt(D))
    assert cf.a0 == a0
    assert cf.preperiod == ()
    assert cf.period == period


@pytest.mark.parametrize("P, Q, D", [(0, 1, 7), (0, 27, 54), (0, 5, 65), (3, 2, 13), (1, -3, 10)])
def test_cf_expand_matches_decimal_oracle(P, Q, D):
    cf = cf_expand(QuadIrrational(P, Q, D))
    quots = cf.quotients()
    got = [next(quots) for _ in range(20)]
    assert got == decimal_cf(P, Q, D, 20)


def test_cf_rejects_square_and_bad_form():
    with pytest.raises(SquareDiscriminantError):
        cf_expand(QuadIrrational.sqrt(16))
    with pytest.raises(ValueError):
        QuadIrrational(1, 4, 7)  # 4 does not divide 6


@pytest.mark.parametrize("D", [d for d in range(2, 200) if not is_square(d)])
def test_pure_sqrt_state_orbit(D):
    cf = cf_expand(QuadIrrational.sqrt(D))
    qs = [Q for _, Q in cf.state_orbit]
    assert all(Q > 0 for Q in qs)
    assert [i for i, Q in enumerate(qs) if Q == 1] == [len(qs) - 1]
    assert cf.period[-1] == 2 * cf.a0
    assert all(a >= 1 for a in cf.period)


@pytest.mark.parametrize("D, xy", [(24, (5, 1)), (6, (5, 2)), (60, (31, 4))])
def test_fundamental_pell_examples(D, xy):
    sol = fundamental_pell(D)
    assert (sol.x, sol.y) == xy
    assert brute_fundamental_pell(D, 100) == xy


def test_negative_pell_examples():
    assert (negative_pell(2).x, negative_pell(2).y) == (1, 1)
    assert (negative_pell(5).x, negative_pell(5).y) == (2, 1)
    assert negative_pell(6) is None
    # no solution of x^2 - 6y^2 = -1 for y <= 10^4
    assert not any(is_square(6 * y * y - 1) for y in range(1, 10**4 + 1))


@pytest.mark.parametrize("D", [d for d in range(2, 120) if not is_square(d)])
def test_negative_pell_iff_odd_period(D):
    odd = len(cf_expand(QuadIrrational.sqrt(D)).period) % 2 == 1
    assert (negative_pell(D) is not None) == odd


def test_pell_rejects_squares():
    for f in (fundamental_pell, negative_pell):
        with pytest.raises(SquareDiscriminantError):
            f(49)


def test_general_pell_examples():
    out = solve_general_pell(8, 3)
    assert not out.plus.solvable and not out.minus.solvable

    out = solve_general_pell(27, 2)
    assert out.plus.solvable and (out.plus.u, out.plus.v) == (3, 11)

    out = solve_general_pell(2, 3)
    assert out.minus.solvable and (out.minus.u, out.minus.v) == (1, 1)
    assert not out.plus.solvable and out.plus.modulus == 3


def test_general_pell_rejects_zero():
    with pytest.raises(ValueError):
        solve_general_pell(0, 3)
    with pytest.raises(ValueError):
        solve_general_pell(3, 0)


@pytest.mark.parametrize("A, B", [(4, 9), (9, 4), (1, 4), (2, 8), (6, 6), (4, 1)])
def test_general_pell_square_product(A, B):
    out = solve_general_pell(A, B)
    for sign in (1, -1):
        ref = brute_general_pell(A, B, sign, 500)
        branch = out.branch(sign)
        if ref is None:
            assert not branch.solvable
        else:
            assert (branch.u, branch.v) == ref


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 400), st.integers(1, 400))
def test_general_pell_solutions_exact_and_certificates_sound(A, B):
    out = solve_general_pell(A, B)
    for sign in (1, -1):
        b = out.branch(sign)
        if b.solvable:
            assert A * b.u * b.u - B * b.v * b.v == sign
            assert b.u == 1 or brute_general_pell(A, B, sign, min(b.u - 1, 2000)) is None
        else:
            if b.modulus is not None:
                assert mod_obstruction(A, B, sign, [b.modulus]) == b.modulus
            assert brute_general_pell(A, B, sign, 300) is None


def test_mod_obstruction_examples():
    for k in (1, 2, 7, 12):
        for sign in (1, -1):
            assert mod_obstruction(5 * k, 13, sign, [5]) == 5
            assert mod_obstruction(13 * k, 5, sign, [13]) == 13
    assert mod_obstruction(2, 3, -1, [3, 5, 8]) is None


def test_mod_obstruction_matches_residue_enumeration():
    for m in range(2, 17):
        for A in range(m):
            for B in range(m):
                for sign in (1, -1):
                    direct = not any(
                        (A * u * u - B * v * v - sign) % m == 0 for u in range(m) for v in range(m)
                    )
                    assert (mod_obstruction(A, B, sign, [m]) == m) == direct


def test_default_moduli_order():
    assert default_moduli(65, 6) == [5, 13, 2, 3, 8, 9, 7, 11, 16]


def test_big_solutions_stay_exact():
    # period of sqrt(991) is long; the solution has 30 digits
    sol = fundamental_pell(991)
    assert sol.x == 379516400906811930638014896080
    assert sol.x * sol.x - 991 * sol.y * sol.y == 1
    assert isqrt(991 * sol.y * sol.y + 1) == sol.x
