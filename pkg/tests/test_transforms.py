import random
from itertools import product

import pytest

from k3hilb.mukai import MukaiVector as V, SurfaceParams, is_isotropic, is_primitive, pairing
from k3hilb.transforms import (
    BASIS,
    CohomTransform,
    compose,
    deg12_universal_transform,
    dualize_action,
    identity,
    shift_action,
    spherical_twist_action,
    tensor_action,
)

D6 = SurfaceParams(6)
F = deg12_universal_transform()
T = spherical_twist_action(D6)
DUAL = dualize_action(D6)
SHIFT = shift_action(D6)


def test_deg12_matrix():
    assert F(V(1, 0, 0)) == V(3, 1, 2)
    assert F(V(0, 1, 0)) == V(12, 5, 12)
    assert F(V(0, 0, 1)) == V(2, 1, 3)
    assert F.determinant == 1


def test_chain_n2_fixed_point():
    assert F(V(1, 0, -1)) == V(1, 0, -1)


def test_chain_n3():
    assert F(V(1, -1, 4)) == V(-1, 0, 2)
    assert SHIFT(F(V(1, -1, 4))) == V(1, 0, -2)
    assert tensor_action(-1, D6)(V(1, 0, -2)) == V(1, -1, 4)


def test_chain_n4():
    assert F(V(1, -1, 3)) == V(-3, -1, -1)
    assert DUAL(V(-3, -1, -1)) == V(-3, 1, -1)
    assert T(V(-3, 1, -1)) == V(1, 1, 3)
    assert (T @ DUAL @ F)(V(1, -1, 3)) == V(1, 1, 3)


def test_chain_n5():
    assert T(V(1, -1, 2)) == V(-2, -1, -1)
    assert (SHIFT @ T)(V(1, -1, 2)) == V(2, 1, 1)
    # LGU: the point class pairs to 2 with (2, H, 1)
    assert abs(pairing(V(0, 0, -1), V(2, 1, 1), D6)) == 2


def test_simple_actions():
    assert T(V(1, 0, 0)) == V(0, 0, -1)
    assert DUAL(V(1, 0, -1)) == V(1, 0, -1)
    assert DUAL(V(2, 1, 3)) == V(2, -1, 3)
    assert SHIFT(V(0, 0, 0)) == V(0, 0, 0)
    assert SHIFT(V(-2, -1, -1)) == V(2, 1, 1)
    assert tensor_action(1, D6)(V(1, -1, 4)) == V(1, 0, -2)


@pytest.mark.parametrize("d", [1, 6, 65])
def test_every_transform_is_unimodular_isometry(d):
    p = SurfaceParams(d)
    ts = [spherical_twist_action(p), dualize_action(p), shift_action(p), identity(p)]
    ts += [tensor_action(m, p) for m in range(-3, 4)]
    if d == 6:
        ts.append(F)
    for t in ts + [compose(a, b) for a in ts for b in ts]:
        assert t.determinant in (1, -1)
        for v, w in product(BASIS, repeat=2):
            assert pairing(t(v), t(w), t.target) == pairing(v, w, t.source)


def test_tensor_inverse_and_identity():
    for d in (1, 6, 11):
        p = SurfaceParams(d)
        assert tensor_action(0, p) == identity(p)
        for m in range(-3, 4):
            assert compose(tensor_action(m, p), tensor_action(-m, p)) == identity(p)


def test_composition_identities():
    assert compose(identity(D6), F) == F
    assert compose(SHIFT, SHIFT) == identity(D6)


def test_non_isometry_rejected():
    with pytest.raises(ValueError):
        CohomTransform(((1, 0, 0), (0, 1, 0), (0, 0, 1)), D6, SurfaceParams(5))
    with pytest.raises(ValueError):
        CohomTransform(((2, 0, 0), (0, 1, 0), (0, 0, 1)), D6, D6)


def test_compose_mismatch():
    with pytest.raises(ValueError):
        compose(identity(SurfaceParams(5)), F)


def test_deg12_preserves_isotropy():
    rng = random.Random(12)
    seen = 0
    while seen < 100:
        r, c = rng.randint(1, 300), rng.randint(-200, 200)
        if (6 * c * c) % r:
            continue
        v = V(r, c, 6 * c * c // r)
        if not is_primitive(v):
            continue
        w = F(v)
        assert is_isotropic(w, D6) and is_primitive(w)
        seen += 1
