"""Cohomological Fourier-Mukai actions on algebraic Mukai vectors.

Transforms are 3x3 integer matrices acting on column vectors ``(r, c, x)``.
Construction checks that the matrix is unimodular and an isometry for the
Mukai pairing between the source and target surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .mukai import MukaiVector, SurfaceParams, pairing

Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

BASIS = (MukaiVector(1, 0, 0), MukaiVector(0, 1, 0), MukaiVector(0, 0, 1))


def _det(m: Matrix) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _matmul(m1: Matrix, m2: Matrix) -> Matrix:
    return tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def _from_columns(*cols: MukaiVector) -> Matrix:
    return tuple(tuple(col[i] for col in (tuple(c) for c in cols)) for i in range(3))


@dataclass(frozen=True)
class CohomTransform:
    matrix: Matrix
    source: SurfaceParams
    target: SurfaceParams

    def __post_init__(self):
        if _det(self.matrix) not in (1, -1):
            raise ValueError(f"determinant {_det(self.matrix)} is not +-1")
        for v, w in product(BASIS, repeat=2):
            if pairing(self(v), self(w), self.target) != pairing(v, w, self.source):
                raise ValueError(f"not an isometry on basis pair {v}, {w}")

    @property
    def determinant(self) -> int:
        return _det(self.matrix)

    def __call__(self, v: MukaiVector) -> MukaiVector:
        return MukaiVector(*(row[0] * v.r + row[1] * v.c + row[2] * v.x for row in self.matrix))

    def __matmul__(self, other: CohomTransform) -> CohomTransform:
        return compose(self, other)


def apply(t: CohomTransform, v: MukaiVector) -> MukaiVector:
    return t(v)


def compose(t1: CohomTransform, t2: CohomTransform) -> CohomTransform:
    """``t1 o t2`` (apply ``t2`` first)."""
    if t2.target != t1.source:
        raise ValueError(f"cannot compose: {t2.target} -> {t1.source}")
    return CohomTransform(_matmul(t1.matrix, t2.matrix), t2.source, t1.target)


def identity(params: SurfaceParams) -> CohomTransform:
    return CohomTransform(((1, 0, 0), (0, 1, 0), (0, 0, 1)), params, params)


def deg12_universal_transform() -> CohomTransform:
    """Action of the universal family of ``Y = M_X(2, H, 3)`` on a degree-12 K3."""
    p = SurfaceParams(6)
    return CohomTransform(
        _from_columns(MukaiVector(3, 1, 2), MukaiVector(12, 5, 12), MukaiVector(2, 1, 3)), p, p
    )


def spherical_twist_action(params: SurfaceParams = SurfaceParams(6)) -> CohomTransform:
    """Twist around the structure sheaf: ``(r, c, x) -> (-x, c, -r)``."""
    return CohomTransform(((0, 0, -1), (0, 1, 0), (-1, 0, 0)), params, params)


def dualize_action(params: SurfaceParams = SurfaceParams(6)) -> CohomTransform:
    return CohomTransform(((1, 0, 0), (0, -1, 0), (0, 0, 1)), params, params)


def shift_action(params: SurfaceParams = SurfaceParams(6)) -> CohomTransform:
    return CohomTransform(((-1, 0, 0), (0, -1, 0), (0, 0, -1)), params, params)


def tensor_action(m: int, params: SurfaceParams = SurfaceParams(6)) -> CohomTransform:
    """Tensoring with ``O(mH)``: ``(r, c, x) -> (r, c + m r, x + 2dm c + d m^2 r)``."""
    d = params.d
    return CohomTransform(((1, 0, 0), (m, 1, 0), (d * m * m, 2 * d * m, 1)), params, params)
