"""Sp4 with the Siegel (2+2 block) coset model.

The symplectic form is the antidiagonal convention
omega(x, y) = x1 y4 - x2 y3 + x3 y2 - x4 y1, which keeps the standard
Borel upper triangular.  A group element maps to its first two columns
(v1, v2) subject to omega(v1, v2) = 0; the opposite model takes columns
three and four.  The transform kernel is Kl(omega(v1, w2) + omega(w1, v2)),
and the d=4 quadric coordinates u = v1, u_dual = (omega(e_j, v2))_j turn
it into the quadric Kloosterman transform verbatim.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .characters import CharacterContext
from .fields import FieldElement, FieldSpec
from .funcspace import FunctionOnSet, IndexedSet
from .matrices import RectMatrix
from .quadric import QuadricPoint, QuadricSet, fourier_raw
from .scalars import Cyclotomic


def omega(x, y) -> FieldElement:
    """x1 y4 - x2 y3 + x3 y2 - x4 y1 on 4-vectors."""
    return x[0] * y[3] - x[1] * y[2] + x[2] * y[1] - x[3] * y[0]


def form_matrix(spec: FieldSpec) -> RectMatrix:
    return RectMatrix(
        spec,
        4,
        4,
        [0, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, -1, 0, 0, 0],
    )


def is_symplectic(g: RectMatrix) -> bool:
    if (g.rows, g.cols) != (4, 4):
        return False
    J = form_matrix(g.spec)
    return g.transpose() @ J @ g == J


def _require_symplectic(g: RectMatrix) -> None:
    if not is_symplectic(g):
        raise ValueError("matrix does not preserve the symplectic form")


def embed_levi(m: RectMatrix) -> RectMatrix:
    """Block-diagonal embedding GL2 -> Sp4 with lower block m / det(m)."""
    if (m.rows, m.cols) != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    det = m.det()
    if det.is_zero():
        raise ValueError("Levi element must be invertible")
    dinv = det.inverse()
    z = m.spec.zero()
    lower = [e * dinv for e in m.entries]
    g = RectMatrix(
        m.spec,
        4,
        4,
        [
            m[0, 0], m[0, 1], z, z,
            m[1, 0], m[1, 1], z, z,
            z, z, lower[0], lower[1],
            z, z, lower[2], lower[3],
        ],
    )
    assert is_symplectic(g)
    return g


def siegel_unipotent(spec: FieldSpec, a, b, c, upper: bool = True) -> RectMatrix:
    """Unipotent with trace-zero 2x2 block ((a, b), (c, -a)) off the diagonal."""
    a, b, c = spec.element(a), spec.element(b), spec.element(c)
    z, o = spec.zero(), spec.one()
    if upper:
        rows = [
            [o, z, a, b],
            [z, o, c, -a],
            [z, z, o, z],
            [z, z, z, o],
        ]
    else:
        rows = [
            [o, z, z, z],
            [z, o, z, z],
            [a, b, o, z],
            [c, -a, z, o],
        ]
    g = RectMatrix.from_rows(spec, rows)
    assert is_symplectic(g)
    return g


def random_symplectic(spec: FieldSpec, rng: random.Random, length: int = 5) -> RectMatrix:
    """Word in Levi embeddings and upper/lower Siegel unipotents."""
    from .matrices import random_invertible

    g = RectMatrix.identity(spec, 4)
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            g = g @ embed_levi(random_invertible(spec, 2, rng))
        else:
            abc = [rng.randrange(spec.q) for _ in range(3)]
            g = g @ siegel_unipotent(spec, *abc, upper=(kind == 1))
    return g


class SiegelPoint:
    """Pair of 4-vectors (v1, v2) with omega(v1, v2) = 0."""

    __slots__ = ("v1", "v2")

    def __init__(self, v1, v2, check: bool = True):
        self.v1 = tuple(v1)
        self.v2 = tuple(v2)
        if check and not omega(self.v1, self.v2).is_zero():
            raise ValueError("omega(v1, v2) != 0")

    @property
    def spec(self) -> FieldSpec:
        return self.v1[0].spec

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.v1 + self.v2)

    def __eq__(self, other):
        return (
            isinstance(other, SiegelPoint)
            and (self.v1, self.v2) == (other.v1, other.v2)
        )

    def __hash__(self):
        return hash((self.v1, self.v2))

    def __repr__(self):
        v1 = ",".join(str(e) for e in self.v1)
        v2 = ",".join(str(e) for e in self.v2)
        return f"(({v1}),({v2}))"


def siegel_model(g: RectMatrix) -> SiegelPoint:
    _require_symplectic(g)
    return SiegelPoint(g.col(0), g.col(1))


def siegel_model_op(g: RectMatrix) -> SiegelPoint:
    _require_symplectic(g)
    return SiegelPoint(g.col(2), g.col(3))


def monoid_pairing(x: SiegelPoint, y: SiegelPoint) -> RectMatrix:
    """The Mat_2 pairing ((-w(v1,w2), -w(v2,w2)), (w(v1,w1), w(v2,w1)))."""
    spec = x.spec
    return RectMatrix(
        spec,
        2,
        2,
        [
            -omega(x.v1, y.v2), -omega(x.v2, y.v2),
            omega(x.v1, y.v1), omega(x.v2, y.v1),
        ],
    )


def kernel_argument(x: SiegelPoint, y: SiegelPoint) -> FieldElement:
    """omega(v1, w2) + omega(w1, v2), the transform kernel's argument."""
    return omega(x.v1, y.v2) + omega(y.v1, x.v2)


def to_quadric_coords(pt: SiegelPoint) -> QuadricPoint:
    """(v1, v2) -> (u, u_dual) with u = v1 and u_dual_j = omega(e_j, v2)."""
    a, b, c, d = pt.v2
    return QuadricPoint(pt.v1, (d, -c, b, -a))


def from_quadric_coords(qp: QuadricPoint) -> SiegelPoint:
    z1, z2, z3, z4 = qp.u_dual
    return SiegelPoint(qp.u, (-z4, z3, -z2, z1))


class Sp4Space:
    """Enumerated Siegel quadric and its bijection with the d=4 cone."""

    def __init__(self, ctx: CharacterContext, max_points: int | None = None):
        self.ctx = ctx
        self.quadric = QuadricSet(4, ctx, max_points=max_points)
        pts = [from_quadric_coords(p) for p in self.quadric.points]
        order = sorted(
            range(len(pts)),
            key=lambda j: (
                tuple(e.enc for e in pts[j].v1),
                tuple(e.enc for e in pts[j].v2),
            ),
        )
        self.points = IndexedSet(
            [pts[j] for j in order], description=f"siegel q={ctx.field.q}"
        )
        # siegel index -> quadric index, and back
        self.to_quadric_idx = np.array(order, dtype=np.int64)
        back = np.empty_like(self.to_quadric_idx)
        back[self.to_quadric_idx] = np.arange(len(order))
        self.from_quadric_idx = back

    @property
    def prime(self) -> int:
        return self.ctx.field.p

    @property
    def size(self) -> int:
        return self.points.size

    def kernel(self, x: SiegelPoint, y: SiegelPoint) -> Cyclotomic:
        return self.ctx.kloosterman(kernel_argument(x, y))

    def fourier(self, f: FunctionOnSet) -> FunctionOnSet:
        """F(f)(w1, w2) = q^-4 sum f(v1, v2) Kl(omega(v1,w2) + omega(w1,v2))."""
        if f.set is not self.points:
            raise ValueError("function not on this Siegel enumeration")
        planes, den = f.to_planes()
        qplanes = planes[self.to_quadric_idx]
        out = self.quadric.raw_transform_planes(qplanes[:, None, :])[:, 0, :]
        out = out[self.from_quadric_idx]
        return FunctionOnSet.from_planes(
            self.points, self.prime, out, den * self.ctx.field.q**4
        )

    def project_special(self, f: FunctionOnSet) -> FunctionOnSet:
        """Zero-average projection along the diagonal scaling orbits."""
        planes, den = f.to_planes()
        qplanes = planes[self.to_quadric_idx]
        out, dd = self.quadric.project_special_planes(qplanes[:, None, :], den)
        return FunctionOnSet.from_planes(
            self.points, self.prime, out[self.from_quadric_idx][:, 0, :], dd
        )

    def action(self, g: RectMatrix, m: RectMatrix, f: FunctionOnSet) -> FunctionOnSet:
        """((g, m) f)(x) = f(g^-1 x m): left Sp4, right 2x2 Levi."""
        _require_symplectic(g)
        if m.det().is_zero():
            raise ValueError("Levi element must be invertible")
        ginv = g.inverse()
        vals = []
        for pt in f.set:
            cols = RectMatrix(
                g.spec, 4, 2, [e for pair in zip(pt.v1, pt.v2) for e in pair]
            )
            moved = ginv @ cols @ m
            vals.append(f(SiegelPoint(moved.col(0), moved.col(1), check=False)))
        return FunctionOnSet(f.set, f.prime, vals)

    def action_op(self, g: RectMatrix, m: RectMatrix, f: FunctionOnSet) -> FunctionOnSet:
        """Compatible opposite-model action: Levi acts by the lower block."""
        _require_symplectic(g)
        det = m.det()
        if det.is_zero():
            raise ValueError("Levi element must be invertible")
        mop = m * det.inverse()
        ginv = g.inverse()
        vals = []
        for pt in f.set:
            cols = RectMatrix(
                g.spec, 4, 2, [e for pair in zip(pt.v1, pt.v2) for e in pair]
            )
            moved = ginv @ cols @ mop
            vals.append(f(SiegelPoint(moved.col(0), moved.col(1), check=False)))
        return FunctionOnSet(f.set, f.prime, vals)
