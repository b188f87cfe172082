"""The symplectic Fourier transform on the affine plane A^2(F_q).

The plane models both coset spaces of SL2 by its opposite unipotents:
a matrix maps to its first column (a, c) on one side, and to the pair
(b, d) carrying the first row (d, -b) of the inverse on the other.  The
transform F(f)(b, d) = q^-1 sum_(a,c) f(a, c) psi(ad - bc) is involutive
on every function, with no restriction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from . import engine
from .characters import CharacterContext
from .fields import FieldElement, FieldSpec
from .funcspace import FunctionOnSet, IndexedSet, KernelOperator
from .matrices import RectMatrix
from .scalars import Cyclotomic


class PlanePoint:
    """Point of A^2, coordinates (a, c)."""

    __slots__ = ("a", "c")

    def __init__(self, a: FieldElement, c: FieldElement):
        self.a = a
        self.c = c

    def __eq__(self, other):
        return isinstance(other, PlanePoint) and (self.a, self.c) == (other.a, other.c)

    def __hash__(self):
        return hash((self.a, self.c))

    def __repr__(self):
        return f"({self.a},{self.c})"


def plane_set(field: FieldSpec) -> IndexedSet:
    els = field.elements()
    pts = [PlanePoint(x, y) for x, y in itertools.product(els, els)]
    return IndexedSet(pts, description=f"plane q={field.q}")


def _require_unimodular(g: RectMatrix) -> None:
    if (g.rows, g.cols) != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if g.det() != g.spec.one():
        raise ValueError("matrix is not unimodular (det != 1)")


def sl2_pairing(g: RectMatrix, h: RectMatrix) -> FieldElement:
    """a d' - c b', the (1,1) entry of h^-1 g; defined for unimodular g, h."""
    _require_unimodular(g)
    _require_unimodular(h)
    return g[0, 0] * h[1, 1] - g[1, 0] * h[0, 1]


def sl2_model(g: RectMatrix) -> PlanePoint:
    """First column of g: the coset coordinate on the source side."""
    _require_unimodular(g)
    return PlanePoint(g[0, 0], g[1, 0])


def sl2_model_op(h: RectMatrix) -> PlanePoint:
    """Output coordinates (b, d); the stored pair corresponds to the
    covector (d, -b) = first row of h^-1."""
    _require_unimodular(h)
    return PlanePoint(h[0, 1], h[1, 1])


def sl2_kernel(ctx: CharacterContext, x: PlanePoint, y: PlanePoint) -> Cyclotomic:
    """psi(a d - b c) for input x = (a, c) and output y = (b, d)."""
    return ctx.psi(x.a * y.c - y.a * x.c)


def kernel_operator(ctx: CharacterContext, iset: IndexedSet) -> KernelOperator:
    q = ctx.field.q
    return KernelOperator(
        iset, iset, lambda x, y: sl2_kernel(ctx, x, y), Fraction(1, q)
    )


def sl2_fourier(ctx: CharacterContext, f: FunctionOnSet) -> FunctionOnSet:
    """F(f)(b, d) = q^-1 sum_(a,c) f(a, c) psi(ad - bc), exact."""
    field = ctx.field
    q, p = field.q, field.p
    planes, den = f.to_planes()
    n = f.set.size
    if n != q * q:
        raise ValueError("function is not on the full plane enumeration")
    # Argument encodings of x.a * y.c - y.a * x.c over the lex enumeration;
    # psi_exponents folds in any twist.
    t = field.tables()
    codes = np.arange(n)
    A, C = codes // q, codes % q
    m1 = t["mul"][A[:, None], C[None, :]]
    m2 = t["neg"][t["mul"][A[None, :], C[:, None]]]
    args = t["add"][m1, m2]
    exps = np.asarray(ctx.psi_exponents)[args]
    work = engine.expand_planes(planes, p).astype(np.int64)
    out = np.zeros_like(work)
    for s in range(p):
        mask = (exps == s)
        if not mask.any():
            continue
        out += engine.roll_planes(mask.T.astype(np.int64) @ work, s)
    out = engine.reduce_planes(out)
    return FunctionOnSet.from_planes(f.set, p, out, den * q)


def sl2_action(g: RectMatrix, f: FunctionOnSet) -> FunctionOnSet:
    """(g . f)(x) = f(g^-1 x) on column vectors."""
    _require_unimodular(g)
    ginv = g.inverse()
    vals = []
    for pt in f.set:
        pre = PlanePoint(
            ginv[0, 0] * pt.a + ginv[0, 1] * pt.c,
            ginv[1, 0] * pt.a + ginv[1, 1] * pt.c,
        )
        vals.append(f(pre))
    return FunctionOnSet(f.set, f.prime, vals)


def torus_action(t: FieldElement, f: FunctionOnSet) -> FunctionOnSet:
    """(t . f)(x) = f(t x): the right torus action scales the coordinate pair."""
    if t.is_zero():
        raise ValueError("torus element must be a unit")
    vals = [f(PlanePoint(t * pt.a, t * pt.c)) for pt in f.set]
    return FunctionOnSet(f.set, f.prime, vals)
