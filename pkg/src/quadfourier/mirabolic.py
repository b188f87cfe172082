"""The (n-1)+1 block parabolic of SL_n: full matrix-space models.

Both coset spaces are entire matrix spaces (Mat_{n,n-1} and Mat_{n-1,n}),
the Levi-monoid pairing is plain matrix multiplication (M, N) -> NM, and
the transform F(f)(N) = q^(-(n^2-n)/2) sum_M f(M) psi(tr(NM)) is an
ordinary vector-space Fourier transform: involutive on all functions.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import engine
from .characters import CharacterContext
from .funcspace import FunctionOnSet, IndexedSet, KernelOperator
from .matrices import RectMatrix
from .scalars import Cyclotomic


def matrix_space(spec, rows: int, cols: int) -> IndexedSet:
    """All rows x cols matrices over F_q, ordered by row-major radix encoding."""
    q = spec.q
    size = q ** (rows * cols)
    els = spec.elements()
    pts = []
    for code in range(size):
        digits = []
        c = code
        for _ in range(rows * cols):
            digits.append(c % q)
            c //= q
        digits.reverse()  # entry (0,0) is the most significant digit
        pts.append(RectMatrix(spec, rows, cols, [els[d] for d in digits]))
    return IndexedSet(pts, description=f"Mat_{rows}x{cols}(F_{q})")


def monoid_pairing(M: RectMatrix, N: RectMatrix) -> RectMatrix:
    """Pairing of opposite models into the Levi monoid Mat_{n-1}: (M, N) -> NM."""
    if M.cols + 1 != M.rows or (N.rows, N.cols) != (M.cols, M.rows):
        raise ValueError("shape mismatch: need M in Mat_{n,n-1}, N in Mat_{n-1,n}")
    return N @ M


class MirabolicSpace:
    """Cached enumerations and index maps for one (n, q)."""

    def __init__(self, ctx: CharacterContext, n: int, max_points: int | None = None):
        if n < 2:
            raise ValueError("n must be at least 2")
        q = ctx.field.q
        size = q ** (n * (n - 1))
        budget = 20000 if max_points is None else max_points
        if size > budget:
            raise ValueError(
                f"Mat model for n={n}, q={q} has {size} points, over the budget "
                f"{budget}; pass a larger max_points to proceed"
            )
        self.ctx = ctx
        self.n = n
        self.dom = matrix_space(ctx.field, n, n - 1)
        self.cod = matrix_space(ctx.field, n - 1, n)
        # Transpose permutation: position of flatten(X^T) in the radix order
        # equals the radix code of X^T; pairing tr(NM) = <vec(M), vec(N^T)>.
        self.cod_eval = np.array(
            [N.transpose().enc() for N in self.cod], dtype=np.int64
        )
        # The reverse direction carries the inverse character psi(-tr(NM)),
        # which is what makes the two directions compose to the identity
        # (cf. the second application of the plane formula at n = 2).
        self.dom_eval = np.array(
            [(-M).transpose().enc() for M in self.dom], dtype=np.int64
        )

    @property
    def scale(self) -> Fraction:
        n, q = self.n, self.ctx.field.q
        return Fraction(1, q ** ((n * n - n) // 2))


def _vector_fourier(ctx, in_set, out_set, eval_idx, f, k, den_factor):
    planes, den = f.to_planes()
    p = ctx.field.p
    lifted = engine.expand_planes(planes, p)[:, None, :].astype(np.int64)
    ghat = engine.additive_dft(ctx.field, lifted, k)
    out = engine.reduce_planes(ghat[eval_idx, 0, :])
    return FunctionOnSet.from_planes(out_set, p, out, den * den_factor)


def mirabolic_fourier(space: MirabolicSpace, f: FunctionOnSet) -> FunctionOnSet:
    """F(f)(N) = q^(-(n^2-n)/2) sum_M f(M) psi(tr(NM))."""
    if f.set is not space.dom:
        raise ValueError("function is not on the Mat_{n,n-1} model")
    if space.ctx.twist is not None:
        return kernel_operator(space).apply(f)
    n, q = space.n, space.ctx.field.q
    return _vector_fourier(
        space.ctx,
        space.dom,
        space.cod,
        space.cod_eval,
        f,
        n * (n - 1),
        q ** ((n * n - n) // 2),
    )


def mirabolic_fourier_op(space: MirabolicSpace, f: FunctionOnSet) -> FunctionOnSet:
    """The opposite-direction transform, kernel psi(-tr(NM))."""
    if f.set is not space.cod:
        raise ValueError("function is not on the Mat_{n-1,n} model")
    if space.ctx.twist is not None:
        return kernel_operator_op(space).apply(f)
    n, q = space.n, space.ctx.field.q
    return _vector_fourier(
        space.ctx,
        space.cod,
        space.dom,
        space.dom_eval,
        f,
        n * (n - 1),
        q ** ((n * n - n) // 2),
    )


def kernel_operator(space: MirabolicSpace) -> KernelOperator:
    ctx = space.ctx
    return KernelOperator(
        space.dom,
        space.cod,
        lambda M, N: ctx.psi((N @ M).trace()),
        space.scale,
    )


def kernel_operator_op(space: MirabolicSpace) -> KernelOperator:
    ctx = space.ctx
    return KernelOperator(
        space.cod,
        space.dom,
        lambda N, M: ctx.psi(-((N @ M).trace())),
        space.scale,
    )


def mirabolic_action(
    g: RectMatrix, m: RectMatrix, f: FunctionOnSet
) -> FunctionOnSet:
    """(g, m) . f (x) = f(g^-1 x m) on the Mat_{n,n-1} model."""
    if g.det() != g.spec.one():
        raise ValueError("g must be unimodular")
    if m.det().is_zero():
        raise ValueError("Levi element must be invertible")
    ginv = g.inverse()
    vals = [f(ginv @ x @ m) for x in f.set]
    return FunctionOnSet(f.set, f.prime, vals)


def mirabolic_action_op(
    g: RectMatrix, m: RectMatrix, f: FunctionOnSet
) -> FunctionOnSet:
    """Compatible action on the opposite model: (g, m) . h (y) = h(m^-1 y g)."""
    if g.det() != g.spec.one():
        raise ValueError("g must be unimodular")
    minv = m.inverse()
    vals = [f(minv @ y @ g) for y in f.set]
    return FunctionOnSet(f.set, f.prime, vals)


def model_of(g: RectMatrix) -> RectMatrix:
    """Coset coordinate of g: its first n-1 columns."""
    n = g.rows
    return RectMatrix(
        g.spec, n, n - 1, [g[i, j] for i in range(n) for j in range(n - 1)]
    )


def model_op_of(g: RectMatrix) -> RectMatrix:
    """Opposite coset coordinate: first n-1 rows of g^-1."""
    n = g.rows
    ginv = g.inverse()
    return RectMatrix(
        g.spec, n - 1, n, [ginv[i, j] for i in range(n - 1) for j in range(n)]
    )
