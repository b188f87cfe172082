"""The quadric cone X in V x V*, its Kloosterman kernel, and the transform.

X = {(u, u_dual) : <u, u_dual> = 0} with the diagonal scaling action of
the units.  The kernel between points x = (u, u_dual), y = (v, v_dual) is
Kl(<u, v_dual> + <v, u_dual>); the raw transform F(f)(y) = sum_x f(x) K(x, y)
squares to q^(2d) on the "special" subspace of functions whose average
along every scaling orbit vanishes.

The fast path rewrites F through the ambient space F_q^(2d): expanding
Kl(s) = sum_t psi(s t) psi(1/t) turns F into one 2d-axis character sum
(additive_dft) followed by q-1 scaled gathers.  This is an exact
rearrangement of the defining double sum; tests pin it against the
definitional KernelOperator route.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction

import numpy as np

from . import engine
from .characters import CharacterContext
from .fields import FieldElement, FieldSpec
from .funcspace import FunctionOnSet, IndexedSet, KernelOperator, group_averaging_projector
from .scalars import Cyclotomic

DEFAULT_MAX_POINTS = 20000


def point_count_formula(d: int, q: int) -> int:
    return q ** (2 * d - 1) + q**d - q ** (d - 1)


def _check_dims(d: int, q: int) -> None:
    if not 1 <= d <= 4:
        raise ValueError(f"dimension d={d} outside the supported range 1..4")
    if d == 4 and q > 5:
        raise ValueError(f"d=4 is capped at q <= 5 (got q={q})")


class QuadricPoint:
    """Point (u, u_dual) of the cone; the pairing must vanish."""

    __slots__ = ("u", "u_dual")

    def __init__(self, u, u_dual, check: bool = True):
        self.u = tuple(u)
        self.u_dual = tuple(u_dual)
        if len(self.u) != len(self.u_dual):
            raise ValueError("vector and covector dimensions differ")
        if check and not dot(self.u, self.u_dual).is_zero():
            raise ValueError("point is off the quadric: <u, u_dual> != 0")

    @property
    def d(self) -> int:
        return len(self.u)

    @property
    def spec(self) -> FieldSpec:
        return self.u[0].spec

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.u + self.u_dual)

    def scaled(self, lam: FieldElement) -> "QuadricPoint":
        return QuadricPoint(
            tuple(lam * e for e in self.u),
            tuple(lam * e for e in self.u_dual),
            check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuadricPoint)
            and self.u == other.u
            and self.u_dual == other.u_dual
        )

    def __hash__(self):
        return hash((self.u, self.u_dual))

    def __repr__(self):
        us = ",".join(str(e) for e in self.u)
        ds = ",".join(str(e) for e in self.u_dual)
        return f"(({us}),({ds}))"


def dot(a, b) -> FieldElement:
    acc = a[0].spec.zero()
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def pairing_sum(x: QuadricPoint, y: QuadricPoint) -> FieldElement:
    """<u, v_dual> + <v, u_dual>, the kernel argument; symmetric in x, y."""
    return dot(x.u, y.u_dual) + dot(y.u, x.u_dual)


class Stratum(enum.Enum):
    ORIGIN_BOTH = "origin-both"
    EQUAL_NONZERO = "equal-nonzero"
    PROPORTIONAL_DISTINCT = "proportional-distinct"
    ONE_ZERO = "one-zero"
    NON_PROP_ORTHOGONAL = "non-prop-orthogonal"
    NON_PROP_GENERIC = "non-prop-generic"


def _proportional(x: QuadricPoint, z: QuadricPoint) -> bool:
    coords_x = x.u + x.u_dual
    coords_z = z.u + z.u_dual
    pivot = next(i for i, c in enumerate(coords_x) if not c.is_zero())
    if coords_z[pivot].is_zero():
        return False
    lam = coords_z[pivot] / coords_x[pivot]
    return all(lam * cx == cz for cx, cz in zip(coords_x, coords_z))


def classify_pair(x: QuadricPoint, z: QuadricPoint) -> Stratum:
    if x.d != z.d or x.spec != z.spec:
        raise ValueError("points from different quadrics")
    xz, zz = x.is_zero(), z.is_zero()
    if xz and zz:
        return Stratum.ORIGIN_BOTH
    if xz or zz:
        return Stratum.ONE_ZERO
    if x == z:
        return Stratum.EQUAL_NONZERO
    if _proportional(x, z):
        return Stratum.PROPORTIONAL_DISTINCT
    if pairing_sum(x, z).is_zero():
        return Stratum.NON_PROP_ORTHOGONAL
    return Stratum.NON_PROP_GENERIC


def case_sum_formula(stratum: Stratum, d: int, q: int) -> Fraction:
    """Closed form of the double kernel sum per stratum."""
    if stratum is Stratum.ORIGIN_BOTH:
        v = q ** (2 * d - 1) + q**d - q ** (d - 1)
    elif stratum is Stratum.EQUAL_NONZERO:
        v = q ** (2 * d) - q ** (2 * d - 1) + q**d - q ** (d - 1)
    elif stratum is Stratum.PROPORTIONAL_DISTINCT:
        v = -(q ** (2 * d - 1)) + q**d - q ** (d - 1)
    elif stratum in (Stratum.ONE_ZERO, Stratum.NON_PROP_ORTHOGONAL):
        v = q**d - q ** (d - 1)
    elif stratum is Stratum.NON_PROP_GENERIC:
        v = -(q ** (d - 1))
    else:  # pragma: no cover
        raise ValueError(stratum)
    return Fraction(v)


class QuadricSet:
    """Enumerated X(F_q) with vectorized views and scaling-orbit structure."""

    __slots__ = (
        "d",
        "ctx",
        "field",
        "points",
        "U",
        "Udual",
        "a_idx",
        "b_idx",
        "point_lookup",
        "scaled_idx",
        "_qpow",
    )

    def __init__(self, d: int, ctx: CharacterContext, max_points: int | None = None):
        field = ctx.field
        q = field.q
        _check_dims(d, q)
        count = point_count_formula(d, q)
        budget = DEFAULT_MAX_POINTS if max_points is None else max_points
        if count > budget:
            raise ValueError(
                f"quadric (d={d}, q={q}) has {count} points, over the budget "
                f"{budget}; pass a larger max_points to proceed"
            )
        self.d = d
        self.ctx = ctx
        self.field = field

        vec_enc = np.array(
            list(itertools.product(range(q), repeat=d)), dtype=np.int16
        )
        grid = engine.dot_enc_matrix(field, vec_enc, vec_enc)
        a_idx, b_idx = np.nonzero(grid == 0)
        if len(a_idx) != count:
            raise AssertionError("point count disagrees with the closed form")
        self.a_idx = a_idx.astype(np.int64)
        self.b_idx = b_idx.astype(np.int64)
        self.U = vec_enc[a_idx]
        self.Udual = vec_enc[b_idx]

        els = field.elements()
        pts = []
        for ua, ub in zip(self.U, self.Udual):
            u = tuple(els[c] for c in ua)
            ud = tuple(els[c] for c in ub)
            pts.append(QuadricPoint(u, ud, check=False))
        self.points = IndexedSet(pts, description=f"quadric d={d} q={q}")

        qd = q**d
        amb = self.a_idx * qd + self.b_idx
        lookup = np.full(qd * qd, -1, dtype=np.int64)
        lookup[amb] = np.arange(count)
        self.point_lookup = lookup
        self._qpow = np.array([q ** (d - 1 - i) for i in range(d)], dtype=np.int64)

        # scaled_idx[t-1, j] = index of (unit_t * point_j)
        mul = field.tables()["mul"]
        scaled = np.empty((q - 1, count), dtype=np.int64)
        for t in range(1, q):
            su = mul[t][self.U].astype(np.int64) @ self._qpow
            sd = mul[t][self.Udual].astype(np.int64) @ self._qpow
            scaled[t - 1] = lookup[su * qd + sd]
        assert (scaled >= 0).all()
        self.scaled_idx = scaled

    @property
    def size(self) -> int:
        return self.points.size

    @property
    def prime(self) -> int:
        return self.field.p

    def kernel_args(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Encodings of pairing_sum(points[rows], points[cols])."""
        m1 = engine.dot_enc_matrix(self.field, self.U[rows], self.Udual[cols])
        m2 = engine.dot_enc_matrix(self.field, self.Udual[rows], self.U[cols])
        if self.field.m == 1:
            return ((m1.astype(np.int64) + m2) % self.field.p).astype(np.int16)
        return self.field.tables()["add"][m1, m2]

    # -- plane-array fast paths -------------------------------------------

    def raw_transform_planes(self, planes: np.ndarray) -> np.ndarray:
        """Apply the raw transform to a batch: (n, B, p-1) -> (n, B, p-1)."""
        field = self.field
        q, p, d = field.q, field.p, self.d
        n = self.size
        qd = q**d
        amb_idx = self.a_idx * qd + self.b_idx
        lifted = engine.lift_to_ambient(qd * qd, amb_idx, planes, p)
        ghat = engine.additive_dft(field, lifted, 2 * d)

        # Evaluation indices: ambient code of t * (u_dual | u) per point.
        c_code = self.b_idx * qd + self.a_idx
        eval_idx = c_code[self.scaled_idx]
        t = field.tables()
        twist = self.ctx.twist
        b2 = 1 if twist is None else (twist * twist).enc
        units = np.arange(1, q)
        unit_exps = t["trace"][t["mul"][b2][t["inv"][units]]]
        out = engine.eval_kloosterman(ghat, eval_idx, unit_exps)
        return engine.reduce_planes(out)

    def project_special_planes(
        self, planes: np.ndarray, den: int
    ) -> tuple[np.ndarray, int]:
        """Scaling-orbit projector on a batch; returns (planes, den*(q-1))."""
        q = self.field.q
        orbit_sum = planes[self.scaled_idx[0]].copy()
        for t in range(1, q - 1):
            orbit_sum += planes[self.scaled_idx[t]]
        return (q - 1) * planes - orbit_sum, den * (q - 1)

    def special_generator_planes(self, indices: np.ndarray) -> np.ndarray:
        """(q-1)-scaled projected deltas: columns (q-1) delta_x - sum_t delta_tx."""
        q = self.field.q
        n = self.size
        out = np.zeros((n, len(indices), self.prime - 1), dtype=np.int64)
        cols = np.arange(len(indices))
        out[indices, cols, 0] = q - 1
        for t in range(q - 1):
            np.add.at(out, (self.scaled_idx[t][indices], cols, 0), -1)
        return out


def enumerate_quadric(
    d: int, ctx: CharacterContext, max_points: int | None = None
) -> QuadricSet:
    return QuadricSet(d, ctx, max_points=max_points)


def count_points_bruteforce(d: int, field: FieldSpec) -> int:
    """Independent count: scan all q^2d pairs for vanishing pairing."""
    _check_dims(d, field.q)
    vec_enc = np.array(
        list(itertools.product(range(field.q), repeat=d)), dtype=np.int16
    )
    grid = engine.dot_enc_matrix(field, vec_enc, vec_enc)
    return int((grid == 0).sum())


def quadric_kernel(ctx: CharacterContext, x: QuadricPoint, y: QuadricPoint) -> Cyclotomic:
    """K(x, y) = Kl(<u, v_dual> + <v, u_dual>)."""
    if x.d != y.d or x.spec != y.spec:
        raise ValueError("kernel arguments from different quadrics")
    return ctx.kloosterman(pairing_sum(x, y))


def kernel_operator(qset: QuadricSet, normalized: bool = False) -> KernelOperator:
    """Definitional transform as a KernelOperator (the slow exact oracle)."""
    scale = Fraction(1, qset.field.q**qset.d) if normalized else Fraction(1)
    return KernelOperator(
        qset.points,
        qset.points,
        lambda x, y: quadric_kernel(qset.ctx, x, y),
        scale,
    )


def fourier_raw(qset: QuadricSet, f: FunctionOnSet) -> FunctionOnSet:
    """F(f)(y) = sum_x f(x) K(x, y), exact (fast path)."""
    if f.set is not qset.points:
        raise ValueError("function not on this quadric's enumeration")
    planes, den = f.to_planes()
    out = qset.raw_transform_planes(planes[:, None, :])[:, 0, :]
    return FunctionOnSet.from_planes(qset.points, qset.prime, out, den)


def fourier_normalized(qset: QuadricSet, f: FunctionOnSet) -> FunctionOnSet:
    return fourier_raw(qset, f).scale(Fraction(1, qset.field.q**qset.d))


def scaling_orbit(point: QuadricPoint):
    """The F_q^x scaling orbit through the point (contains the point)."""
    units = point.spec.units()
    seen = []
    for lam in units:
        y = point.scaled(lam)
        if y not in seen:
            seen.append(y)
    return tuple(seen)


def special_projector(qset: QuadricSet) -> KernelOperator:
    return group_averaging_projector(qset.points, scaling_orbit, qset.prime)


def project_special(qset: QuadricSet, f: FunctionOnSet) -> FunctionOnSet:
    """Projection onto functions with zero average along scaling orbits."""
    if f.set is not qset.points:
        raise ValueError("function not on this quadric's enumeration")
    planes, den = f.to_planes()
    out, new_den = qset.project_special_planes(planes[:, None, :], den)
    return FunctionOnSet.from_planes(qset.points, qset.prime, out[:, 0, :], new_den)


def double_kernel_sum(qset: QuadricSet, x: QuadricPoint, z: QuadricPoint) -> Cyclotomic:
    """Brute-force sum_y K(x, y) K(y, z), via argument bucketing (exact)."""
    ix = np.array([qset.points.encode(x)])
    iz = np.array([qset.points.encode(z)])
    all_idx = np.arange(qset.size)
    args_x = qset.kernel_args(ix, all_idx)[0]
    args_z = qset.kernel_args(all_idx, iz)[:, 0]
    q = qset.field.q
    counts = np.bincount(args_x.astype(np.int64) * q + args_z, minlength=q * q)
    kl = qset.ctx.kl_table
    acc = Cyclotomic.zero(qset.prime)
    for code in np.nonzero(counts)[0]:
        a, b = divmod(int(code), q)
        acc = acc + kl[a] * kl[b] * int(counts[code])
    return acc
