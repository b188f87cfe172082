"""SL3 with opposite and adjacent flag cosets on one quadric model.

The coset space maps to the d=3 quadric cone via g -> (column 1 of g,
row 3 of g^-1); the adjacent-model transforms act fiberwise on the
rank-2 planes u ⊥ v_dual with the symplectic kernel
psi((u x v) / v_dual), where the ratio of two proportional (co)vectors
is taken at the first nonzero coordinate of the reference.  Chaining
vec/covec transforms realizes an S3 action on the restricted space S'
(zero averages under vector-slot, covector-slot, and diagonal scaling),
whose longest element is the q^-3-normalized Kloosterman transform.

All four flag models of one group element live on the single quadric
enumeration; only the slot being transformed changes.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

import numpy as np
from scipy import sparse

from . import engine
from .characters import CharacterContext
from .fields import FieldElement
from .funcspace import FunctionOnSet
from .matrices import RectMatrix
from .quadric import QuadricPoint, QuadricSet, fourier_raw

WORD_LETTERS = {"s1": "vec", "s2": "covec", 1: "vec", 2: "covec"}


def cross(u, v) -> tuple:
    """Classical cross product with orientation e1^e2^e3 -> 1."""
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def covector_ratio(w, ref) -> FieldElement:
    """The unique lambda with w = lambda * ref (0 when w = 0).

    Computed at the first nonzero coordinate of ref; a non-proportional w
    signals a caller bug, since both arguments should annihilate a common
    2-space.
    """
    pivot = next((i for i, c in enumerate(ref) if not c.is_zero()), None)
    if pivot is None:
        raise ValueError("ratio against zero covector")
    lam = w[pivot] / ref[pivot]
    if any(wi != lam * ri for wi, ri in zip(w, ref)):
        raise ValueError("non-proportional ratio")
    return lam


def _require_sl3(g: RectMatrix) -> None:
    if (g.rows, g.cols) != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    if g.det() != g.spec.one():
        raise ValueError("matrix is not in SL3 (det != 1)")


def sl3_model(g: RectMatrix) -> QuadricPoint:
    """(column 1 of g, row 3 of g^-1); the row is cross(col 1, col 2)."""
    _require_sl3(g)
    return QuadricPoint(g.col(0), cross(g.col(0), g.col(1)))


def sl3_model_op(g: RectMatrix) -> QuadricPoint:
    """(column 3 of g, row 1 of g^-1); the row is cross(col 2, col 3)."""
    _require_sl3(g)
    return QuadricPoint(g.col(2), cross(g.col(1), g.col(2)))


def monoid_pairing(x: QuadricPoint, y: QuadricPoint) -> tuple:
    """(<w, v_dual>, <v, w_dual>): the two corner-minor invariants of h^-1 g."""
    from .quadric import dot

    return (dot(y.u, x.u_dual), dot(x.u, y.u_dual))


def model_action_point(g: RectMatrix, pt: QuadricPoint) -> QuadricPoint:
    """g . (v, v_dual) = (g v, v_dual o g^-1)."""
    _require_sl3(g)
    ginv = g.inverse()
    v = tuple(
        g[i, 0] * pt.u[0] + g[i, 1] * pt.u[1] + g[i, 2] * pt.u[2] for i in range(3)
    )
    vd = tuple(
        pt.u_dual[0] * ginv[0, j] + pt.u_dual[1] * ginv[1, j] + pt.u_dual[2] * ginv[2, j]
        for j in range(3)
    )
    return QuadricPoint(v, vd)


class Sl3Space:
    """Cached d=3 quadric model with fiber transforms and projectors."""

    def __init__(self, ctx: CharacterContext, max_points: int | None = None):
        self.ctx = ctx
        self.quadric = QuadricSet(3, ctx, max_points=max_points)
        qset = self.quadric
        field = ctx.field
        q = field.q
        qd = q**3
        n = qset.size
        mul = field.tables()["mul"]
        qpow = qset._qpow

        # Slot-wise scaling index maps (diagonal scaling lives on qset).
        self.scaled_vec = np.empty((q - 1, n), dtype=np.int64)
        self.scaled_covec = np.empty((q - 1, n), dtype=np.int64)
        for t in range(1, q):
            su = mul[t][qset.U].astype(np.int64) @ qpow
            sd = mul[t][qset.Udual].astype(np.int64) @ qpow
            self.scaled_vec[t - 1] = qset.point_lookup[su * qd + qset.b_idx]
            self.scaled_covec[t - 1] = qset.point_lookup[qset.a_idx * qd + sd]

        # Fibers: point indices grouped by the untouched slot's lex index.
        by_covec = defaultdict(list)
        by_vec = defaultdict(list)
        for j in range(n):
            by_covec[int(qset.b_idx[j])].append(j)
            by_vec[int(qset.a_idx[j])].append(j)
        self._fibers_covec = {k: np.array(v) for k, v in by_covec.items()}
        self._fibers_vec = {k: np.array(v) for k, v in by_vec.items()}

        self._ops = {}
        self._triple = None

    # -- basic views ---------------------------------------------------------

    @property
    def points(self):
        return self.quadric.points

    @property
    def prime(self) -> int:
        return self.ctx.field.p

    def _decode_vec(self, enc_row) -> tuple:
        els = self.ctx.field.elements()
        return tuple(els[c] for c in enc_row)

    # -- sparse fiber operators ----------------------------------------------

    def _fiber_operator(self, kind: str) -> sparse.csr_matrix:
        """Joint (n*p, n*p) csr: the raw transform acting on (point, plane)
        pairs, with each zeta^s entry realized as a plane shift by s."""
        if kind in self._ops:
            return self._ops[kind]
        qset = self.quadric
        psi_exp = np.asarray(self.ctx.psi_exponents)
        p = self.prime
        n = qset.size
        rows, cols, exps = [], [], []
        fibers = self._fibers_covec if kind == "vec" else self._fibers_vec
        slot = qset.U if kind == "vec" else qset.Udual
        ref_slot = qset.Udual if kind == "vec" else qset.U
        for ref_lex, members in fibers.items():
            if ref_lex == 0:
                continue  # reference slot zero: extended by zero
            ref = self._decode_vec(ref_slot[members[0]])
            vecs = [self._decode_vec(slot[j]) for j in members]
            for ji, ui in zip(members, vecs):
                for jo, uo in zip(members, vecs):
                    lam = covector_ratio(cross(ui, uo), ref)
                    rows.append(jo)
                    cols.append(ji)
                    exps.append(int(psi_exp[lam.enc]))
        rows = np.array(rows, dtype=np.int64)
        cols = np.array(cols, dtype=np.int64)
        exps = np.array(exps, dtype=np.int64)
        j = np.arange(p, dtype=np.int64)
        big_rows = (rows[:, None] * p + (j[None, :] + exps[:, None]) % p).ravel()
        big_cols = (cols[:, None] * p + j[None, :]).ravel()
        joint = sparse.csr_matrix(
            (np.ones(len(big_rows), dtype=np.int64), (big_rows, big_cols)),
            shape=(n * p, n * p),
        )
        self._ops[kind] = joint
        return joint

    def raw_planes(self, kind: str, planes: np.ndarray) -> np.ndarray:
        """Unnormalized fiber transform on an (n, B, p) plane batch."""
        n, B, p = planes.shape
        joint = self._fiber_operator(kind)
        flat = np.ascontiguousarray(planes.transpose(0, 2, 1)).reshape(n * p, B)
        out = joint @ flat
        return np.ascontiguousarray(out.reshape(n, p, B).transpose(0, 2, 1))

    # -- restricted space ------------------------------------------------------

    def _slot_orbit_sums(self, planes: np.ndarray) -> list:
        q = self.ctx.field.q
        sums = []
        for idx in (self.scaled_vec, self.scaled_covec, self.quadric.scaled_idx):
            acc = planes[idx[0]].copy()
            for t in range(1, q - 1):
                acc += planes[idx[t]]
            sums.append(acc)
        return sums

    def project_restricted_planes(
        self, planes: np.ndarray, den: int
    ) -> tuple[np.ndarray, int]:
        q = self.ctx.field.q
        for idx in (self.scaled_vec, self.scaled_covec, self.quadric.scaled_idx):
            acc = planes[idx[0]].copy()
            for t in range(1, q - 1):
                acc += planes[idx[t]]
            planes = (q - 1) * planes - acc
            den *= q - 1
        return planes, den

    def is_restricted_planes(self, planes: np.ndarray) -> bool:
        # Reduce first: unreduced planes can express zero in non-canonical form.
        if planes.shape[-1] == self.prime:
            planes = engine.reduce_planes(planes)
        return all(not s.any() for s in self._slot_orbit_sums(planes))

    # -- public FunctionOnSet operations ---------------------------------------

    def project_restricted(self, f: FunctionOnSet) -> FunctionOnSet:
        planes, den = f.to_planes()
        out, dd = self.project_restricted_planes(planes[:, None, :], den)
        return FunctionOnSet.from_planes(self.points, self.prime, out[:, 0, :], dd)

    def is_restricted(self, f: FunctionOnSet) -> bool:
        planes, _ = f.to_planes()
        return self.is_restricted_planes(planes[:, None, :])

    def _gate(self, f: FunctionOnSet) -> tuple[np.ndarray, int]:
        if f.set is not self.points:
            raise ValueError("function not on this SL3 model enumeration")
        planes, den = f.to_planes()
        if not self.is_restricted_planes(planes[:, None, :]):
            raise ValueError("input outside restricted space")
        return planes, den

    def transform_vec(self, f: FunctionOnSet) -> FunctionOnSet:
        """q^-1-normalized vector-slot transform; requires f in S'."""
        planes, den = self._gate(f)
        out = self.raw_planes("vec", engine.expand_planes(planes, self.prime)[:, None, :])
        return FunctionOnSet.from_planes(
            self.points, self.prime, out[:, 0, :], den * self.ctx.field.q
        )

    def transform_covec(self, f: FunctionOnSet) -> FunctionOnSet:
        planes, den = self._gate(f)
        out = self.raw_planes(
            "covec", engine.expand_planes(planes, self.prime)[:, None, :]
        )
        return FunctionOnSet.from_planes(
            self.points, self.prime, out[:, 0, :], den * self.ctx.field.q
        )

    def kloosterman(self, f: FunctionOnSet) -> FunctionOnSet:
        """q^-3 times the raw quadric Kloosterman transform."""
        out = fourier_raw(self.quadric, f)
        return out.scale(Fraction(1, self.ctx.field.q**3))

    def weyl_word(self, word, f: FunctionOnSet) -> FunctionOnSet:
        """Apply the alternating chain for a word over {s1, s2}."""
        kinds = []
        for letter in word:
            if letter not in WORD_LETTERS:
                raise ValueError(f"invalid Weyl letter: {letter!r}")
            kinds.append(WORD_LETTERS[letter])
        planes, den = self._gate(f)
        work = engine.expand_planes(planes, self.prime)[:, None, :]
        for kind in kinds:
            work = self.raw_planes(kind, work)
            den *= self.ctx.field.q
        return FunctionOnSet.from_planes(self.points, self.prime, work[:, 0, :], den)

    def composite_triple(self, f: FunctionOnSet) -> FunctionOnSet:
        """Direct triple-sum composite, q^-3 normalized; requires f in S'."""
        planes, den = self._gate(f)
        T = self.triple_matrix()
        p = self.prime
        work = engine.expand_planes(planes, p).astype(np.int64)
        out = np.zeros_like(work)
        for k1 in range(p):
            Tk = T[:, :, k1].astype(np.int64)
            if not Tk.any():
                continue
            out += engine.roll_planes(Tk.T @ work, k1)
        return FunctionOnSet.from_planes(
            self.points, self.prime, out, den * self.ctx.field.q**3
        )

    # -- the triple-sum operator matrix ----------------------------------------

    def triple_matrix(self) -> np.ndarray:
        """Unnormalized triple-sum kernel as counts: T[in, out, s].

        T[x, y, s] counts middle vectors c2 contributing zeta^s to the
        coefficient of f(x) in the composite at y.  Inputs x = (c1, r3),
        outputs y = (c3, r1); both covectors nonzero, c2 runs over the
        nonzero annihilator of span(r3, r1).  Ratios here skip the
        proportionality re-check (it holds identically on these domains);
        the checked `covector_ratio` backs the public transforms.
        """
        if self._triple is not None:
            return self._triple
        qset = self.quadric
        field = self.ctx.field
        q, p = field.q, self.prime
        n = qset.size
        t = field.tables()
        mul, sub, inv = t["mul"], t["sub"], t["inv"]
        psi_exp = np.asarray(self.ctx.psi_exponents)
        T = np.zeros((n, n, p), dtype=np.int16)

        def cross_rows(A, b):
            # cross(row, b) for each row of A; all arguments are encodings
            return np.stack(
                [
                    sub[mul[A[:, 1], b[2]], mul[A[:, 2], b[1]]],
                    sub[mul[A[:, 2], b[0]], mul[A[:, 0], b[2]]],
                    sub[mul[A[:, 0], b[1]], mul[A[:, 1], b[0]]],
                ],
                axis=1,
            )

        def cross_fixed(b, A):
            # cross(b, row) for each row of A
            return np.stack(
                [
                    sub[mul[b[1], A[:, 2]], mul[b[2], A[:, 1]]],
                    sub[mul[b[2], A[:, 0]], mul[b[0], A[:, 2]]],
                    sub[mul[b[0], A[:, 1]], mul[b[1], A[:, 0]]],
                ],
                axis=1,
            )

        fibers = []
        for lex, members in self._fibers_covec.items():
            if lex == 0:
                continue
            ref = qset.Udual[members[0]].astype(np.int64)
            pivot = int(np.nonzero(ref)[0][0])
            fibers.append(
                (members, qset.U[members].astype(np.int64), ref, pivot)
            )

        for in_members, Uin, r3, piv3 in fibers:
            inv3 = int(inv[r3[piv3]])
            ii = np.arange(len(in_members))[:, None]
            for out_members, Uout, r1, piv1 in fibers:
                inv1 = int(inv[r1[piv1]])
                r31 = cross_rows(r3[None, :], r1)[0]
                if r31.any():
                    c2s = np.stack([mul[m][r31] for m in range(1, q)]).astype(np.int64)
                else:
                    keep = qset.a_idx[out_members] != 0
                    c2s = Uout[keep]
                block = np.zeros((len(in_members), len(out_members), p), dtype=np.int16)
                oo = np.arange(len(out_members))[None, :]
                for c2 in c2s:
                    piv2 = int(np.nonzero(c2)[0][0])
                    e2 = int(psi_exp[mul[r31[piv2], inv[c2[piv2]]]])
                    e1 = psi_exp[mul[cross_rows(Uin, c2)[:, piv3], inv3]]
                    e3 = psi_exp[mul[cross_fixed(c2, Uout)[:, piv1], inv1]]
                    etot = (e1[:, None].astype(np.int64) + e3[None, :] + e2) % p
                    np.add.at(block, (ii, oo, etot), 1)
                T[np.ix_(in_members, out_members)] += block
        self._triple = T
        return T

    def restricted_dimension(self) -> int:
        """dim S' = trace of the restriction projector (exact)."""
        q = self.ctx.field.q
        n = self.quadric.size
        eye = np.arange(n)
        mats = []
        for idx in (self.scaled_vec, self.scaled_covec, self.quadric.scaled_idx):
            m = sparse.csr_matrix(
                (np.full(n, q - 1, dtype=np.int64), (eye, eye)), shape=(n, n)
            )
            for t in range(q - 1):
                m -= sparse.csr_matrix(
                    (np.ones(n, dtype=np.int64), (eye, idx[t])), shape=(n, n)
                )
            mats.append(m)
        prod = mats[0] @ mats[1] @ mats[2]
        tr = int(prod.diagonal().sum())
        assert tr % (q - 1) ** 3 == 0
        return tr // (q - 1) ** 3

    def action_permutation(self, g: RectMatrix) -> np.ndarray:
        """perm[j] = index of g . point_j under (v, v_dual) -> (gv, v_dual g^-1)."""
        _require_sl3(g)
        qset = self.quadric
        field = self.ctx.field
        t = field.tables()
        add, mul = t["add"], t["mul"]
        ginv = g.inverse()
        n = qset.size
        newU = np.zeros((n, 3), dtype=np.int16)
        newD = np.zeros((n, 3), dtype=np.int16)
        for i in range(3):
            acc = np.zeros(n, dtype=np.int16)
            for j in range(3):
                acc = add[acc, mul[g[i, j].enc][qset.U[:, j]]]
            newU[:, i] = acc
            acc = np.zeros(n, dtype=np.int16)
            for j in range(3):
                acc = add[acc, mul[ginv[j, i].enc][qset.Udual[:, j]]]
            newD[:, i] = acc
        qd = field.q**3
        lex_u = newU.astype(np.int64) @ qset._qpow
        lex_d = newD.astype(np.int64) @ qset._qpow
        perm = qset.point_lookup[lex_u * qd + lex_d]
        assert (perm >= 0).all()
        return perm
