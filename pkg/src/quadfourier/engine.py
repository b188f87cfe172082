"""Exact vectorized core for the transform hot loops.

Cyclotomic-valued functions are carried as integer numpy "plane" arrays:
shape (..., p) holding coefficients of 1, zeta, ..., zeta^(p-1) in the
*unreduced* representation (reduction by the minimal polynomial happens
once at the end via `reduce_planes`).  Multiplying by a root zeta^s is a
cyclic roll of the last axis, so character sums become 0/1 matrix
products, which numpy evaluates exactly:

  - in float64 (BLAS) whenever a proven magnitude bound stays below 2^52,
  - in object (python int) arrays otherwise.

All quantities remain integers throughout; rational scales are tracked
separately by callers as a single denominator.
"""

from __future__ import annotations

import numpy as np

from .fields import FieldSpec

EXACT_FLOAT_BOUND = 2**52


def reduce_planes(arr: np.ndarray) -> np.ndarray:
    """(..., p) unreduced -> (..., p-1) canonical power-basis coefficients."""
    return (arr[..., :-1] - arr[..., -1:]).copy()


def expand_planes(arr: np.ndarray, p: int) -> np.ndarray:
    """(..., p-1) reduced -> (..., p) with a zero top plane."""
    pad = [(0, 0)] * (arr.ndim - 1) + [(0, 1)]
    return np.pad(arr, pad)


def roll_planes(arr: np.ndarray, s: int) -> np.ndarray:
    """Multiply by zeta^s in the unreduced representation."""
    s %= arr.shape[-1]
    return arr if s == 0 else np.roll(arr, s, axis=-1)


def dot_enc_matrix(field: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Encodings of the F_q dot products <A[i], B[j]>.

    A: (n, k) and B: (m, k) encoding arrays; returns (n, m) int16.
    """
    if field.m == 1:
        p = field.p
        prod = (A.astype(np.int64) @ B.astype(np.int64).T) % p
        return prod.astype(np.int16)
    t = field.tables()
    add, mul = t["add"], t["mul"]
    acc = np.zeros((A.shape[0], B.shape[0]), dtype=np.int16)
    for i in range(A.shape[1]):
        term = mul[A[:, i][:, None], B[:, i][None, :]]
        acc = add[acc, term]
    return acc


def scale_enc_vectors(field: FieldSpec, lam_enc: int, V: np.ndarray) -> np.ndarray:
    """Coordinatewise scalar multiplication on encoding arrays."""
    return field.tables()["mul"][lam_enc][V]


def _joint_dft_matrix(field: FieldSpec) -> np.ndarray:
    """(q*p, q*p) 0/1 matrix contracting one coordinate axis jointly with
    the plane axis: out[w, j'] = sum_{b, j} C[w*p+j', b*p+j] in[b, j]
    where j' = j + Tr(w*b) mod p.  Cached on the spec's table dict."""
    t = field.tables()
    if "_joint_dft" not in t:
        q, p = field.q, field.p
        E = t["trace"][t["mul"]]  # (q, q) exponents
        C = np.zeros((q * p, q * p), dtype=np.float64)
        for w in range(q):
            for b in range(q):
                s = int(E[w, b])
                for j in range(p):
                    C[w * p + (j + s) % p, b * p + j] = 1.0
        t["_joint_dft"] = C
    return t["_joint_dft"]


def additive_dft(field: FieldSpec, arr: np.ndarray, naxes: int) -> np.ndarray:
    """Character sum over F_q^naxes: out[w] = sum_b psi(<b, w>) arr[b].

    arr: (q^naxes, B, p) int64 plane array, first axis in encoding order
    with coordinate 0 most significant.  Exact: runs in float64 while the
    proven magnitude bound fits the exact-integer window, else in object
    (python int) arrays.
    """
    q, p = field.q, field.p
    bound = int(np.abs(arr).max(initial=0)) * q**naxes
    use_float = bound <= EXACT_FLOAT_BOUND
    C = _joint_dft_matrix(field)
    if not use_float:
        C = C.astype(object)
    B = arr.shape[1]
    work = (arr.astype(np.float64) if use_float else arr.astype(object)).reshape(
        (q,) * naxes + (B, p)
    )
    for axis in range(naxes):
        moved = np.moveaxis(work, axis, -2)  # (..., B, q, p)
        shape = moved.shape
        flat = np.ascontiguousarray(moved).reshape(-1, q * p)
        flat = flat @ C.T
        work = np.moveaxis(flat.reshape(shape), -2, axis)
    work = np.ascontiguousarray(work).reshape(q**naxes, B, p)
    if use_float:
        assert np.abs(work).max(initial=0) <= EXACT_FLOAT_BOUND
        return np.rint(work).astype(np.int64)
    return work


def lift_to_ambient(
    amb_size: int, amb_idx: np.ndarray, planes: np.ndarray, p: int
) -> np.ndarray:
    """Scatter (n, B, p-1)-reduced planes to (amb_size, B, p) unreduced."""
    n, B = planes.shape[0], planes.shape[1]
    out = np.zeros((amb_size, B, p), dtype=np.int64)
    out[amb_idx, :, : p - 1] = planes
    return out


def eval_kloosterman(
    ghat: np.ndarray, eval_idx: np.ndarray, unit_exps: np.ndarray
) -> np.ndarray:
    """Recombine an ambient character sum into Kloosterman-kernel values.

    out[y] = sum_t zeta^unit_exps[t] * ghat[eval_idx[t, y]], unreduced planes.
    """
    n = eval_idx.shape[1]
    out = np.zeros((n,) + ghat.shape[1:], dtype=np.int64)
    for t in range(eval_idx.shape[0]):
        out += roll_planes(ghat[eval_idx[t]], int(unit_exps[t]))
    return out


def planes_equal(a: np.ndarray, da: int, b: np.ndarray, db: int) -> bool:
    """Exact equality of plane arrays with denominators da, db.

    Accepts unreduced or reduced inputs of matching leading shape.
    """
    p_a, p_b = a.shape[-1], b.shape[-1]
    if p_a == p_b + 1:
        a = reduce_planes(a)
    elif p_b == p_a + 1:
        b = reduce_planes(b)
    return bool(np.array_equal(np.asarray(a, dtype=object) * db,
                               np.asarray(b, dtype=object) * da))


def max_abs(arr: np.ndarray) -> int:
    return int(np.abs(arr).max(initial=0))
