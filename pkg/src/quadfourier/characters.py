"""The additive character psi and the Kloosterman function Kl.

psi(x) = zeta_p^Tr(x) is the standard additive character of F_q;
Kl(a) = sum over units t of psi(a/t + t).  Both are tabulated once per
context (O(q^2) build) because every transform kernel downstream is a
table lookup in a hot loop.  An optional nonzero twist b replaces psi
by psi_b(x) = psi(b*x) for robustness tests; default suites use b = 1.
"""

from __future__ import annotations

import numpy as np

from .fields import FieldElement, FieldSpec
from .scalars import Cyclotomic


class CharacterContext:
    """Immutable bundle: field, psi table, Kloosterman table."""

    __slots__ = (
        "field",
        "twist",
        "zeta",
        "psi_exponents",
        "psi_table",
        "kl_table",
        "kl_coeffs",
    )

    def __init__(self, field: FieldSpec, twist: FieldElement | None = None):
        if twist is not None:
            if twist.spec != field:
                raise ValueError("twist from a different field")
            if twist.is_zero():
                raise ValueError("twist must be nonzero (psi must stay nontrivial)")
        self.field = field
        self.twist = twist
        p = field.p
        self.zeta = Cyclotomic.root_power(p, 1)

        els = field.elements()
        if twist is None:
            exps = [x.trace() for x in els]
        else:
            exps = [(twist * x).trace() for x in els]
        self.psi_exponents = np.array(exps, dtype=np.int16)
        self.psi_table = tuple(Cyclotomic.root_power(p, e) for e in exps)
        assert self.psi_table[0] == Cyclotomic.one(p)
        assert any(v != Cyclotomic.one(p) for v in self.psi_table), "psi is trivial"

        # Kl(a) = sum_{t in units} psi(a/t + t), by direct summation.
        inv = [None] + [t.inverse() for t in els[1:]]
        kl = []
        for a in els:
            acc = Cyclotomic.zero(p)
            for i, t in enumerate(els[1:], start=1):
                acc = acc + self.psi_table[(a * inv[i] + t).enc]
            kl.append(acc)
        self.kl_table = tuple(kl)

        # Integer coefficient matrix of the table, for vectorized kernels.
        coeffs = np.zeros((field.q, p - 1), dtype=np.int64)
        for i, v in enumerate(kl):
            for j, c in enumerate(v.coeffs):
                assert c.denominator == 1
                coeffs[i, j] = c.numerator
        self.kl_coeffs = coeffs

    @property
    def prime(self) -> int:
        return self.field.p

    def psi(self, x: FieldElement) -> Cyclotomic:
        if x.spec != self.field:
            raise ValueError("psi argument from a different field")
        return self.psi_table[x.enc]

    def kloosterman(self, a: FieldElement) -> Cyclotomic:
        if a.spec != self.field:
            raise ValueError("Kloosterman argument from a different field")
        return self.kl_table[a.enc]

    def kloosterman_table(self) -> tuple:
        return self.kl_table

    def sum_over_field(self, fn) -> Cyclotomic:
        """Exact reduction sum_{x in F_q} fn(x)."""
        acc = Cyclotomic.zero(self.prime)
        for x in self.field.elements():
            acc = acc + fn(x)
        return acc

    def __repr__(self):
        tw = "" if self.twist is None else f", twist={self.twist.enc}"
        return f"CharacterContext(q={self.field.q}{tw})"
