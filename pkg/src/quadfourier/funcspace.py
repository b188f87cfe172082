"""Dense exact-valued functions on enumerated finite sets, and kernel operators.

This is the linear-algebra substrate shared by every transform: an
IndexedSet fixes a bijection point <-> index, a FunctionOnSet is a dense
vector of Cyclotomic values, and a KernelOperator applies
(op f)(y) = scale * sum_x f(x) kernel(x, y) by direct summation.  The
direct path is the definitional oracle; performance-sensitive callers use
the plane-array fast paths (see `engine`) and are tested against it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from . import engine
from .scalars import Cyclotomic


class IndexedSet:
    """Enumerated finite set with a fixed point <-> index bijection."""

    __slots__ = ("points", "index", "description")

    def __init__(self, points, description: str = ""):
        self.points = tuple(points)
        self.index = {pt: i for i, pt in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ValueError("duplicate points in enumeration")
        self.description = description

    @property
    def size(self) -> int:
        return len(self.points)

    def encode(self, point) -> int:
        return self.index[point]

    def decode(self, i: int):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __repr__(self):
        return f"IndexedSet({self.description!r}, size={self.size})"


class FunctionOnSet:
    """Dense Cyclotomic-valued function on an IndexedSet."""

    __slots__ = ("set", "prime", "values")

    def __init__(self, iset: IndexedSet, prime: int, values):
        values = tuple(values)
        if len(values) != iset.size:
            raise ValueError("value vector does not match the set size")
        self.set = iset
        self.prime = prime
        self.values = values

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, iset: IndexedSet, prime: int) -> "FunctionOnSet":
        z = Cyclotomic.zero(prime)
        return cls(iset, prime, (z,) * iset.size)

    @classmethod
    def delta(cls, iset: IndexedSet, prime: int, point) -> "FunctionOnSet":
        vals = [Cyclotomic.zero(prime)] * iset.size
        vals[iset.encode(point)] = Cyclotomic.one(prime)
        return cls(iset, prime, vals)

    @classmethod
    def constant(cls, iset: IndexedSet, value: Cyclotomic) -> "FunctionOnSet":
        return cls(iset, value.prime, (value,) * iset.size)

    # -- vector space --------------------------------------------------------

    def __add__(self, other: "FunctionOnSet") -> "FunctionOnSet":
        self._check(other)
        return FunctionOnSet(
            self.set, self.prime, (a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "FunctionOnSet") -> "FunctionOnSet":
        self._check(other)
        return FunctionOnSet(
            self.set, self.prime, (a - b for a, b in zip(self.values, other.values))
        )

    def __neg__(self):
        return FunctionOnSet(self.set, self.prime, (-a for a in self.values))

    def scale(self, factor) -> "FunctionOnSet":
        return FunctionOnSet(self.set, self.prime, (a * factor for a in self.values))

    def _check(self, other):
        if other.set is not self.set or other.prime != self.prime:
            raise ValueError("functions on different sets")

    def __call__(self, point) -> Cyclotomic:
        return self.values[self.set.encode(point)]

    def __eq__(self, other):
        return (
            isinstance(other, FunctionOnSet)
            and other.set is self.set
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.set), self.values))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    # -- plane-array bridge ----------------------------------------------------

    def to_planes(self) -> tuple[np.ndarray, int]:
        """Exact integer plane matrix (size, p-1) plus common denominator."""
        den = 1
        for v in self.values:
            for c in v.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
        out = np.zeros((self.set.size, self.prime - 1), dtype=np.int64)
        for i, v in enumerate(self.values):
            for j, c in enumerate(v.coeffs):
                out[i, j] = c.numerator * (den // c.denominator)
        return out, int(den)

    @classmethod
    def from_planes(
        cls, iset: IndexedSet, prime: int, planes: np.ndarray, den: int
    ) -> "FunctionOnSet":
        if planes.shape[-1] == prime:
            planes = engine.reduce_planes(planes)
        vals = [
            Cyclotomic(prime, [Fraction(int(c), den) for c in row]) for row in planes
        ]
        return cls(iset, prime, vals)

    def to_json_obj(self):
        """JSON form: array of coefficient arrays (as strings) keyed by index."""
        return [[str(c) for c in v.coeffs] for v in self.values]


class KernelOperator:
    """Linear operator (op f)(y) = scale * sum_x f(x) kernel(x, y)."""

    __slots__ = ("domain", "codomain", "kernel", "scale", "_chain")

    def __init__(
        self,
        domain: IndexedSet,
        codomain: IndexedSet,
        kernel: Callable,
        scale=Fraction(1),
    ):
        self.domain = domain
        self.codomain = codomain
        self.kernel = kernel
        self.scale = Fraction(scale)
        self._chain = None

    def apply(self, f: FunctionOnSet) -> FunctionOnSet:
        if f.set is not self.domain:
            raise ValueError("function not on the operator's domain")
        if self._chain is not None:
            inner, outer = self._chain
            return outer.apply(inner.apply(f))
        p = f.prime
        out = []
        for y in self.codomain:
            acc = Cyclotomic.zero(p)
            for i, x in enumerate(self.domain):
                v = f.values[i]
                if v.is_zero():
                    continue
                acc = acc + v * self.kernel(x, y)
            out.append(acc * self.scale)
        return FunctionOnSet(self.codomain, p, out)


def compose(a: KernelOperator, b: KernelOperator, materialize: bool = True):
    """Operator a o b (apply b first).

    materialize=True sums out the middle set into an explicit kernel;
    otherwise the result applies lazily (apply-then-apply).
    """
    if b.codomain is not a.domain:
        raise ValueError("operators do not chain: codomain/domain mismatch")
    if materialize:
        mid = b.codomain
        table = {}
        for x in b.domain:
            for z in a.codomain:
                acc = None
                for y in mid:
                    term = b.kernel(x, y) * a.kernel(y, z)
                    acc = term if acc is None else acc + term
                table[(x, z)] = acc
        return KernelOperator(
            b.domain, a.codomain, lambda x, z: table[(x, z)], a.scale * b.scale
        )
    op = KernelOperator(b.domain, a.codomain, None, a.scale * b.scale)
    op._chain = (b, a)
    return op


def operators_equal_on(span, a: KernelOperator, b: KernelOperator) -> bool:
    """Exact equality of two operators on every function in span."""
    return all(a.apply(f) == b.apply(f) for f in span)


def identity_operator(iset: IndexedSet, prime: int) -> KernelOperator:
    one = Cyclotomic.one(prime)
    zero = Cyclotomic.zero(prime)
    return KernelOperator(iset, iset, lambda x, y: one if x == y else zero)


def group_averaging_projector(
    iset: IndexedSet, orbit: Callable, prime: int
) -> KernelOperator:
    """P f(x) = f(x) - (1/|orbit(x)|) sum_{y in orbit(x)} f(y).

    `orbit` must be a genuine orbit map: x in orbit(x) and members share
    the same orbit (checked).  Idempotent; its image is the space of
    functions with zero average along every orbit.
    """
    orbits = {}
    for x in iset:
        orb = tuple(orbit(x))
        if not orb:
            raise ValueError("empty orbit")
        if x not in orb:
            raise ValueError("orbit(x) must contain x")
        orbits[x] = orb
    for x, orb in orbits.items():
        members = set(orb)
        for y in orb:
            if set(orbits[y]) != members:
                raise ValueError("orbit map is not a consistent partition")

    def kern(x, y):
        # apply convention: (P f)(y) = sum_x f(x) kern(x, y)
        orb = orbits[y]
        val = Fraction(1) if x == y else Fraction(0)
        if x in orb:
            val -= Fraction(1, len(orb))
        return Cyclotomic.from_rational(prime, val)

    return KernelOperator(iset, iset, kern)
