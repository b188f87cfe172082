"""Arithmetic and enumeration in F_p and F_(p^m).

Elements are polynomials over F_p modulo a monic irreducible modulus,
stored little-endian.  The canonical integer encoding
enc(x) = sum coeffs[i] * p^i is a bijection onto [0, q) and fixes the
enumeration order everywhere in the library (0 first, 1 second).

A size cap q <= 49 is enforced at construction: every downstream suite
is at least O(q^10) in the worst case, so larger fields fail fast.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

MAX_Q = 49

#: Default irreducible moduli (little-endian over F_p) for the shipped
#: extension fields: F4 = F2[x]/(x^2+x+1), F8 = F2[x]/(x^3+x+1),
#: F9 = F3[x]/(x^2+1).
DEFAULT_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n**0.5) + 1))


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        if q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n == 1:
                return p, m
            break
    raise ValueError(f"not a prime power: {q}")


def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    # Schoolbook product followed by reduction mod (modulus, p); modulus monic.
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if not c:
            continue
        prod[k] = 0
        for i in range(m):
            prod[k - m + i] = (prod[k - m + i] - c * modulus[i]) % p
    out = prod[:m]
    out += [0] * (m - len(out))
    return tuple(out)


def _poly_divmod(num: list, den: list, p: int) -> tuple[list, list]:
    num = [c % p for c in num]
    den = [c % p for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(1, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(den):
            break
        shift = len(rem) - len(den)
        factor = rem[-1] * inv_lead % p
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
    return quot, rem


def _is_irreducible(modulus: tuple, p: int) -> bool:
    """Irreducibility over F_p for deg <= 5: root check plus trial division
    by all monic polynomials of degree 2..deg//2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p != 1:
        return False
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(modulus)) % p == 0:
            return False
    for d in range(2, deg // 2 + 1):
        for code in range(p**d):
            den = [(code // p**i) % p for i in range(d)] + [1]
            _, rem = _poly_divmod(list(modulus), den, p)
            if not any(rem):
                return False
    return True


class FieldSpec:
    """Description of F_q, q = p^m, with a fixed modulus when m > 1."""

    __slots__ = ("p", "m", "modulus", "q", "_elements", "_tables")

    def __init__(self, q: int, modulus: tuple | None = None):
        p, m = factor_prime_power(q)
        if q > MAX_Q:
            raise ValueError(f"field size {q} exceeds the supported cap {MAX_Q}")
        if m == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
        else:
            if modulus is None:
                modulus = DEFAULT_MODULI.get(q)
                if modulus is None:
                    raise ValueError(
                        f"no default modulus shipped for q={q}; supply one"
                    )
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1:
                raise ValueError(
                    f"modulus must have degree {m} ({m + 1} coefficients)"
                )
            if not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is not irreducible over F_{p}")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = q
        self._elements = None
        self._tables = None

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.q}, modulus={self.modulus})"

    # -- element construction ----------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError("element from a different field")
            return value
        if isinstance(value, int):
            return self.from_enc(value % self.q)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.m:
            raise ValueError(f"need {self.m} coefficients")
        return FieldElement(self, coeffs)

    def from_enc(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"encoding {code} out of range [0, {self.q})")
        coeffs = []
        for _ in range(self.m):
            coeffs.append(code % self.p)
            code //= self.p
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.m)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.m - 1))

    def elements(self) -> tuple:
        """All q elements in canonical encoding order."""
        if self._elements is None:
            self._elements = tuple(self.from_enc(c) for c in range(self.q))
        return self._elements

    def units(self) -> tuple:
        return self.elements()[1:]

    # -- vectorized operation tables ----------------------------------------

    def tables(self) -> dict:
        """Numpy lookup tables over encodings: add, sub, mul, neg, inv, trace.

        inv[0] is 0 by convention; callers must guard zero themselves.
        """
        if self._tables is not None:
            return self._tables
        q = self.q
        els = self.elements()
        add = np.zeros((q, q), dtype=np.int16)
        mul = np.zeros((q, q), dtype=np.int16)
        for i, x in enumerate(els):
            for j, y in enumerate(els):
                add[i, j] = (x + y).enc
                mul[i, j] = (x * y).enc
        neg = np.array([(-x).enc for x in els], dtype=np.int16)
        inv = np.zeros(q, dtype=np.int16)
        for i, x in enumerate(els[1:], start=1):
            inv[i] = x.inverse().enc
        trace = np.array([x.trace() for x in els], dtype=np.int16)
        sub = add[:, neg]
        self._tables = {
            "add": add,
            "sub": sub,
            "mul": mul,
            "neg": neg,
            "inv": inv,
            "trace": trace,
        }
        return self._tables


class FieldElement:
    """Element of F_(p^m) in canonical little-endian polynomial form."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple):
        self.spec = spec
        self.coeffs = coeffs

    @property
    def enc(self) -> int:
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.spec.p + c
        return code

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise ValueError("field elements from different fields")

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElement(
            self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        if spec.m == 1:
            return FieldElement(spec, ((self.coeffs[0] * other.coeffs[0]) % spec.p,))
        return FieldElement(
            spec, _poly_mul_mod(self.coeffs, other.coeffs, spec.modulus, spec.p)
        )

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in F_q")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def trace(self) -> int:
        """Absolute trace Tr(a) = sum a^(p^i), returned as a residue in [0, p)."""
        spec = self.spec
        if spec.m == 1:
            return self.coeffs[0]
        acc = spec.zero()
        frob = self
        for _ in range(spec.m):
            acc = acc + frob
            frob = frob ** spec.p
        assert not any(acc.coeffs[1:]), "trace landed outside the prime field"
        return acc.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"FieldElement(q={self.spec.q}, enc={self.enc})"

    def __str__(self):
        if self.spec.m == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}a" if i == 1 else f"{head}a^{i}")
        return " + ".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def field(q: int, modulus: tuple | None = None) -> FieldSpec:
    """Cached FieldSpec factory; the cache keeps table reuse automatic."""
    return FieldSpec(q, modulus)


def enumerate_field(spec: FieldSpec) -> tuple:
    return spec.elements()
