"""Exact arithmetic in Q and in the cyclotomic field Q(zeta_p).

`Rational` is the stdlib Fraction: arbitrary precision, always reduced,
positive denominator, structural equality.  `Cyclotomic` represents an
element of Q(zeta_p) for a prime p as coefficients over the power basis
{1, zeta, ..., zeta^(p-2)}, reduced eagerly with the relation
zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) so that equality is plain
coefficient comparison.  For p = 2 the field is Q itself and zeta = -1.

Values are immutable and hashable; floats appear only in `to_complex`.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

Rational = Fraction

RationalLike = Fraction | int


def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise ValueError(f"not a prime: {p}")


class Cyclotomic:
    """Element of Q(zeta_p), stored as p-1 rational power-basis coefficients."""

    __slots__ = ("prime", "coeffs", "_hash")

    def __init__(self, prime: int, coeffs):
        _check_prime(prime)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != prime - 1:
            raise ValueError(
                f"need {prime - 1} coefficients for prime {prime}, got {len(coeffs)}"
            )
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, prime: int) -> "Cyclotomic":
        return cls(prime, (0,) * (prime - 1))

    @classmethod
    def one(cls, prime: int) -> "Cyclotomic":
        return cls.from_rational(prime, 1)

    @classmethod
    def from_rational(cls, prime: int, value: RationalLike) -> "Cyclotomic":
        coeffs = [Fraction(value)] + [Fraction(0)] * (prime - 2)
        return cls(prime, coeffs)

    @classmethod
    def root_power(cls, prime: int, k: int) -> "Cyclotomic":
        """zeta_p^k in canonical form, for any integer k."""
        _check_prime(prime)
        k %= prime
        coeffs = [Fraction(0)] * (prime - 1)
        if k == prime - 1:
            for i in range(prime - 1):
                coeffs[i] = Fraction(-1)
        else:
            coeffs[k] = Fraction(1)
        return cls(prime, coeffs)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.prime != self.prime:
                raise ValueError(
                    f"mixed cyclotomic primes: {self.prime} vs {other.prime}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.prime, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.prime, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.prime, (a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Cyclotomic(self.prime, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self.prime, (a * f for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.prime
        acc = [Fraction(0)] * (p - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if not b:
                    continue
                e = (i + j) % p
                prod = a * b
                if e == p - 1:
                    for k in range(p - 1):
                        acc[k] -= prod
                else:
                    acc[e] += prod
        return Cyclotomic(p, acc)

    __rmul__ = __mul__

    def scale(self, factor: RationalLike) -> "Cyclotomic":
        return self * Fraction(factor)

    def conj(self) -> "Cyclotomic":
        """Complex conjugation, the Galois map zeta -> zeta^(p-1)."""
        p = self.prime
        acc = [Fraction(0)] * (p - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            e = (-i) % p
            if e == p - 1:
                for k in range(p - 1):
                    acc[k] -= a
            else:
                acc[e] += a
        return Cyclotomic(p, acc)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        """Numerical embedding zeta -> exp(2*pi*i/p); approximate, display only."""
        p = self.prime
        return sum(
            float(c) * cmath.exp(2j * cmath.pi * i / p)
            for i, c in enumerate(self.coeffs)
            if c
        ) or complex(0.0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(self.prime, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.prime == other.prime and self.coeffs == other.coeffs

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.prime, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Cyclotomic({self.prime}, {self.coeffs!r})"

    def __str__(self):
        # Report format: "c0 + c1*z + ..." with reduced rationals.
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c and not (i == 0 and self.is_zero()):
                continue
            term = str(c) if i == 0 else (f"{c}*z" if i == 1 else f"{c}*z^{i}")
            parts.append(term)
        return " + ".join(parts) if parts else "0"


def complex_str(value: complex) -> str:
    """Display format "(re, im)" with 6 decimals, used by reports."""
    return f"({value.real:.6f}, {value.imag:.6f})"
