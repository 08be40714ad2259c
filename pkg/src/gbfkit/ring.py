"""Integer group ring Z[C_m] of a cyclic group, with exact character tests.

An element is a length-m vector of integer coefficients: coeffs[i] is the
coefficient of g^i for a fixed generator g.  Multiplication is cyclic
convolution.  A character chi of order d | m sends g to zeta_d^t with
gcd(t, d) = 1, and chi(D) = 0 is decided *exactly*: fold the coefficients
into a polynomial of degree < d via i -> t*i mod d, then test divisibility
by the d-th cyclotomic polynomial.  No floating point is involved; the
float character evaluation below exists only for cross-checks and for
search pruning, never for verdicts.

Cyclotomic polynomials are computed by exact division of x^d - 1 by
Phi_e over the proper divisors e of d, and cached per d.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from functools import cache
from math import gcd

# Coefficients are kept inside signed 64-bit range so that misuse (for
# example repeated squaring of a large element) fails loudly instead of
# silently leaving the intended domain.
INT64_MAX = 2**63 - 1


def factorize(m: int) -> "PrimeFactorization":
    """Prime factorization by trial division; fine for m up to ~10^12."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    factors = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            a = 0
            while rest % p == 0:
                rest //= p
                a += 1
            factors.append((p, a))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return PrimeFactorization(m, tuple(factors))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1 if q == 2 else 2
    return True


@dataclass(frozen=True)
class PrimeFactorization:
    """m = prod p_i^{a_i} with p_1 < p_2 < ... ."""

    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, a in self.factors:
            prod *= p**a
        if prod != self.m:
            raise ValueError(f"factors {self.factors} do not multiply to {self.m}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def num_primes(self) -> int:
        return len(self.factors)

    @property
    def radical(self) -> int:
        out = 1
        for p in self.primes:
            out *= p
        return out


def divisors(m: int) -> list[int]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


# ---------------------------------------------------------------------------
# cyclotomic polynomials, as integer coefficient lists (index = degree)


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Long division of integer polynomials; den must be monic."""
    assert den[-1] == 1, "divisor must be monic"
    rem = list(num)
    quo = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = rem[k + len(den) - 1]
        if c:
            quo[k] = c
            for j, b in enumerate(den):
                rem[k + j] -= c * b
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return quo, rem


@cache
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of Phi_d, low degree first.  Phi_1 = x - 1."""
    if d < 1:
        raise ValueError(f"order must be positive, got {d}")
    poly = [0] * (d + 1)
    poly[0], poly[d] = -1, 1  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            quo, rem = _poly_divmod(poly, list(cyclotomic_polynomial(e)))
            assert rem == [0], f"x^{d}-1 not divisible by Phi_{e}"
            poly = quo
    return tuple(poly)


def _divisible_by_cyclotomic(poly: list[int], d: int) -> bool:
    if all(c == 0 for c in poly):
        return True
    _, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
    return rem == [0]


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class CharacterSpec:
    """Character of C_m of order d | m, sending g to zeta_d^t, gcd(t, d) = 1.

    The zero-test below is Galois-invariant, so t never changes a verdict;
    it is kept because conjugate characters are occasionally convenient in
    cross-checks.
    """

    m: int
    order: int
    t: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be positive, got {self.m}")
        if self.order < 1 or self.m % self.order != 0:
            raise ValueError(f"character order {self.order} must divide m={self.m}")
        if gcd(self.t, self.order) != 1:
            raise ValueError(f"index t={self.t} not coprime to order {self.order}")


@dataclass(frozen=True)
class CyclicRingElt:
    """Immutable element of Z[C_m]; coeffs[i] is the coefficient of g^i."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be positive, got {self.m}")
        if len(self.coeffs) != self.m:
            raise ValueError(f"need {self.m} coefficients, got {len(self.coeffs)}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, m: int, coeffs) -> "CyclicRingElt":
        return cls(m, tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls, m: int) -> "CyclicRingElt":
        return cls(m, (0,) * m)

    @classmethod
    def monomial(cls, m: int, i: int, c: int = 1) -> "CyclicRingElt":
        coeffs = [0] * m
        coeffs[i % m] = c
        return cls(m, tuple(coeffs))

    @classmethod
    def from_json(cls, text: str | dict) -> "CyclicRingElt":
        obj = json.loads(text) if isinstance(text, str) else text
        return cls.from_coeffs(int(obj["m"]), obj["coeffs"])

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    # -- basic structure -----------------------------------------------------

    @property
    def norm(self) -> int:
        """Sum of absolute values of coefficients."""
        return sum(abs(c) for c in self.coeffs)

    @property
    def mass(self) -> int:
        """Plain coefficient sum (the image under the trivial character)."""
        return sum(self.coeffs)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def _same_group(self, other: "CyclicRingElt"):
        if self.m != other.m:
            raise ValueError(f"mixed moduli {self.m} and {other.m}")

    def __add__(self, other: "CyclicRingElt") -> "CyclicRingElt":
        self._same_group(other)
        return CyclicRingElt(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclicRingElt") -> "CyclicRingElt":
        self._same_group(other)
        return CyclicRingElt(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclicRingElt":
        return CyclicRingElt(self.m, tuple(-a for a in self.coeffs))

    def scale(self, c: int) -> "CyclicRingElt":
        return CyclicRingElt(self.m, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "CyclicRingElt") -> "CyclicRingElt":
        """Cyclic convolution, with an explicit 64-bit overflow guard."""
        self._same_group(other)
        m = self.m
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % m] += a * b
        if any(abs(c) > INT64_MAX for c in out):
            raise OverflowError("group-ring product left the signed 64-bit range")
        return CyclicRingElt(m, tuple(out))

    def shift(self, j: int) -> "CyclicRingElt":
        """Multiply by g^j (rotate coefficients)."""
        j %= self.m
        return CyclicRingElt(self.m, self.coeffs[-j:] + self.coeffs[:-j])

    def conj_inverse(self) -> "CyclicRingElt":
        """The involution g -> g^{-1}, i.e. coeffs[i] -> coeffs[-i mod m]."""
        m = self.m
        return CyclicRingElt(m, tuple(self.coeffs[(m - i) % m] for i in range(m)))

    def galois_twist(self, t: int) -> "CyclicRingElt":
        """Index map i -> t*i mod m for gcd(t, m) = 1.

        Realizes the Galois action zeta_m -> zeta_m^t on character values.
        """
        if gcd(t, self.m) != 1:
            raise ValueError(f"twist {t} not coprime to modulus {self.m}")
        out = [0] * self.m
        for i, c in enumerate(self.coeffs):
            out[(t * i) % self.m] = c
        return CyclicRingElt(self.m, tuple(out))

    def natural_projection(self, d: int) -> "CyclicRingElt":
        """Ring homomorphism onto Z[C_d] for d | m: g -> generator of C_d."""
        if d < 1 or self.m % d != 0:
            raise ValueError(f"projection target {d} must divide modulus {self.m}")
        out = [0] * d
        for i, c in enumerate(self.coeffs):
            out[i % d] += c
        return CyclicRingElt(d, tuple(out))

    def psi_projection(self) -> int:
        """Image under the order-2 character g -> -1; modulus must be even."""
        if self.m % 2 != 0:
            raise ValueError(f"psi projection needs an even modulus, got {self.m}")
        return sum(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))


def subgroup_sum(m: int, s: int) -> CyclicRingElt:
    """P_s: the sum over the (unique) subgroup of order s | m."""
    if s < 1 or m % s != 0:
        raise ValueError(f"subgroup order {s} must divide {m}")
    coeffs = [0] * m
    for i in range(s):
        coeffs[i * (m // s)] = 1
    return CyclicRingElt(m, tuple(coeffs))


def punctured_subgroup_sum(m: int, s: int) -> CyclicRingElt:
    """P_s minus the identity term."""
    elt = subgroup_sum(m, s)
    coeffs = list(elt.coeffs)
    coeffs[0] -= 1
    return CyclicRingElt(m, tuple(coeffs))


def character_value_is_zero(elt: CyclicRingElt, chi: CharacterSpec) -> bool:
    """Exact test chi(elt) == 0.

    chi(g^i) = zeta_d^{t*i}, so the value is q(zeta_d) for the folded
    polynomial q[(t*i) mod d] += coeffs[i], and q(zeta_d) = 0 iff
    Phi_d | q over Z (q has degree < d and Phi_d is the minimal
    polynomial of zeta_d).
    """
    if chi.m != elt.m:
        raise ValueError(f"character on C_{chi.m} applied to element of C_{elt.m}")
    d = chi.order
    folded = [0] * d
    for i, c in enumerate(elt.coeffs):
        if c:
            folded[(chi.t * i) % d] += c
    return _divisible_by_cyclotomic(folded, d)


def character_values_numeric(elt: CyclicRingElt) -> list[complex]:
    """All m character values chi_j(elt) = sum_i coeffs[i] zeta_m^{ij}.

    Floating point; for cross-checks only.
    """
    m = elt.m
    root = [cmath.exp(2j * cmath.pi * k / m) for k in range(m)]
    return [sum(c * root[(i * j) % m] for i, c in enumerate(elt.coeffs)) for j in range(m)]
