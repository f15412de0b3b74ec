"""Number field descriptors and rational prime splitting.

Supports the rational field and quadratic fields Q(sqrt(d)) for squarefree d.
The splitting of a rational prime in a quadratic field is decided by the
Kronecker symbol of the field discriminant, implemented here from first
principles (quadratic reciprocity) so no external number-theory package is
involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidFieldError

TWO_PI = 2.0 * math.pi


class SplitKind(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class SplitType:
    """How a rational prime decomposes in a quadratic field."""

    kind: SplitKind
    norms: tuple[int, ...]


def is_squarefree(d: int) -> bool:
    """True when no prime square divides d. Trial division; d is small here."""
    n = abs(d)
    if n == 0:
        return False
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


def discriminant(d: int) -> int:
    """Field discriminant of Q(sqrt(d)): d when d = 1 mod 4, else 4d."""
    if d in (0, 1) or not is_squarefree(d):
        raise InvalidFieldError(f"d must be squarefree and not 0 or 1, got {d}")
    return d if d % 4 == 1 else 4 * d


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), computed by quadratic reciprocity.

    Handles all integers n, including n <= 0 and even n, following the
    standard extension of the Jacobi symbol.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # Factor powers of two out of n; (a|2) is 0 for even a and depends on
    # a mod 8 otherwise.
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for moderate n."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Invariants of a supported number field.

    degree is 1 (rational field) or 2 (quadratic).  For the rational field
    d is None, the discriminant is 1, the regulator is 1 and nu = 2, which
    makes the residue formula below evaluate to exactly 1.
    """

    label: str
    degree: int
    d: int | None
    discriminant: int
    r1: int
    r2: int
    class_number: int
    regulator: float
    nu: int

    def __post_init__(self) -> None:
        if self.degree not in (1, 2):
            raise InvalidFieldError(f"unsupported degree {self.degree}")
        if self.r1 + 2 * self.r2 != self.degree:
            raise InvalidFieldError(
                f"signature ({self.r1},{self.r2}) inconsistent with degree {self.degree}"
            )
        if self.class_number < 1:
            raise InvalidFieldError("class number must be positive")
        if self.nu < 2:
            raise InvalidFieldError("unit group has at least the two roots -1, 1")
        if self.degree == 1:
            if self.d is not None or self.discriminant != 1:
                raise InvalidFieldError("rational field must have d=None, discriminant 1")
            return
        assert self.d is not None
        if discriminant(self.d) != self.discriminant:
            raise InvalidFieldError(
                f"discriminant {self.discriminant} does not match d={self.d}"
            )
        if self.d < 0:
            if (self.r1, self.r2) != (0, 1):
                raise InvalidFieldError("imaginary quadratic field has signature (0,1)")
            if self.regulator != 1.0:
                raise InvalidFieldError("imaginary quadratic regulator is 1 by convention")
            if self.nu not in (2, 4, 6):
                raise InvalidFieldError(f"nu={self.nu} impossible for imaginary quadratic")
        else:
            if (self.r1, self.r2) != (2, 0):
                raise InvalidFieldError("real quadratic field has signature (2,0)")
            if self.nu != 2:
                raise InvalidFieldError("real quadratic field has nu=2")
            if not self.regulator > 0:
                raise InvalidFieldError("real quadratic regulator must be positive")

    @property
    def kappa(self) -> float:
        """Density of ideals by norm: the residue of the field zeta at s=1.

        kappa = 2^r1 (2 pi)^r2 h R / (nu sqrt(|disc|)).
        """
        return (
            2.0**self.r1
            * TWO_PI**self.r2
            * self.class_number
            * self.regulator
            / (self.nu * math.sqrt(abs(self.discriminant)))
        )

    def __str__(self) -> str:
        return self.label


def rational_field() -> FieldDescriptor:
    return FieldDescriptor(
        label="Q",
        degree=1,
        d=None,
        discriminant=1,
        r1=1,
        r2=0,
        class_number=1,
        regulator=1.0,
        nu=2,
    )


def quadratic_field(
    label: str, d: int, class_number: int, regulator: float, nu: int
) -> FieldDescriptor:
    if d in (0, 1) or not is_squarefree(d):
        raise InvalidFieldError(f"d must be squarefree and not 0 or 1, got {d}")
    r1, r2 = (2, 0) if d > 0 else (0, 1)
    return FieldDescriptor(
        label=label,
        degree=2,
        d=d,
        discriminant=discriminant(d),
        r1=r1,
        r2=r2,
        class_number=class_number,
        regulator=regulator,
        nu=nu,
    )


def split_prime(desc: FieldDescriptor, p: int) -> SplitType:
    """Decomposition of the rational prime p in a quadratic field.

    Split primes carry two ideals of norm p, inert primes one ideal of
    norm p^2, ramified primes (p dividing the discriminant) one of norm p.
    """
    if desc.degree != 2:
        raise InvalidFieldError("splitting is defined for quadratic fields")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    symbol = kronecker(desc.discriminant, p)
    if symbol == 0:
        return SplitType(SplitKind.RAMIFIED, (p,))
    if symbol == 1:
        return SplitType(SplitKind.SPLIT, (p, p))
    return SplitType(SplitKind.INERT, (p * p,))
