"""Coefficient rings: integers, rationals, prime fields.  Exact arithmetic only.

Coefficients are plain Python ints (Z and F_p, the latter kept reduced into
0..p-1) or :class:`fractions.Fraction` (Q).  A ring object only normalizes
and compares; the arithmetic itself is ordinary ``+``/``*`` on the
representatives followed by :meth:`Ring.normalize`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldRequiredError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Ring:
    name = "?"
    characteristic = 0
    is_field = False

    def normalize(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return self.normalize(x) == 0

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Ring) and repr(self) == repr(other)

    def __hash__(self):
        return hash(repr(self))


class IntegerRing(Ring):
    name = "Z"

    def normalize(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        return int(x)


class RationalRing(Ring):
    name = "Q"
    is_field = True

    def normalize(self, x):
        return Fraction(x)


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p

    def normalize(self, x):
        if isinstance(x, Fraction):
            return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
        return int(x) % self.p


ZZ = IntegerRing()
QQ = RationalRing()


def ring_from_name(name: str) -> Ring:
    """Parse the CLI vocabulary: Z, Q, or Fp:<p>."""
    if name == "Z":
        return ZZ
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return PrimeField(int(name[3:]))
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown ring {name!r}")


def require_field(ring: Ring):
    if not ring.is_field:
        raise FieldRequiredError(f"{ring} is not a field")
