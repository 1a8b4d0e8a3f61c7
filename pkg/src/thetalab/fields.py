"""Exact scalar fields: arbitrary-precision rationals and odd prime fields.

Every computation in the package is either exact over one of these fields or
a float theta evaluation (see :mod:`thetalab.theta`).  Field objects carry no
state beyond the characteristic, so they are safe to share and compare.
"""

from __future__ import annotations

from fractions import Fraction

MIN_PRIME = 1009
DEFAULT_PRIMES = (10007, 65521)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller–Rabin for n < 3.3e24 (covers every usable prime here)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldError(ValueError):
    pass


class PrimeField:
    """F_p for an odd prime p >= MIN_PRIME; scalars are python ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p < MIN_PRIME:
            raise FieldError(f"prime {p} too small; need p >= {MIN_PRIME}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def normalize(self, x):
        if isinstance(x, Fraction):
            return self.normalize(x.numerator) * self.inv(self.normalize(x.denominator)) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def legendre(self, a) -> int:
        """+1 if a is a nonzero square, -1 if a nonsquare, 0 if a == 0."""
        a %= self.p
        if a == 0:
            return 0
        s = pow(a, (self.p - 1) // 2, self.p)
        return 1 if s == 1 else -1

    def sqrt(self, a):
        """A square root of a mod p (Tonelli–Shanks), or None if a is a nonsquare."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre(a) != 1:
            return None
        if p % 4 == 3:
            r = pow(a, (p + 1) // 4, p)
            return min(r, p - r)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.legendre(z) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return min(r, p - r)

    def random_scalar(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)


class Rationals:
    """The field Q; scalars are python ints or fractions.Fraction."""

    characteristic = 0
    p = None
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def normalize(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def random_scalar(self, rng):
        return Fraction(rng.randrange(-99, 100), rng.randrange(1, 20))

    def random_nonzero(self, rng):
        while True:
            x = self.random_scalar(rng)
            if x != 0:
                return x


QQ = Rationals()


def field_from_descriptor(desc: str):
    """Parse a field descriptor: "Q" or "Fp:<prime>"."""
    desc = desc.strip()
    if desc == "Q":
        return QQ
    if desc.startswith("Fp:"):
        return PrimeField(int(desc[3:]))
    raise FieldError(f"unknown field descriptor {desc!r}")


def field_descriptor(field) -> str:
    return "Q" if field.characteristic == 0 else f"Fp:{field.p}"
