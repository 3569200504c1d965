"""Exact coefficient fields: the rationals and prime fields F_p.

Scalars are plain Python values — `fractions.Fraction` over Q (automatically
in lowest terms with positive denominator) and ints reduced to [0, p) over
F_p. A `Field` instance supplies the arithmetic, which keeps matrices, jets
and samplers field-generic while letting the F_p lane drop to int64 numpy
arrays for the hot kernels.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import FieldMismatchError

Scalar = Union[Fraction, int]

#: Default prime for the fast modular lane: the largest prime below 2^16,
#: so products of two reduced residues stay far inside int64.
DEFAULT_PRIME = 65521

# Primes must keep (p-1)^2 inside int64 for the elimination kernels.
_MAX_PRIME = (1 << 31) - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    # deterministic Miller-Rabin, valid far beyond 2^31
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x == 1 or x == p - 1:
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Field:
    """The rationals (kind 'Q') or a prime field F_p (kind 'Fp').

    Instances are immutable and compare/hash by (kind, p), so two
    `Field.prime(65521)` objects are interchangeable.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "Q":
            if p is not None:
                raise ValueError("Q takes no characteristic")
        elif kind == "Fp":
            if p is None or not (2 < p <= _MAX_PRIME):
                raise ValueError(f"prime must be an odd prime <= {_MAX_PRIME}, got {p}")
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def rationals(cls) -> "Field":
        return QQ

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls("Fp", p)

    # -- basic arithmetic ---------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p  # type: ignore[return-value]

    def normalize(self, x) -> Scalar:
        """Coerce ints/Fractions/strings into this field's canonical scalar form."""
        if self.kind == "Q":
            if isinstance(x, bool):
                raise TypeError("bool is not a scalar")
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x)
            raise TypeError(f"cannot coerce {type(x).__name__} into Q")
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, int):
            return x % self.p  # type: ignore[operator]
        if isinstance(x, Fraction):
            return self.normalize(x.numerator) * self.inv(self.normalize(x.denominator)) % self.p
        if isinstance(x, str):
            return self.normalize(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} into F_{self.p}")

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.kind == "Q" else 1

    def is_zero(self, x: Scalar) -> bool:
        return x == 0

    def add(self, x: Scalar, y: Scalar) -> Scalar:
        return x + y if self.kind == "Q" else (x + y) % self.p

    def sub(self, x: Scalar, y: Scalar) -> Scalar:
        return x - y if self.kind == "Q" else (x - y) % self.p

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        return x * y if self.kind == "Q" else (x * y) % self.p

    def neg(self, x: Scalar) -> Scalar:
        return -x if self.kind == "Q" else (-x) % self.p

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / x  # Fraction division
        return pow(x, self.p - 2, self.p)

    def div(self, x: Scalar, y: Scalar) -> Scalar:
        return self.mul(x, self.inv(y))

    def pow(self, x: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.pow(self.inv(x), -e)
        if self.kind == "Q":
            return x**e
        return pow(x, e, self.p)

    # -- sampling and serialization ----------------------------------------

    def random_scalar(self, rng, height: int = 100) -> Scalar:
        """Uniform integer in [-height, height] over Q; uniform residue over F_p."""
        if self.kind == "Q":
            return Fraction(rng.randint(-height, height))
        return rng.randrange(self.p)

    def random_nonzero(self, rng, height: int = 100) -> Scalar:
        while True:
            x = self.random_scalar(rng, height)
            if x != 0:
                return x

    def scalar_to_json(self, x: Scalar):
        """Q scalars as fraction strings ("3", "-5/7"); F_p scalars as ints."""
        if self.kind == "Q":
            return str(x)
        return int(x)

    def scalar_from_json(self, v) -> Scalar:
        if self.kind == "Q":
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise TypeError(f"Q scalar must be a fraction string or int, got {v!r}")
            return Fraction(v)
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"F_p scalar must be an int, got {v!r}")
        return v % self.p

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Q" if self.kind == "Q" else f"F_{self.p}"


QQ = Field("Q")


def require_same_field(a: Field, b: Field, what: str = "operands") -> Field:
    if a != b:
        raise FieldMismatchError(f"{what} live over different fields: {a} vs {b}")
    return a
