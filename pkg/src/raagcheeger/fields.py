"""Exact scalar arithmetic over prime fields GF(p) and over the rationals.

Scalars are plain Python values kept in canonical form: an ``int`` residue in
``[0, p)`` for a prime field, a reduced ``fractions.Fraction`` for the
rationals.  A :class:`Field` carries the operations; it never wraps scalars in
a dedicated element type, so equality and hashing of scalars are structural.
All operations reject scalars that are not canonical members of the field,
which is how accidental mixing of fields surfaces as an explicit error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Scalar = Union[int, Fraction]

PRIME_FIELD = "prime-field"
RATIONALS = "rationals"


class FieldError(ValueError):
    """Invalid field construction, foreign scalar, or inversion of zero."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A field of scalars: GF(p) for prime p, or the rational numbers.

    ``characteristic`` is ``p`` for prime fields and ``0`` for the rationals.
    """

    kind: str
    characteristic: int

    def __post_init__(self) -> None:
        if self.kind == PRIME_FIELD:
            if not _is_prime(self.characteristic):
                raise FieldError(
                    f"prime field characteristic must be prime, got {self.characteristic}"
                )
        elif self.kind == RATIONALS:
            if self.characteristic != 0:
                raise FieldError("the rationals have characteristic 0")
        else:
            raise FieldError(f"unknown field kind: {self.kind!r}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def gf(p: int) -> "Field":
        return Field(PRIME_FIELD, p)

    @staticmethod
    def rationals() -> "Field":
        return Field(RATIONALS, 0)

    @staticmethod
    def from_name(name: str) -> "Field":
        """Parse a field name such as ``"gf2"``, ``"gf17"`` or ``"rational"``."""
        name = name.strip().lower()
        if name in ("rational", "rationals", "q", "qq"):
            return Field.rationals()
        if name.startswith("gf"):
            try:
                p = int(name[2:])
            except ValueError:
                raise FieldError(f"cannot parse field name {name!r}") from None
            return Field.gf(p)
        raise FieldError(f"cannot parse field name {name!r}")

    @property
    def name(self) -> str:
        if self.kind == PRIME_FIELD:
            return f"gf{self.characteristic}"
        return "rational"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME_FIELD

    def __repr__(self) -> str:
        return f"Field({self.name})"

    # -- canonical scalars -------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime_field else Fraction(1)

    def element(self, value) -> Scalar:
        """Coerce ``value`` to a canonical scalar of this field.

        Prime fields accept integers (reduced mod p) and integer strings.
        The rationals accept integers, ``Fraction`` and strings like "2/3".
        """
        if self.is_prime_field:
            if isinstance(value, bool):
                raise FieldError(f"not a GF({self.characteristic}) scalar: {value!r}")
            if isinstance(value, int):
                return value % self.characteristic
            if isinstance(value, str):
                return int(value) % self.characteristic
            raise FieldError(f"not a GF({self.characteristic}) scalar: {value!r}")
        if isinstance(value, bool):
            raise FieldError(f"not a rational scalar: {value!r}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise FieldError(f"not a rational scalar: {value!r}")

    def check(self, value: Scalar) -> Scalar:
        """Return ``value`` if it is a canonical member of this field, else raise.

        This is the guard against mixing fields: a rational ``Fraction`` fed to
        a GF(p) operation, or an out-of-range residue, is rejected.
        """
        if self.is_prime_field:
            if isinstance(value, bool) or not isinstance(value, int):
                raise FieldError(f"scalar {value!r} does not belong to {self.name}")
            if not 0 <= value < self.characteristic:
                raise FieldError(
                    f"scalar {value!r} is not a canonical residue of {self.name}"
                )
            return value
        if not isinstance(value, Fraction):
            raise FieldError(f"scalar {value!r} does not belong to {self.name}")
        return value

    # -- arithmetic --------------------------------------------------------

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        self.check(a), self.check(b)
        if self.is_prime_field:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        self.check(a), self.check(b)
        if self.is_prime_field:
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        self.check(a), self.check(b)
        if self.is_prime_field:
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a: Scalar) -> Scalar:
        self.check(a)
        if self.is_prime_field:
            return (-a) % self.characteristic
        return -a

    def inv(self, a: Scalar) -> Scalar:
        self.check(a)
        if a == 0:
            raise FieldError(f"zero has no multiplicative inverse in {self.name}")
        if self.is_prime_field:
            return pow(a, self.characteristic - 2, self.characteristic)
        return 1 / a

    # -- serialization -----------------------------------------------------

    def serialize_scalar(self, a: Scalar):
        """JSON form of a scalar: an int, or "num/den" for non-integral rationals."""
        self.check(a)
        if self.is_prime_field:
            return a
        if a.denominator == 1:
            return int(a)
        return f"{a.numerator}/{a.denominator}"

    def parse_scalar(self, raw) -> Scalar:
        return self.element(raw)

    # -- enumeration -------------------------------------------------------

    def elements(self) -> Iterator[Scalar]:
        """All scalars, in residue order.  Rejected for the rationals."""
        if not self.is_prime_field:
            raise FieldError("the rationals are not enumerable")
        return iter(range(self.characteristic))


GF2 = Field.gf(2)
GF3 = Field.gf(3)
GF5 = Field.gf(5)
QQ = Field.rationals()
