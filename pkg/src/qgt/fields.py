"""Exact coefficient fields: the rationals and prime fields GF(p).

Scalars are plain Python objects (``Fraction`` for Q, ``int`` residues for
GF(p)).  Arithmetic is done with the native operators and the result is passed
through :meth:`Field.norm`, which keeps the hot loops free of wrapper objects.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either Q (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValidationError(f"field modulus {self.p} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def norm(self, x):
        if self.p is not None:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return x % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p is not None:
            if x % self.p == 0:
                raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def is_zero(self, x) -> bool:
        return self.norm(x) == 0

    def random_element(self, rng: random.Random, nonzero: bool = False):
        """Random scalar; integers in [-10, 10] over Q."""
        while True:
            if self.p is not None:
                x = rng.randrange(self.p)
            else:
                x = Fraction(rng.randint(-10, 10))
            if not nonzero or x != 0:
                return x

    def parse(self, text) -> object:
        """Parse ``"3"``, ``"-2/5"`` or an int/Fraction into this field."""
        if isinstance(text, (int, Fraction)):
            return self.norm(text)
        s = str(text).strip()
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad scalar {text!r}") from exc
        if self.p is not None and value.denominator % self.p == 0:
            raise ValidationError(f"scalar {text!r} has denominator divisible by {self.p}")
        return self.norm(value)

    def format(self, x) -> str:
        x = self.norm(x)
        if self.p is not None:
            return str(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def header(self) -> dict:
        return {"field": "Q"} if self.p is None else {"field": "GF", "p": self.p}

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


Q = Field()


def GF(p: int) -> Field:
    return Field(p)


_FIELD_RE = re.compile(r"^\s*(?:GF\s*[:(]\s*(\d+)\s*\)?|Q|QQ)\s*$", re.IGNORECASE)


def parse_field(desc) -> Field:
    """Accepts ``"Q"``, ``"GF:5"``, ``"GF(5)"`` or a JSON header dict."""
    if isinstance(desc, Field):
        return desc
    if isinstance(desc, dict):
        kind = str(desc.get("field", "Q")).upper()
        if kind in ("Q", "QQ"):
            return Q
        if kind == "GF":
            if "p" not in desc:
                raise ValidationError("GF field header needs a modulus 'p'")
            return Field(int(desc["p"]))
        raise ValidationError(f"unknown field kind {kind!r}")
    m = _FIELD_RE.match(str(desc))
    if not m:
        raise ValidationError(f"unknown field {desc!r}; use Q or GF:p")
    return Q if m.group(1) is None else Field(int(m.group(1)))
