"""Exact coefficient rings: the integers, the rationals and Z/m for odd m.

Values are plain Python objects in canonical form (``int`` for Z and Z/m,
``fractions.Fraction`` for Q) so that ``==`` is structural equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidModulus, NotAField, RingParseError, TwoTorsion


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "integers" | "rationals" | "modular"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("integers", "rationals", "modular"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if (self.kind == "modular") != (self.modulus is not None):
            raise ValueError("a modulus is given exactly for modular rings")

    @property
    def name(self) -> str:
        if self.kind == "integers":
            return "Z"
        if self.kind == "rationals":
            return "Q"
        return f"Z/{self.modulus}"

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse the CLI spelling ``Z``, ``Q`` or ``Z/<m>``."""
        text = text.strip()
        if text == "Z":
            return cls("integers")
        if text == "Q":
            return cls("rationals")
        m = re.fullmatch(r"Z/(\d+)", text)
        if not m:
            raise RingParseError(f"cannot parse ring {text!r}; expected Z, Q or Z/<m>")
        return cls("modular", int(m.group(1)))


class Ring:
    """Handle for exact arithmetic in one ring.

    Build through :func:`make_ring`, which enforces 2-torsion-freeness.
    """

    __slots__ = ("spec", "is_field", "_m")

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self._m = spec.modulus
        if spec.kind == "rationals":
            self.is_field = True
        elif spec.kind == "modular":
            self.is_field = _is_prime(spec.modulus)
        else:
            self.is_field = False

    def __repr__(self):
        return f"Ring({self.spec.name})"

    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def zero(self):
        return Fraction(0) if self.spec.kind == "rationals" else 0

    @property
    def one(self):
        return Fraction(1) if self.spec.kind == "rationals" else 1

    def __call__(self, value):
        """Coerce an int, Fraction or decimal string into canonical form."""
        if isinstance(value, str):
            return self.parse(value)
        kind = self.spec.kind
        if kind == "rationals":
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                if kind == "integers":
                    raise ValueError(f"{value} is not an integer")
                return (value.numerator * pow(value.denominator, -1, self._m)) % self._m
            value = value.numerator
        if not isinstance(value, int):
            raise TypeError(f"cannot coerce {type(value).__name__} into {self.name}")
        return value % self._m if kind == "modular" else value

    def add(self, a, b):
        s = a + b
        return s % self._m if self._m else s

    def sub(self, a, b):
        s = a - b
        return s % self._m if self._m else s

    def neg(self, a):
        return (-a) % self._m if self._m else -a

    def mul(self, a, b):
        p = a * b
        return p % self._m if self._m else p

    def inv(self, a):
        if not self.is_field:
            raise NotAField(f"{self.name} has no general inverses")
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._m:
            return pow(a, -1, self._m)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, text: str):
        text = text.strip()
        try:
            value = Fraction(text)
        except ValueError as exc:
            raise RingParseError(f"bad coefficient {text!r}") from exc
        try:
            return self(value)
        except ValueError as exc:
            raise RingParseError(f"coefficient {text!r} is not in {self.name}") from exc

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        """All residues of a modular ring, in order."""
        if not self._m:
            raise ValueError(f"{self.name} is infinite")
        return range(self._m)


def make_ring(spec: RingSpec | str) -> Ring:
    if isinstance(spec, str):
        spec = RingSpec.parse(spec)
    if spec.kind == "modular":
        m = spec.modulus
        if m < 2:
            raise InvalidModulus(f"modulus must be at least 2, got {m}")
        if m % 2 == 0:
            # 2 * (m/2) == 0 with m/2 != 0
            raise TwoTorsion(f"Z/{m} has 2-torsion")
    return Ring(spec)


def is_field(ring: Ring) -> bool:
    return ring.is_field


INTEGERS = make_ring(RingSpec("integers"))
RATIONALS = make_ring(RingSpec("rationals"))
