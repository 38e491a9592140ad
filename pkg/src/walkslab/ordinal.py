"""Ordinal notations below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)``
terms with strictly decreasing exponents.  Exponents are themselves
ordinals, so every notation is a finite tree.  Comparison is done on a
nested-tuple key, which Python compares lexicographically and which agrees
with the ordinal order for canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

__all__ = [
    "Ordinal",
    "OrdinalClass",
    "NotationError",
    "ZERO",
    "ONE",
    "OMEGA",
    "parse",
    "format_ordinal",
    "compare",
    "classify",
    "code",
    "decode",
    "as_ordinal",
]


class NotationError(ValueError):
    """Raised for malformed or non-canonical ordinal notations."""


Term = Tuple["Ordinal", int]


class Ordinal:
    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        terms = tuple((e, int(c)) for e, c in terms)
        prev = None
        for e, c in terms:
            if not isinstance(e, Ordinal):
                raise TypeError(f"exponent must be an Ordinal, got {type(e).__name__}")
            if c < 1:
                raise NotationError(f"coefficient must be positive, got {c}")
            if prev is not None and not e._key < prev._key:
                raise NotationError("exponents must be strictly decreasing")
            prev = e
        self._init(terms)

    def _init(self, terms):
        self.terms = terms
        self._key = tuple((e._key, c) for e, c in terms)
        self._hash = hash(self._key)

    @classmethod
    def _trusted(cls, terms) -> "Ordinal":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._init(tuple(terms))
        return obj

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        if n == 0:
            return ZERO
        return cls._trusted(((ZERO, n),))

    @classmethod
    def omega_power(cls, exponent: "Ordinal", coefficient: int = 1) -> "Ordinal":
        if coefficient < 1:
            raise NotationError("coefficient must be positive")
        return cls._trusted(((exponent, coefficient),))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self._key == other._key
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key < other._key

    def __le__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key <= other._key

    def __gt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key > other._key

    def __ge__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key >= other._key

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)

    def __reduce__(self):
        return (_rebuild, (self.terms,))

    # -- shape ------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].terms

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("zero has no leading exponent")
        return self.terms[0][0]

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor ordinal")
        return self.drop_last()

    def successor(self) -> "Ordinal":
        return self.append_term(ZERO, 1)

    def drop_last(self) -> "Ordinal":
        """Decrement the coefficient of the last term, dropping it at zero."""
        e, c = self.terms[-1]
        if c == 1:
            return Ordinal._trusted(self.terms[:-1])
        return Ordinal._trusted(self.terms[:-1] + ((e, c - 1),))

    def append_term(self, exponent: "Ordinal", coefficient: int = 1) -> "Ordinal":
        """Return ``self + w^exponent * coefficient``.

        Only defined when ``exponent`` does not exceed the last exponent of
        ``self``, which is all the fundamental sequences need.
        """
        if coefficient == 0:
            return self
        if not self.terms:
            return Ordinal._trusted(((exponent, coefficient),))
        last_e, last_c = self.terms[-1]
        if exponent._key < last_e._key:
            return Ordinal._trusted(self.terms + ((exponent, coefficient),))
        if exponent._key == last_e._key:
            return Ordinal._trusted(self.terms[:-1] + ((last_e, last_c + coefficient),))
        raise ValueError("append_term exponent exceeds the last exponent")

    def classify(self) -> "OrdinalClass":
        return classify(self)


def _rebuild(terms):
    return Ordinal._trusted(terms)


ZERO = Ordinal._trusted(())
ONE = Ordinal._trusted(((ZERO, 1),))
OMEGA = Ordinal._trusted(((ONE, 1),))


def _coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ordinal.from_int(x)
    raise TypeError(f"cannot compare Ordinal with {type(x).__name__}")


def as_ordinal(x: Union[Ordinal, int, str]) -> Ordinal:
    """Coerce an int, notation string or Ordinal to an Ordinal."""
    if isinstance(x, str):
        return parse(x)
    return _coerce(x)


@dataclass(frozen=True)
class OrdinalClass:
    kind: str  # "zero" | "successor" | "limit"
    predecessor: Optional[Ordinal] = None


def classify(a: Ordinal) -> OrdinalClass:
    if not a.terms:
        return OrdinalClass("zero")
    if a.is_successor:
        return OrdinalClass("successor", a.drop_last())
    return OrdinalClass("limit")


def compare(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = a._key, b._key
    return (ka > kb) - (ka < kb)


# -- text notation ------------------------------------------------------------


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        base = "w" if e == ONE else f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise NotationError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def nat(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits:
            self.error("expected a natural number")
        if len(digits) > 1 and digits[0] == "0":
            self.pos = start
            self.error("leading zeros are not allowed")
        return int(digits)

    def ordinal(self) -> Ordinal:
        if self.peek() == "0":
            start = self.pos
            self.pos += 1
            if self.peek().isdigit():
                self.pos = start
                self.error("leading zeros are not allowed")
            return ZERO
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        for (e0, _), (e1, _) in zip(terms, terms[1:]):
            if not e1 < e0:
                self.error("exponents are not strictly decreasing (non-canonical form)")
        return Ordinal._trusted(terms)

    def term(self) -> Term:
        if self.peek() == "w":
            self.pos += 1
            if self.peek() == "^":
                self.expect("^(")
                exponent = self.ordinal()
                self.expect(")")
            else:
                exponent = ONE
            coefficient = 1
            if self.peek() == "*":
                self.pos += 1
                coefficient = self.nat()
        else:
            exponent = ZERO
            coefficient = self.nat()
        if coefficient == 0:
            self.error("zero coefficient")
        return exponent, coefficient


def parse(text: str) -> Ordinal:
    """Parse the ``w^(e)*c + ...`` notation; input must be in canonical order."""
    p = _Parser(text.strip())
    if not p.text:
        p.error("empty notation")
    result = p.ordinal()
    if p.pos != len(p.text):
        p.error("unexpected trailing input")
    return result


# -- injective coding ---------------------------------------------------------
#
# Each notation serialises to a self-delimiting bit string:
#   S(a) = concat over terms of ("1" + S(exponent) + gamma(coefficient)) + "0"
# where gamma is the Elias gamma code.  The natural code is the binary value
# of "1" + S(a), shifted so that code(0) == 0.


def _gamma(n: int) -> str:
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


def _serialise(a: Ordinal, out: list) -> None:
    for e, c in a.terms:
        out.append("1")
        _serialise(e, out)
        out.append(_gamma(c))
    out.append("0")


_code_cache: dict = {}


def code(a: Ordinal) -> int:
    """Injective map from notations to naturals with ``code(0) == 0``."""
    hit = _code_cache.get(a)
    if hit is not None:
        return hit
    out = ["1"]
    _serialise(a, out)
    n = int("".join(out), 2) - 2
    if len(_code_cache) < 1 << 16:
        _code_cache[a] = n
    return n


def decode(n: int) -> Ordinal:
    """Inverse of :func:`code`; raises :class:`NotationError` outside the image."""
    if n < 0:
        raise NotationError("codes are non-negative")
    bits = bin(n + 2)[3:]
    pos = 0

    def read_gamma() -> int:
        nonlocal pos
        zeros = 0
        while pos < len(bits) and bits[pos] == "0":
            zeros += 1
            pos += 1
        if pos + zeros + 1 > len(bits):
            raise NotationError(f"{n} is not a notation code")
        value = int(bits[pos:pos + zeros + 1], 2)
        pos += zeros + 1
        return value

    def read() -> Ordinal:
        nonlocal pos
        terms = []
        while True:
            if pos >= len(bits):
                raise NotationError(f"{n} is not a notation code")
            flag = bits[pos]
            pos += 1
            if flag == "0":
                break
            e = read()
            c = read_gamma()
            if terms and not e < terms[-1][0]:
                raise NotationError(f"{n} decodes to a non-canonical notation")
            terms.append((e, c))
        return Ordinal._trusted(terms)

    result = read()
    if pos != len(bits):
        raise NotationError(f"{n} is not a notation code")
    return result
