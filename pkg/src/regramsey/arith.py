"""Exact natural-number arithmetic.

Everything here works on Python ints; no floating point is used anywhere in
the package.  ``CappedNat`` adds a saturation ceiling so that fast-growing
computations fail fast instead of allocating unbounded memory.
"""
from __future__ import annotations

import os
import re
from math import comb, isqrt
from typing import Union

DEFAULT_CAP = 2**256
CAP_ENV_VAR = "REGRAMSEY_CAP"

__all__ = [
    "DEFAULT_CAP",
    "CappedNat",
    "IndeterminateComparison",
    "binomial",
    "default_cap",
    "ilog",
    "iroot",
    "log_star",
    "pair_decode",
    "pair_encode",
    "parse_cap",
]


class IndeterminateComparison(ArithmeticError):
    """Raised when two saturated values are compared."""


def parse_cap(text: str) -> int:
    """Parse a cap given as ``123``, ``2^256``, ``2**256`` or ``10^4``."""
    s = text.strip().replace("_", "")
    m = re.fullmatch(r"(\d+)\s*(?:\^|\*\*)\s*(\d+)", s)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    if re.fullmatch(r"\d+", s):
        return int(s)
    raise ValueError(f"cannot parse cap {text!r}; expected e.g. 2^256 or 1000000")


def default_cap() -> int:
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        return parse_cap(env)
    return DEFAULT_CAP


IntLike = Union[int, "CappedNat"]


class CappedNat:
    """A natural number that saturates to ``TOP`` once it exceeds ``cap``.

    ``TOP`` is absorbing for the monotone operations (``+``, ``*``, ``**``).
    ``TOP`` compares greater than every finite value; comparing ``TOP`` with
    ``TOP`` raises :class:`IndeterminateComparison` (including ``==``).
    """

    __slots__ = ("_value", "cap")

    def __init__(self, value: int | None, cap: int = DEFAULT_CAP):
        if cap < 0:
            raise ValueError("cap must be a natural number")
        if value is not None:
            if value < 0:
                raise ValueError("CappedNat holds naturals only")
            if value > cap:
                value = None
        self._value = value
        self.cap = cap

    @classmethod
    def top(cls, cap: int = DEFAULT_CAP) -> "CappedNat":
        return cls(None, cap)

    @property
    def is_top(self) -> bool:
        return self._value is None

    @property
    def value(self) -> int:
        if self._value is None:
            raise OverflowError(f"value exceeds cap {self.cap}")
        return self._value

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def _coerce(self, other: IntLike) -> int | None:
        if isinstance(other, CappedNat):
            return other._value
        if isinstance(other, int) and other >= 0:
            return other
        return NotImplemented  # type: ignore[return-value]

    def _combine(self, other: IntLike, op) -> "CappedNat":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        cap = min(self.cap, other.cap) if isinstance(other, CappedNat) else self.cap
        if self._value is None or o is None:
            return CappedNat(None, cap)
        return CappedNat(op(self._value, o, cap), cap)

    def __add__(self, other: IntLike) -> "CappedNat":
        return self._combine(other, lambda a, b, cap: a + b)

    __radd__ = __add__

    def __mul__(self, other: IntLike) -> "CappedNat":
        return self._combine(other, lambda a, b, cap: a * b)

    __rmul__ = __mul__

    def __pow__(self, other: IntLike) -> "CappedNat":
        def _pow(a: int, b: int, cap: int) -> int | None:
            if a <= 1 or b <= 1:
                return a**b
            # a^b > cap is decided from bit lengths before materialising a^b
            if (a.bit_length() - 1) * b > cap.bit_length():
                return None
            return a**b

        return self._combine(other, _pow)

    def _cmp(self, other: IntLike) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare CappedNat with {type(other).__name__}")
        a = self._value
        if a is None and o is None:
            raise IndeterminateComparison("TOP compared with TOP")
        if a is None:
            # TOP only says "above the cap"; a larger finite value is undecided
            if o > self.cap:
                raise IndeterminateComparison(f"TOP compared with {o} > cap")
            return 1
        if o is None:
            if a > other.cap:
                raise IndeterminateComparison(f"{a} compared with TOP below it")
            return -1
        return (a > o) - (a < o)

    def compare(self, other: IntLike) -> int | None:
        """Three-way compare; ``None`` when both sides are TOP."""
        try:
            return self._cmp(other)
        except IndeterminateComparison:
            return None

    def __lt__(self, other: IntLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: IntLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: IntLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: IntLike) -> bool:
        return self._cmp(other) >= 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (int, CappedNat)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self) -> int:
        return hash(self._value)

    def __repr__(self) -> str:
        return f"CappedNat({'TOP' if self._value is None else self._value})"

    def __str__(self) -> str:
        return "TOP" if self._value is None else str(self._value)


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def pair_encode(m: int, n: int, cap: int | None = None) -> int | CappedNat:
    """Diagonal pairing ``C(m+n+1, 2) + n``.

    Returns a plain int, or a :class:`CappedNat` when ``cap`` is given.
    """
    if m < 0 or n < 0:
        raise ValueError("pair_encode is defined on naturals")
    s = m + n
    p = s * (s + 1) // 2 + n
    if cap is None:
        return p
    return CappedNat(p, cap)


def pair_decode(p: int) -> tuple[int, int]:
    if p < 0:
        raise ValueError("pair_decode is defined on naturals")
    s = (isqrt(8 * p + 1) - 1) // 2
    n = p - s * (s + 1) // 2
    return s - n, n


def iroot(n: int, t: int) -> int:
    """Largest ``r`` with ``r**t <= n``."""
    if t < 1:
        raise ValueError("iroot needs t >= 1")
    if n < 0:
        raise ValueError("iroot is defined on naturals")
    if t == 1 or n < 2:
        return n
    if t == 2:
        return isqrt(n)
    bits = n.bit_length()
    if t >= bits:
        return 1
    # Newton iteration from an overestimate; decreasing until it settles.
    r = 1 << (-(-bits // t))
    while True:
        nxt = ((t - 1) * r + n // r ** (t - 1)) // t
        if nxt >= r:
            break
        r = nxt
    while r**t > n:
        r -= 1
    while (r + 1) ** t <= n:
        r += 1
    return r


def ilog(n: int, base: int) -> int:
    """Largest ``e`` with ``base**e <= n``."""
    if base < 2:
        raise ValueError("ilog needs base >= 2")
    if n < 1:
        raise ValueError("ilog needs n >= 1")
    if base == 2:
        return n.bit_length() - 1
    # base < 2**bl, so this start is a lower bound for the answer
    e = (n.bit_length() - 1) // base.bit_length()
    while base ** (e + 1) <= n:
        e += 1
    while base**e > n:
        e -= 1
    return e


def log_star(n: int) -> int:
    """Iterated base-2 logarithm: how many ``ilog2`` applications bring n to <= 1."""
    count = 0
    while n > 1:
        n = n.bit_length() - 1
        count += 1
    return count
