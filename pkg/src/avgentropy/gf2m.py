"""
Arithmetic in GF(2^m) for 1 <= m <= 8.

Elements are plain integers in ``[0, q)``; bit ``i`` is the coefficient of
``x^i`` in the polynomial basis. Multiplication goes through log/antilog
tables built once per field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

# Bit m is the x^m term. m=1 is GF(2) itself, reduced by x + 1.
REDUCTION_POLYS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


def clmul_mod(a: int, b: int, poly: int, m: int) -> int:
    """Shift-and-add product of ``a`` and ``b`` reduced modulo ``poly``."""
    result = 0
    top = 1 << m
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return result


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(2^m) context: exponent, reduction polynomial and lookup tables."""

    m: int
    reduction_poly: int
    generator: int = field(repr=False)
    exp_table: tuple[int, ...] = field(repr=False)
    log_table: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.m

    def elements(self) -> range:
        return range(self.q)

    def _check(self, *values: int) -> None:
        for v in values:
            if not 0 <= v < self.q:
                raise ValueError(f"{v} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == 0 or b == 0:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.q)
        return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.q)
            return 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.m, self.reduction_poly) == (other.m, other.reduction_poly)

    def __hash__(self) -> int:
        return hash((self.m, self.reduction_poly))


def _find_generator(m: int, poly: int) -> int:
    # x is not primitive for every table polynomial (0x11b needs 3).
    q = 1 << m
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = clmul_mod(x, g, poly, m)
            order += 1
        if order == q - 1:
            return g
    raise ArithmeticError(f"no generator for poly {poly:#b}")  # pragma: no cover


@lru_cache(maxsize=None)
def field_make(m: int) -> FieldSpec:
    """Return the GF(2^m) context for ``1 <= m <= 8``.

    Raises
    ------
    ValueError
        If ``m`` is outside ``1..8``.
    """
    if not isinstance(m, int) or m not in REDUCTION_POLYS:
        raise ValueError(f"field exponent must be an integer in 1..8, got {m!r}")
    poly = REDUCTION_POLYS[m]
    q = 1 << m
    g = _find_generator(m, poly)
    # Doubled exp table so log(a) + log(b) needs no modulo.
    exp = [0] * (2 * (q - 1))
    log = [0] * q
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = clmul_mod(x, g, poly, m)
    for i in range(q - 1, 2 * (q - 1)):
        exp[i] = exp[i - (q - 1)]
    return FieldSpec(m, poly, g, tuple(exp), tuple(log))


def f_add(a: int, b: int) -> int:
    """Characteristic-2 addition (XOR)."""
    if a < 0 or b < 0:
        raise ValueError("field elements are non-negative")
    return a ^ b


def f_mul(a: int, b: int, spec: FieldSpec) -> int:
    return spec.mul(a, b)


def f_inv(a: int, spec: FieldSpec) -> int:
    """Multiplicative inverse; raises ``ZeroDivisionError`` for ``a == 0``."""
    return spec.inv(a)
