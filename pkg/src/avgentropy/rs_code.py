"""(n, k) Reed-Solomon evaluation codes over GF(2^m)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf2m import FieldSpec

DEFAULT_GUARD = 10**6


class GuardExceeded(ValueError):
    """A brute-force enumeration would exceed the support-size guard."""


def check_guard(size: int, guard: int, what: str = "support") -> None:
    if size > guard:
        raise GuardExceeded(f"{what} size {size} exceeds guard {guard}")


@dataclass(frozen=True)
class RSCode:
    n: int
    k: int
    spec: FieldSpec
    eval_points: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.n <= self.spec.q:
            raise ValueError(
                f"need 1 <= k <= n <= q, got n={self.n}, k={self.k}, q={self.spec.q}"
            )
        if len(self.eval_points) != self.n or len(set(self.eval_points)) != self.n:
            raise ValueError("evaluation points must be n distinct field elements")

    @property
    def size(self) -> int:
        return self.spec.q**self.k


def rs_make(n: int, k: int, spec: FieldSpec) -> RSCode:
    """Build the code evaluating messages at field labels ``0, 1, ..., n-1``."""
    if k > n:
        raise ValueError(f"dimension k={k} exceeds length n={n}")
    if n > spec.q:
        raise ValueError(f"length n={n} exceeds field order q={spec.q}")
    return RSCode(n, k, spec, tuple(range(n)))


def rs_encode(message, code: RSCode) -> tuple[int, ...]:
    """Evaluate ``sum_j message[j] * x**j`` at every evaluation point."""
    message = tuple(message)
    if len(message) != code.k:
        raise ValueError(f"message length {len(message)} != k={code.k}")
    spec = code.spec
    out = []
    for x in code.eval_points:
        acc = 0
        for c in reversed(message):
            acc = spec.mul(acc, x) ^ c
        out.append(acc)
    return tuple(out)


def _generator_matrix(code: RSCode) -> np.ndarray:
    # Row j is x^j evaluated at each point: codeword = sum_j msg_j * row_j.
    spec = code.spec
    return np.array(
        [[spec.pow(x, j) for x in code.eval_points] for j in range(code.k)],
        dtype=np.int64,
    )


def _mul_table(spec: FieldSpec) -> np.ndarray:
    q = spec.q
    return np.array([[spec.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)


def rs_codeword_array(code: RSCode, guard: int = DEFAULT_GUARD) -> np.ndarray:
    """All q^k codewords as a ``(q^k, n)`` integer array in message order.

    Message ``(c_0, ..., c_{k-1})`` sits at row ``sum_j c_j * q**(k-1-j)``,
    i.e. lexicographic order of the message labels.
    """
    check_guard(code.size, guard, "code")
    q, k = code.spec.q, code.k
    mul = _mul_table(code.spec)
    gen = _generator_matrix(code)
    rows = np.arange(code.size, dtype=np.int64)
    words = np.zeros((code.size, code.n), dtype=np.int64)
    for j in range(k):
        digit = (rows // q ** (k - 1 - j)) % q
        words ^= mul[digit[:, None], gen[j][None, :]]
    return words


def rs_enumerate(code: RSCode, guard: int = DEFAULT_GUARD) -> list[tuple[int, ...]]:
    """Every codeword, one per message, messages in lexicographic order."""
    return [tuple(int(v) for v in row) for row in rs_codeword_array(code, guard)]


def rs_mds_check(code: RSCode, guard: int = DEFAULT_GUARD) -> bool:
    """True iff every k positions determine the codeword (brute force)."""
    words = rs_codeword_array(code, guard)
    q = code.spec.q
    for positions in itertools.combinations(range(code.n), code.k):
        keys = np.zeros(len(words), dtype=np.int64)
        for p in positions:
            keys = keys * q + words[:, p]
        # q^k codewords landing on q^k distinct keys is a bijection.
        if len(np.unique(keys)) != q**code.k:
            return False
    return True


def projection_counts(code: RSCode, guard: int = DEFAULT_GUARD) -> np.ndarray:
    """``counts[i, v]`` = number of codewords with value ``v`` at position ``i``."""
    words = rs_codeword_array(code, guard)
    q = code.spec.q
    return np.stack([np.bincount(words[:, i], minlength=q) for i in range(code.n)])

